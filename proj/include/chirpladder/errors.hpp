#pragma once

#include <stdexcept>
#include <string>

namespace chirpladder {

// Requested a Gauss-sum quantity from a manifold with zero spacing, or a
// multi-level manifold with zero spacing.
class DegenerateManifold : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Norm drift, overflow or another failure of a numerical routine.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration text or value. line is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message, int line = 0)
        : std::runtime_error(format(field, message, line)), field_(field), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& field, const std::string& message, int line) {
        std::string out = "config";
        if (line > 0)
            out += ":" + std::to_string(line);
        if (!field.empty())
            out += ": " + field;
        return out + ": " + message;
    }

    std::string field_;
    int line_;
};

} // namespace chirpladder
