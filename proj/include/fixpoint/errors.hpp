#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fixpoint {

/// Mixing points or boxes of different dimensions.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A point lies outside the operator's domain, or a schedule emitted a
/// weight outside [0,1).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A declared parameter violates its admissible range.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An iterate or operator value left the finite floating-point range.
struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iteration hit max_iter with the residual still above tolerance.
struct NoConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Config text failed to parse or validate; carries every issue found,
/// not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out;
        for (const auto& s : issues) {
            if (!out.empty()) out += "\n";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

}  // namespace fixpoint
