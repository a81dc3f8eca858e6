#pragma once

#include <stdexcept>
#include <string>

namespace squidqnd {

enum class ErrorKind {
    InvalidArgument,
    Config,
    BoundaryLeak,
    NotConverged,
    FailedToConverge,
    WindowCollapse,
    DivergentCritical,
    IllConditionedFit,
    TruncationFailure,
    SingularLiouvillian,
    Instability,
};

const char* to_string(ErrorKind kind);

/// Error carrying a machine-readable kind and the module that raised it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

    /// Config problems are user errors; everything else is a numerical failure.
    bool is_config_error() const noexcept {
        return kind_ == ErrorKind::Config || kind_ == ErrorKind::InvalidArgument;
    }

private:
    ErrorKind kind_;
    std::string module_;
};

}  // namespace squidqnd
