#pragma once

#include <stdexcept>
#include <string>

namespace treewave {

enum class ErrorKind {
    InvalidParameter,
    InvalidWindow,
    OutOfRange,
    WindowTooSmall,
    StepSizeTooLarge,
    NonFiniteState,
    NoCrossing,
    InsufficientData,
    SingularSystem,
    BranchPatternViolated,
    NotPinned,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so that callers (the
/// CLI in particular) can map it onto an exit status without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for errors caused by bad inputs rather than by a numerical failure.
    bool is_domain_error() const noexcept;

private:
    ErrorKind kind_;
};

}  // namespace treewave
