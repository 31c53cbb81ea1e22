#include "treewave/error.hpp"

namespace treewave {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidWindow: return "invalid-window";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::WindowTooSmall: return "window-too-small";
    case ErrorKind::StepSizeTooLarge: return "step-size-too-large";
    case ErrorKind::NonFiniteState: return "non-finite-state";
    case ErrorKind::NoCrossing: return "no-crossing";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::SingularSystem: return "singular-system";
    case ErrorKind::BranchPatternViolated: return "branch-pattern-violated";
    case ErrorKind::NotPinned: return "not-pinned";
    }
    return "unknown";
}

bool Error::is_domain_error() const noexcept {
    switch (kind_) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::InvalidWindow:
    case ErrorKind::OutOfRange:
    case ErrorKind::WindowTooSmall:
    case ErrorKind::StepSizeTooLarge:
    case ErrorKind::NotPinned:
        return true;
    default:
        return false;
    }
}

}  // namespace treewave
