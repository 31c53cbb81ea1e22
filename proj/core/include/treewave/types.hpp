#pragma once

#include <string_view>

namespace treewave {

/// Pinning interval (a_minus, a_plus] in the detuning parameter.
struct RegionBounds {
    double a_minus;
    double a_plus;
};

/// Down: c > 0, the front moves toward the children. Up: c < 0, toward parents.
enum class Direction { Pinned, Down, Up };

std::string_view to_string(Direction direction) noexcept;

}  // namespace treewave
