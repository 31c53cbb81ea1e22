#pragma once

// Brute-force counterpart of the closed forms in pinning.hpp. Nothing here
// calls into the pinning module; bounds are read off a direct linear solve.

#include "treewave/profile.hpp"
#include "treewave/types.hpp"

#include <span>
#include <vector>

namespace treewave::oracle {

/// Thomas algorithm for A x = rhs with sub-diagonal `lower` (n-1 entries),
/// `diag` (n) and super-diagonal `upper` (n-1). Throws Error(SingularSystem)
/// on a zero pivot and Error(InvalidParameter) on mismatched sizes.
std::vector<double> tridiagonal_solve(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

/// Solves 0 = dk u_{i+1} - (d(k+1)+1) u_i + d u_{i-1} + [i >= interface_index]
/// for i in [-N, N] with u_{-N-1} = 0 and u_{N+1} = 1.
Profile solve_stationary_window(double d, double k, int half_width, int interface_index = 0);

/// (u_{-1}, u_0) of the window solution: the finite-window pinning bounds.
RegionBounds empirical_bounds(double d, double k, int half_width = 200);

}  // namespace treewave::oracle
