#include "treewave/oracle.hpp"

#include "treewave/error.hpp"

#include <cmath>
#include <string>

namespace treewave::oracle {

std::vector<double> tridiagonal_solve(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || rhs.size() != n || lower.size() + 1 != n || upper.size() + 1 != n) {
        throw Error(ErrorKind::InvalidParameter, "tridiagonal system has inconsistent sizes");
    }

    std::vector<double> c_prime(n);
    std::vector<double> x(n);

    // Forward sweep
    double pivot = diag[0];
    if (pivot == 0.0) {
        throw Error(ErrorKind::SingularSystem, "zero pivot in row 0");
    }
    c_prime[0] = n > 1 ? upper[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i - 1] * c_prime[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw Error(ErrorKind::SingularSystem, "zero pivot in row " + std::to_string(i));
        }
        c_prime[i] = i + 1 < n ? upper[i] / pivot : 0.0;
        x[i] = (rhs[i] - lower[i - 1] * x[i - 1]) / pivot;
    }

    // Back substitution
    for (std::size_t i = n - 1; i > 0; --i) {
        x[i - 1] -= c_prime[i - 1] * x[i];
    }
    return x;
}

Profile solve_stationary_window(double d, double k, int half_width, int interface_index) {
    if (!(d > 0.0) || !(k > 1.0) || !std::isfinite(d) || !std::isfinite(k)) {
        throw Error(ErrorKind::InvalidParameter, "stationary window needs d > 0 and k > 1");
    }
    if (half_width < 10) {
        throw Error(ErrorKind::InvalidParameter, "stationary window needs N >= 10");
    }
    if (interface_index < -half_width || interface_index > half_width) {
        throw Error(ErrorKind::InvalidWindow, "interface index outside the window");
    }

    const auto n = static_cast<std::size_t>(2 * half_width + 1);
    const std::vector<double> lower(n - 1, d);
    const std::vector<double> diag(n, -(d * (k + 1.0) + 1.0));
    const std::vector<double> upper(n - 1, d * k);
    std::vector<double> rhs(n, 0.0);
    for (int i = -half_width; i <= half_width; ++i) {
        auto& row = rhs[static_cast<std::size_t>(i + half_width)];
        if (i >= interface_index) {
            row -= 1.0;
        }
    }
    // u_{N+1} = 1 moves to the right-hand side; u_{-N-1} = 0 contributes nothing.
    rhs.back() -= d * k * 1.0;

    return {-half_width, tridiagonal_solve(lower, diag, upper, rhs)};
}

RegionBounds empirical_bounds(double d, double k, int half_width) {
    const Profile u = solve_stationary_window(d, k, half_width, 0);
    return {u[-1], u[0]};
}

}  // namespace treewave::oracle
