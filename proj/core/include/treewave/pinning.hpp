#pragma once

#include "treewave/profile.hpp"
#include "treewave/types.hpp"

namespace treewave {

/// Diffusion d, branching (or advection) factor k and detuning a of the tree
/// equation  u_i' = d(k u_{i+1} - (k+1) u_i + u_{i-1}) + g(u_i; a).
class TreeParams {
public:
    /// Requires d > 0, k > 1 and 0 < a < 1; throws Error(InvalidParameter).
    TreeParams(double d, double k, double a);

    /// The k = 1 integer-lattice equation. Only the simulator accepts it;
    /// the closed-form pinning machinery needs k > 1.
    static TreeParams lattice(double d, double a);

    double d() const noexcept { return d_; }
    double k() const noexcept { return k_; }
    double a() const noexcept { return a_; }

private:
    struct Unchecked {};
    TreeParams(Unchecked, double d, double k, double a) : d_(d), k_(k), a_(a) {}

    double d_;
    double k_;
    double a_;
};

/// Characteristic roots of d k L^2 - (d(k+1)+1) L + d = 0 together with the
/// amplitudes of the pinned profile u_i = C L1^i (left), 1 - D L2^i (right).
struct WaveCoefficients {
    double lambda1;
    double lambda2;
    double C;
    double D;
};

/// Strict uses a_- < a <= a_+ (single-valued caricature); Nonstrict uses
/// a_- <= a <= a_+ (multivalued caricature at u = a).
enum class PinningMode { Strict, Nonstrict };

/// (1 + d(k+1))^2 - 4 d^2 k, evaluated in the cancellation-free form
/// 1 + 2d(k+1) + d^2 (k-1)^2.
double discriminant(double d, double k);

WaveCoefficients eigenvalues(double d, double k);

/// a_+-(d,k) = (1 + ((k-1)d +- 1) / sqrt(disc)) / 2.
RegionBounds pinning_bounds(double d, double k);

double a_minus(double d, double k);
double a_plus(double d, double k);

bool is_pinned(const TreeParams& p, PinningMode mode = PinningMode::Strict);

Direction classify(const TreeParams& p, PinningMode mode = PinningMode::Strict);

/// Value of the explicit pinned wave at lattice index i, any i.
double pinned_value(const WaveCoefficients& w, int i) noexcept;

/// Pinned wave on [i_min, i_max]; needs i_min <= -1 and i_max >= 0.
Profile pinned_profile(double d, double k, int i_min, int i_max);

struct UpperBoundMinimum {
    double a_plus_star;
    double d_plus_star;
};

/// Global minimum of a_+(., k): value (k + sqrt(k(k-1)))/(2k) at d = 1/(k-1).
UpperBoundMinimum min_upper_bound(double k);

/// Diffusion values at which the direction changes for fixed a > a_+^*(k).
struct ReversalThresholds {
    double d_lo_plus;   ///< a_+(d) = a on (0, d_+^*)
    double d_hi_plus;   ///< a_+(d) = a on (d_+^*, inf)
    double d_lo_minus;  ///< a_-(d) = a
};

/// Throws Error(OutOfRange) when a <= a_+^*(k) or a >= 1.
ReversalThresholds reversal_thresholds(double a, double k);

}  // namespace treewave
