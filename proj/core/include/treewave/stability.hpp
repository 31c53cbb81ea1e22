#pragma once

#include "treewave/pinning.hpp"
#include "treewave/simulator.hpp"

#include <optional>
#include <vector>

namespace treewave {

/// Modified Bessel function of the first kind, integer order, x >= 0.
/// Power series for x <= 15, Miller backward recurrence normalised by
/// e^x = I_0(x) + 2 sum_{m>=1} I_m(x) above. Throws Error(OutOfRange) for
/// x > 700, where the result overflows.
double bessel_i(int n, double x);

/// e^{-x} I_n(x); representable for x up to 1e5.
double bessel_i_scaled(int n, double x);

/// Coefficients of the linearisation p' = dk p_{i+1} - (d(k+1)+1) p_i + d p_{i-1}.
class KernelParams {
public:
    KernelParams(double d, double k);
    explicit KernelParams(const TreeParams& p) : KernelParams(p.d(), p.k()) {}

    double d() const noexcept { return d_; }
    double k() const noexcept { return k_; }

private:
    double d_;
    double k_;
};

/// Fundamental solution of the linearisation started from a unit mass at i = 0:
/// e^{-(d(k+1)+1)t} I_i(2d sqrt(k) t) / k^{i/2}.
double linear_kernel(int i, double t, const KernelParams& kp);

/// 2 d sqrt(k) - d(k+1) - 1, the pointwise exponential rate of the kernel.
double kernel_decay_rate(const KernelParams& kp) noexcept;

struct DecayReport {
    std::vector<double> times;
    std::vector<double> sup_norms;  ///< max_i |u_i(t) - pinned_i|
    double amplitude = 0.0;
    double final_sup_norm = 0.0;
    double theoretical_rate = 0.0;
    std::optional<double> fitted_exponent;  ///< slope of log sup-norm over the second half
    bool decayed = false;                   ///< final_sup_norm <= 0.01 * amplitude

    // Linear-regime comparison at site 0, time linear_check_time.
    double linear_check_time = 1.0;
    double linear_observed = 0.0;
    double linear_predicted = 0.0;
    double linear_relative_error = 0.0;
};

/// Default step, N = 100, t_end = 10 / |kernel_decay_rate| and twenty
/// snapshots per unit time.
SimConfig stability_config(const TreeParams& p, int half_width = 100);

/// Integrates the nonlinear equation from the pinned wave minus amplitude at
/// site 0 and records the sup-norm deviation. Requires p strictly inside the
/// pinning region (Error(NotPinned)) and amplitude >= 0. Throws
/// Error(BranchPatternViolated) if any site changes side of u = a.
DecayReport perturbation_decay_test(const TreeParams& p, double amplitude, const SimConfig& cfg);

}  // namespace treewave
