#include "treewave/stability.hpp"

#include "treewave/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace treewave {

namespace {

constexpr double kSeriesLimit = 15.0;
constexpr double kUnscaledLimit = 700.0;
constexpr double kScaledLimit = 1e5;

void require_argument(double x, double limit) {
    if (!(x >= 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "Bessel argument must be non-negative");
    }
    if (x > limit) {
        throw Error(ErrorKind::OutOfRange,
                    "Bessel argument " + std::to_string(x) + " beyond supported range " +
                        std::to_string(limit));
    }
}

// sum_m (x/2)^{2m+n} / (m! (m+n)!); all terms positive.
double series(int n, double x) {
    const double half = 0.5 * x;
    double term = 1.0;
    for (int j = 1; j <= n; ++j) {
        term *= half / j;
    }
    if (term == 0.0) {
        return 0.0;
    }
    const double q = half * half;
    double sum = term;
    for (int m = 1; m < 500; ++m) {
        term *= q / (static_cast<double>(m) * (m + n));
        sum += term;
        if (term < 1e-17 * sum) {
            break;
        }
    }
    return sum;
}

// e^{-x} I_n(x) by backward recurrence I_{m-1} = (2m/x) I_m + I_{m+1}.
double miller_scaled(int n, double x) {
    const double reach = std::max(static_cast<double>(n), x);
    const int start = 2 * ((static_cast<int>(reach) + 30 + static_cast<int>(std::sqrt(40.0 * reach))) / 2);
    constexpr double kBig = 1e250;
    constexpr double kRescale = 1e-250;

    double next = 0.0;  // f_{m+1}
    double cur = 1e-300;  // f_m, m = start
    double result = n == start ? cur : 0.0;
    double sum = 2.0 * cur;
    for (int m = start; m > 0; --m) {
        const double prev = 2.0 * m / x * cur + next;
        next = cur;
        cur = prev;
        if (m - 1 == n) {
            result = cur;
        }
        sum += m - 1 == 0 ? cur : 2.0 * cur;
        if (cur > kBig) {
            cur *= kRescale;
            next *= kRescale;
            sum *= kRescale;
            result *= kRescale;
        }
    }
    return result / sum;
}

}  // namespace

double bessel_i_scaled(int n, double x) {
    require_argument(x, kScaledLimit);
    n = std::abs(n);
    if (x == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    if (x <= kSeriesLimit) {
        return series(n, x) * std::exp(-x);
    }
    return miller_scaled(n, x);
}

double bessel_i(int n, double x) {
    require_argument(x, kUnscaledLimit);
    n = std::abs(n);
    if (x == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    if (x <= kSeriesLimit) {
        return series(n, x);
    }
    return miller_scaled(n, x) * std::exp(x);
}

KernelParams::KernelParams(double d, double k) : d_(d), k_(k) {
    if (!(d > 0.0) || !(k > 1.0) || !std::isfinite(d) || !std::isfinite(k)) {
        throw Error(ErrorKind::InvalidParameter, "kernel needs d > 0 and k > 1");
    }
}

double kernel_decay_rate(const KernelParams& kp) noexcept {
    return 2.0 * kp.d() * std::sqrt(kp.k()) - kp.d() * (kp.k() + 1.0) - 1.0;
}

double linear_kernel(int i, double t, const KernelParams& kp) {
    if (!(t >= 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "kernel time must be non-negative");
    }
    // e^{-alpha t} I_i(beta t) = [e^{-beta t} I_i(beta t)] e^{(beta - alpha) t}
    const double beta = 2.0 * kp.d() * std::sqrt(kp.k());
    return bessel_i_scaled(i, beta * t) * std::exp(kernel_decay_rate(kp) * t) *
           std::pow(kp.k(), -0.5 * i);
}

SimConfig stability_config(const TreeParams& p, int half_width) {
    SimConfig cfg;
    cfg.half_width = half_width;
    cfg.h = default_step(p);
    cfg.t_end = 10.0 / std::abs(kernel_decay_rate(KernelParams(p)));
    cfg.record_every = std::max(1, static_cast<int>(std::lround(0.05 / cfg.h)));
    return cfg;
}

DecayReport perturbation_decay_test(const TreeParams& p, double amplitude, const SimConfig& cfg) {
    if (!is_pinned(p, PinningMode::Strict)) {
        throw Error(ErrorKind::NotPinned, "parameters lie outside the pinning region a_- < a <= a_+");
    }
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw Error(ErrorKind::InvalidParameter, "perturbation amplitude must be non-negative");
    }
    cfg.validate();

    const int n = cfg.half_width;
    const Profile base = pinned_profile(p.d(), p.k(), -n, n);
    Profile start = base;
    start[0] -= amplitude;

    const Reaction reaction = Reaction::mckean(p.a());
    const auto check_branches = [&](const Profile& state) {
        for (int i = -n; i <= n; ++i) {
            if ((state[i] >= p.a()) != (base[i] >= p.a())) {
                throw Error(ErrorKind::BranchPatternViolated,
                            "site " + std::to_string(i) + " crossed u = a; perturbation too large");
            }
        }
    };
    check_branches(start);

    const Trajectory traj = integrate(start, p, reaction, cfg);

    DecayReport report;
    report.amplitude = amplitude;
    report.theoretical_rate = kernel_decay_rate(KernelParams(p));
    report.times = traj.times;
    report.sup_norms.reserve(traj.size());
    for (const Profile& state : traj.snapshots) {
        check_branches(state);
        report.sup_norms.push_back(sup_distance(state, base));
    }
    report.final_sup_norm = report.sup_norms.back();
    report.decayed = report.final_sup_norm <= 0.01 * amplitude;

    // Log-linear least squares over the second half of the run.
    const double t_half = 0.5 * traj.times.back();
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    int count = 0;
    for (std::size_t j = 0; j < traj.size(); ++j) {
        if (traj.times[j] < t_half || !(report.sup_norms[j] > 0.0)) {
            continue;
        }
        const double t = traj.times[j];
        const double y = std::log(report.sup_norms[j]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++count;
    }
    if (amplitude > 0.0 && count >= 2) {
        const double denom = count * stt - st * st;
        if (denom > 0.0) {
            report.fitted_exponent = (count * sty - st * sy) / denom;
        }
    }

    SimConfig short_cfg = cfg;
    short_cfg.t_end = report.linear_check_time;
    short_cfg.record_every = std::numeric_limits<int>::max();
    const Trajectory early = integrate(start, p, reaction, short_cfg);
    report.linear_observed = base[0] - early.final_state()[0];
    report.linear_predicted = amplitude * linear_kernel(0, report.linear_check_time, KernelParams(p));
    report.linear_relative_error =
        report.linear_predicted > 0.0
            ? std::abs(report.linear_observed - report.linear_predicted) / report.linear_predicted
            : std::abs(report.linear_observed);
    return report;
}

}  // namespace treewave
