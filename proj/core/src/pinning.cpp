#include "treewave/pinning.hpp"

#include "treewave/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace treewave {

namespace {

void require_dk(double d, double k) {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw Error(ErrorKind::InvalidParameter, "diffusion d must be positive and finite");
    }
    if (!(k > 1.0) || !std::isfinite(k)) {
        throw Error(ErrorKind::InvalidParameter, "branching factor k must exceed 1");
    }
}

std::string format_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Bisection on a bracket [lo, hi] where f(lo) and f(hi) have opposite signs.
// Runs until the midpoint coincides with an endpoint, i.e. to full precision.
template <class F>
double bisect(F f, double lo, double hi) {
    double f_lo = f(lo);
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TreeParams::TreeParams(double d, double k, double a) : d_(d), k_(k), a_(a) {
    require_dk(d, k);
    if (!(a > 0.0 && a < 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "detuning a must lie in (0,1)");
    }
}

TreeParams TreeParams::lattice(double d, double a) {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw Error(ErrorKind::InvalidParameter, "diffusion d must be positive and finite");
    }
    if (!(a > 0.0 && a < 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "detuning a must lie in (0,1)");
    }
    return TreeParams(Unchecked{}, d, 1.0, a);
}

std::string_view to_string(Direction direction) noexcept {
    switch (direction) {
    case Direction::Pinned: return "pinned";
    case Direction::Down: return "down";
    case Direction::Up: return "up";
    }
    return "unknown";
}

double discriminant(double d, double k) {
    require_dk(d, k);
    return 1.0 + 2.0 * d * (k + 1.0) + d * d * (k - 1.0) * (k - 1.0);
}

WaveCoefficients eigenvalues(double d, double k) {
    const double root = std::sqrt(discriminant(d, k));
    const double lambda1 = (1.0 + d * (k + 1.0) + root) / (2.0 * d * k);
    const double lambda2 = 1.0 / (k * lambda1);
    // lambda1 - lambda2 = sqrt(disc) / (d k), without the subtraction.
    const double gap = root / (d * k);
    return {lambda1, lambda2, (1.0 - lambda2) / gap * lambda1, (lambda1 - 1.0) / gap * lambda2};
}

RegionBounds pinning_bounds(double d, double k) {
    const double root = std::sqrt(discriminant(d, k));
    const double shift = (k - 1.0) * d;
    return {0.5 * (1.0 + (shift - 1.0) / root), 0.5 * (1.0 + (shift + 1.0) / root)};
}

double a_minus(double d, double k) { return pinning_bounds(d, k).a_minus; }

double a_plus(double d, double k) { return pinning_bounds(d, k).a_plus; }

bool is_pinned(const TreeParams& p, PinningMode mode) {
    const auto [lo, hi] = pinning_bounds(p.d(), p.k());
    const double a = p.a();
    if (mode == PinningMode::Nonstrict) {
        return lo <= a && a <= hi;
    }
    return lo < a && a <= hi;
}

Direction classify(const TreeParams& p, PinningMode mode) {
    if (is_pinned(p, mode)) {
        return Direction::Pinned;
    }
    return p.a() > a_plus(p.d(), p.k()) ? Direction::Down : Direction::Up;
}

double pinned_value(const WaveCoefficients& w, int i) noexcept {
    // Left branch C L1^i for i <= -1, right branch 1 - D L2^i for i >= 0.
    if (i < 0) {
        return w.C * std::pow(w.lambda1, i);
    }
    return 1.0 - w.D * std::pow(w.lambda2, i);
}

Profile pinned_profile(double d, double k, int i_min, int i_max) {
    const WaveCoefficients w = eigenvalues(d, k);
    if (i_min > -1 || i_max < 0) {
        throw Error(ErrorKind::InvalidWindow,
                    "pinned profile window must contain indices -1 and 0, got [" +
                        std::to_string(i_min) + ", " + std::to_string(i_max) + "]");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(i_max - i_min + 1));
    for (int i = i_min; i <= i_max; ++i) {
        values.push_back(pinned_value(w, i));
    }
    return {i_min, std::move(values)};
}

UpperBoundMinimum min_upper_bound(double k) {
    if (!(k > 1.0) || !std::isfinite(k)) {
        throw Error(ErrorKind::InvalidParameter, "branching factor k must exceed 1");
    }
    // 1 / (2(k - sqrt(k(k-1)))) rationalised to avoid cancellation at large k.
    return {(k + std::sqrt(k * (k - 1.0))) / (2.0 * k), 1.0 / (k - 1.0)};
}

ReversalThresholds reversal_thresholds(double a, double k) {
    const auto [a_star, d_star] = min_upper_bound(k);
    if (!(a > a_star) || !(a < 1.0)) {
        throw Error(ErrorKind::OutOfRange, "propagation reversal requires a_+^*(k) < a < 1 with a_+^*(" +
                                               format_double(k) + ") = " + format_double(a_star) +
                                               ", got a = " + format_double(a));
    }
    const auto upper = [k, a](double d) { return a_plus(d, k) - a; };
    const auto lower = [k, a](double d) { return a_minus(d, k) - a; };
    constexpr double kMaxD = 1e300;

    // a_+ decreases from 1 toward a_star on (0, d_star).
    double lo = std::min(1e-12, 0.5 * d_star);
    while (upper(lo) <= 0.0) {
        lo *= 0.1;
        if (lo < std::numeric_limits<double>::min()) {
            throw Error(ErrorKind::OutOfRange, "no lower crossing of a_+ for a = " + format_double(a));
        }
    }
    const double d_lo_plus = bisect(upper, lo, d_star);

    // a_+ increases toward 1 on (d_star, inf).
    double hi = 2.0 * d_star;
    while (upper(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > kMaxD) {
            throw Error(ErrorKind::OutOfRange, "no upper crossing of a_+ for a = " + format_double(a));
        }
    }
    const double d_hi_plus = bisect(upper, d_star, hi);

    // a_- increases from 0 toward 1; a_- < a_+ puts its crossing beyond d_hi_plus.
    double hi_minus = std::max(hi, 2.0 * d_hi_plus);
    while (lower(hi_minus) <= 0.0) {
        hi_minus *= 2.0;
        if (hi_minus > kMaxD) {
            throw Error(ErrorKind::OutOfRange, "no crossing of a_- for a = " + format_double(a));
        }
    }
    const double d_lo_minus = bisect(lower, d_hi_plus, hi_minus);

    return {d_lo_plus, d_hi_plus, d_lo_minus};
}

}  // namespace treewave
