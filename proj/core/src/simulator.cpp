#include "treewave/simulator.hpp"

#include "treewave/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace treewave {

namespace {

void require_window(const Profile& state) {
    if (state.size() < 3) {
        throw Error(ErrorKind::WindowTooSmall, "profile window needs at least 3 sites");
    }
}

// out_i = d(k u_{i+1} - (k+1) u_i + u_{i-1}) + g(u_i) with ghost values at both ends.
void tree_field(std::span<const double> u, double left, double right, double d, double k,
                const Reaction& g, std::span<double> out) noexcept {
    const std::size_t n = u.size();
    const double dk = d * k;
    const double diag = d * (k + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double up = i + 1 < n ? u[i + 1] : right;
        const double down = i > 0 ? u[i - 1] : left;
        out[i] = dk * up - diag * u[i] + d * down + g(u[i]);
    }
}

}  // namespace

void SimConfig::validate() const {
    if (half_width < 10) {
        throw Error(ErrorKind::InvalidParameter, "half width N must be at least 10");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorKind::InvalidParameter, "time step h must be positive");
    }
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw Error(ErrorKind::InvalidParameter, "end time must be positive");
    }
    if (record_every < 1) {
        throw Error(ErrorKind::InvalidParameter, "record_every must be at least 1");
    }
}

double max_stable_step(const TreeParams& p) noexcept {
    return 1.0 / (2.0 * (p.d() * (p.k() + 1.0) + 1.0));
}

double default_step(const TreeParams& p) noexcept { return 0.01 / (p.d() * (p.k() + 1.0) + 1.0); }

SimConfig default_config(const TreeParams& p, double t_end, int half_width) {
    SimConfig cfg;
    cfg.half_width = half_width;
    cfg.h = default_step(p);
    cfg.t_end = t_end;
    cfg.record_every = std::max(1, static_cast<int>(std::lround(0.1 / cfg.h)));
    return cfg;
}

Profile rhs(const Profile& state, const TreeParams& p, const Reaction& reaction, double left,
            double right) {
    require_window(state);
    Profile out(state.offset(), std::vector<double>(state.size()));
    tree_field(state.values(), left, right, p.d(), p.k(), reaction, out.values());
    return out;
}

Profile rhs_advection_form(const Profile& state, const TreeParams& p, const Reaction& reaction,
                           double left, double right) {
    require_window(state);
    const auto u = state.values();
    const std::size_t n = u.size();
    const double d = p.d();
    const double advection = d * (p.k() - 1.0);
    Profile out(state.offset(), std::vector<double>(n));
    auto du = out.values();
    for (std::size_t i = 0; i < n; ++i) {
        const double up = i + 1 < n ? u[i + 1] : right;
        const double down = i > 0 ? u[i - 1] : left;
        du[i] = d * (up - 2.0 * u[i] + down) + advection * (up - u[i]) + reaction(u[i]);
    }
    return out;
}

Trajectory integrate(const Profile& initial, const TreeParams& p, const Reaction& reaction,
                     const SimConfig& cfg) {
    cfg.validate();
    const int n_half = cfg.half_width;
    if (initial.first_index() != -n_half || initial.last_index() != n_half) {
        throw Error(ErrorKind::InvalidWindow, "initial profile must cover [-N, N] with N = " +
                                                  std::to_string(n_half));
    }
    if (!initial.all_finite()) {
        throw Error(ErrorKind::NonFiniteState, "initial profile contains non-finite values");
    }
    const double h_max = max_stable_step(p);
    if (cfg.h > h_max) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "step h = " << cfg.h << " exceeds the stability bound 1/(2(d(k+1)+1)) = " << h_max;
        throw Error(ErrorKind::StepSizeTooLarge, msg.str());
    }

    const auto steps = static_cast<long long>(std::ceil(cfg.t_end / cfg.h - 1e-12));
    const double h = cfg.t_end / static_cast<double>(steps);
    const std::size_t n = initial.size();
    const double d = p.d();
    const double k = p.k();
    const double left = cfg.left_boundary;
    const double right = cfg.right_boundary;

    std::vector<double> u(initial.values().begin(), initial.values().end());
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.snapshots.push_back(initial);

    const auto check_finite = [&](double t) {
        if (!std::all_of(u.begin(), u.end(), [](double v) { return std::isfinite(v); })) {
            throw Error(ErrorKind::NonFiniteState,
                        "state became non-finite at t = " + std::to_string(t));
        }
    };

    for (long long step = 1; step <= steps; ++step) {
        tree_field(u, left, right, d, k, reaction, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
        tree_field(tmp, left, right, d, k, reaction, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
        tree_field(tmp, left, right, d, k, reaction, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + h * k3[i];
        tree_field(tmp, left, right, d, k, reaction, k4);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        if (step % cfg.record_every == 0 || step == steps) {
            const double t = step == steps ? cfg.t_end : static_cast<double>(step) * h;
            check_finite(t);
            traj.times.push_back(t);
            traj.snapshots.emplace_back(initial.offset(), u);
        }
    }
    return traj;
}

double residual(const Profile& profile, const TreeParams& p, const Reaction& reaction) {
    require_window(profile);
    const double d = p.d();
    const double k = p.k();
    double worst = 0.0;
    for (int i = profile.first_index() + 1; i < profile.last_index(); ++i) {
        const double defect =
            d * (k * profile[i + 1] - (k + 1.0) * profile[i] + profile[i - 1]) + reaction(profile[i]);
        worst = std::max(worst, std::abs(defect));
    }
    return worst;
}

std::string_view to_string(InitialCondition init) noexcept {
    switch (init) {
    case InitialCondition::Step: return "step";
    case InitialCondition::Pinned: return "pinned";
    case InitialCondition::Tail: return "tail";
    }
    return "unknown";
}

InitialCondition parse_initial_condition(std::string_view name) {
    if (name == "step") return InitialCondition::Step;
    if (name == "pinned") return InitialCondition::Pinned;
    if (name == "tail") return InitialCondition::Tail;
    throw Error(ErrorKind::InvalidParameter,
                "unknown initial condition '" + std::string(name) + "' (step|pinned|tail)");
}

Profile make_initial(InitialCondition init, const TreeParams& p, int half_width) {
    if (half_width < 1) {
        throw Error(ErrorKind::InvalidWindow, "half width must be positive");
    }
    switch (init) {
    case InitialCondition::Step:
        return step_profile(half_width);
    case InitialCondition::Pinned:
        return pinned_profile(p.d(), p.k(), -half_width, half_width);
    case InitialCondition::Tail: {
        const WaveCoefficients w = eigenvalues(p.d(), p.k());
        Profile out = constant_profile(half_width, 0.0);
        for (int i = -half_width; i <= half_width; ++i) {
            out[i] = i < 0 ? 0.5 * std::pow(w.lambda1, i + 0.5)
                           : 1.0 - 0.5 * std::pow(w.lambda2, i + 0.5);
        }
        return out;
    }
    }
    throw Error(ErrorKind::InvalidParameter, "unknown initial condition");
}

}  // namespace treewave
