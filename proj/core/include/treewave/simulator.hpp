#pragma once

#include "treewave/pinning.hpp"
#include "treewave/profile.hpp"
#include "treewave/reaction.hpp"

#include <string_view>
#include <vector>

namespace treewave {

/// Settings for a fixed-step RK4 run on the window [-half_width, half_width]
/// with Dirichlet ghost values outside it.
struct SimConfig {
    int half_width = 100;
    double h = 0.0;
    double t_end = 0.0;
    double left_boundary = 0.0;
    double right_boundary = 1.0;
    int record_every = 1;

    /// Throws Error(InvalidParameter) if N < 10, h <= 0, t_end <= 0 or record_every < 1.
    void validate() const;
};

/// 1 / (2 (d(k+1) + 1)), the largest step accepted by integrate().
double max_stable_step(const TreeParams& p) noexcept;

/// 0.01 / (d(k+1) + 1).
double default_step(const TreeParams& p) noexcept;

/// Default step, N = 100 and roughly ten snapshots per unit time.
SimConfig default_config(const TreeParams& p, double t_end, int half_width = 100);

struct Trajectory {
    std::vector<double> times;
    std::vector<Profile> snapshots;

    std::size_t size() const noexcept { return times.size(); }
    const Profile& final_state() const { return snapshots.back(); }
};

/// d(k u_{i+1} - (k+1) u_i + u_{i-1}) + g(u_i) at every stored site, with
/// `left` and `right` standing in for the sites just outside the window.
Profile rhs(const Profile& state, const TreeParams& p, const Reaction& reaction,
            double left = 0.0, double right = 1.0);

/// The same vector field written as a second difference plus an upwind
/// advection term d(k-1)(u_{i+1} - u_i).
Profile rhs_advection_form(const Profile& state, const TreeParams& p, const Reaction& reaction,
                           double left = 0.0, double right = 1.0);

/// Classical RK4 from `initial` (window must be [-N, N]) to cfg.t_end. The step
/// is shortened so that an integer number of steps ends exactly at t_end.
Trajectory integrate(const Profile& initial, const TreeParams& p, const Reaction& reaction,
                     const SimConfig& cfg);

/// Max over interior sites of the stationary-equation defect.
double residual(const Profile& profile, const TreeParams& p, const Reaction& reaction);

enum class InitialCondition { Step, Pinned, Tail };

std::string_view to_string(InitialCondition init) noexcept;

/// Parses "step", "pinned" or "tail"; throws Error(InvalidParameter) otherwise.
InitialCondition parse_initial_condition(std::string_view name);

/// Initial state on [-N, N]. Pinned and Tail need k > 1.
///   Step:   0 for i < 0, 1 for i >= 0.
///   Pinned: the explicit pinned wave.
///   Tail:   exponential tails L1^(i+1/2)/2 and 1 - L2^(i+1/2)/2 meeting at i = -1/2.
Profile make_initial(InitialCondition init, const TreeParams& p, int half_width);

}  // namespace treewave
