#pragma once

#include "treewave/pinning.hpp"
#include "treewave/simulator.hpp"

#include <span>
#include <vector>

namespace treewave {

struct SpeedEstimate {
    double c = 0.0;             ///< sites per unit time, positive toward children
    double fit_quality = 0.0;   ///< coefficient of determination of the linear fit
    Direction direction = Direction::Pinned;
    bool truncated = false;     ///< the front came within N/4 of a window edge
    std::size_t samples = 0;    ///< snapshots used in the fit
};

struct SpeedOptions {
    double transient_fraction = 0.5;
    double pinning_tolerance = 1e-3;  ///< |c| below this counts as pinned
    double level = 0.5;
};

struct InterfaceLocation {
    double position;
    int crossings;  ///< number of upward crossings of the level; 1 for monotone fronts
};

/// First upward crossing of `level`, linearly interpolated between the
/// bracketing sites. Throws Error(NoCrossing) if the profile never straddles it.
InterfaceLocation locate_interface(const Profile& profile, double level = 0.5);

inline double interface_position(const Profile& profile, double level = 0.5) {
    return locate_interface(profile, level).position;
}

/// Least-squares slope of the interface position against time after the
/// transient. Snapshots from the first one whose front is within N/4 of an
/// edge (or has left the window) onward are dropped and `truncated` is set.
SpeedEstimate estimate_speed(const Trajectory& traj, const SpeedOptions& opts = {});

/// Integrates from a sharp step with McKean's reaction and estimates the speed.
SpeedEstimate classify_empirical(const TreeParams& p, const SimConfig& cfg,
                                 const SpeedOptions& opts = {});

/// classify_empirical over many parameter points on a thread pool; results are
/// returned in input order. `threads == 0` uses the hardware concurrency.
std::vector<SpeedEstimate> classify_empirical_many(std::span<const TreeParams> points,
                                                   double t_end, int half_width = 100,
                                                   const SpeedOptions& opts = {},
                                                   unsigned threads = 0);

}  // namespace treewave
