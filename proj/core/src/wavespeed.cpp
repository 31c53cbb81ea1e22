#include "treewave/wavespeed.hpp"

#include "treewave/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace treewave {

InterfaceLocation locate_interface(const Profile& profile, double level) {
    std::optional<double> first;
    int crossings = 0;
    for (int i = profile.first_index(); i < profile.last_index(); ++i) {
        const double lo = profile[i];
        const double hi = profile[i + 1];
        if (lo < level && level <= hi) {
            ++crossings;
            if (!first) {
                first = static_cast<double>(i) + (level - lo) / (hi - lo);
            }
        }
    }
    if (!first) {
        throw Error(ErrorKind::NoCrossing, "profile does not cross the interface level");
    }
    return {*first, crossings};
}

SpeedEstimate estimate_speed(const Trajectory& traj, const SpeedOptions& opts) {
    if (traj.size() == 0 || traj.snapshots.size() != traj.times.size()) {
        throw Error(ErrorKind::InsufficientData, "empty or misaligned trajectory");
    }
    if (!(opts.transient_fraction >= 0.0 && opts.transient_fraction < 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "transient fraction must lie in [0,1)");
    }

    const Profile& first = traj.snapshots.front();
    const double margin = 0.25 * 0.5 * static_cast<double>(first.size() - 1);
    const double lo_edge = first.first_index() + margin;
    const double hi_edge = first.last_index() - margin;

    std::vector<double> positions;
    positions.reserve(traj.size());
    bool truncated = false;
    for (const Profile& snapshot : traj.snapshots) {
        double x = 0.0;
        try {
            x = locate_interface(snapshot, opts.level).position;
        } catch (const Error&) {
            truncated = true;
            break;
        }
        if (x < lo_edge || x > hi_edge) {
            truncated = true;
            break;
        }
        positions.push_back(x);
    }

    if (positions.empty()) {
        throw Error(ErrorKind::InsufficientData, "front never inside the usable window");
    }
    const std::size_t usable = positions.size();
    const double t0 = traj.times.front();
    const double t_cut = t0 + opts.transient_fraction * (traj.times[usable - 1] - t0);
    std::size_t begin = 0;
    while (begin < usable && traj.times[begin] < t_cut) {
        ++begin;
    }
    const std::size_t count = usable - begin;
    if (count < 10) {
        throw Error(ErrorKind::InsufficientData,
                    "need at least 10 post-transient snapshots, have " + std::to_string(count));
    }

    double mean_t = 0.0;
    double mean_x = 0.0;
    for (std::size_t j = begin; j < usable; ++j) {
        mean_t += traj.times[j];
        mean_x += positions[j];
    }
    mean_t /= static_cast<double>(count);
    mean_x /= static_cast<double>(count);
    double stt = 0.0;
    double stx = 0.0;
    double sxx = 0.0;
    for (std::size_t j = begin; j < usable; ++j) {
        const double dt = traj.times[j] - mean_t;
        const double dx = positions[j] - mean_x;
        stt += dt * dt;
        stx += dt * dx;
        sxx += dx * dx;
    }

    SpeedEstimate est;
    est.c = stx / stt;
    est.samples = count;
    est.truncated = truncated;
    // A perfectly flat track is a perfect fit.
    est.fit_quality = sxx > 0.0 ? std::clamp(stx * stx / (stt * sxx), 0.0, 1.0) : 1.0;
    if (est.c > opts.pinning_tolerance) {
        est.direction = Direction::Down;
    } else if (est.c < -opts.pinning_tolerance) {
        est.direction = Direction::Up;
    } else {
        est.direction = Direction::Pinned;
    }
    return est;
}

SpeedEstimate classify_empirical(const TreeParams& p, const SimConfig& cfg,
                                 const SpeedOptions& opts) {
    const Profile initial = make_initial(InitialCondition::Step, p, cfg.half_width);
    const Trajectory traj = integrate(initial, p, Reaction::mckean(p.a()), cfg);
    return estimate_speed(traj, opts);
}

std::vector<SpeedEstimate> classify_empirical_many(std::span<const TreeParams> points,
                                                   double t_end, int half_width,
                                                   const SpeedOptions& opts, unsigned threads) {
    std::vector<SpeedEstimate> results(points.size());
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t j = next++; j < points.size(); j = next++) {
            try {
                results[j] = classify_empirical(points[j], default_config(points[j], t_end, half_width), opts);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

}  // namespace treewave
