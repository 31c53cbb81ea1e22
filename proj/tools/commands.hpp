#pragma once

#include "treewave/error.hpp"
#include "treewave/pinning.hpp"
#include "treewave/simulator.hpp"
#include "treewave/wavespeed.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace treewave::cli {

enum class Format { Csv, Json };
enum class Scale { Linear, Log };
enum class PhaseMode { ClosedForm, Simulate, Both };

struct RegionOptions {
    double k = 2.0;
    double d_min = 0.01;
    double d_max = 100.0;
    int points = 200;
    Scale scale = Scale::Log;
    Format format = Format::Csv;
};

struct ProfileOptions {
    double d = 1.0;
    double k = 2.0;
    int i_min = -20;
    int i_max = 20;
    Format format = Format::Csv;
};

struct SimulateOptions {
    double d = 1.0;
    double k = 2.0;
    double a = 0.7;
    int half_width = 100;
    double t_end = 200.0;
    double h = 0.0;  ///< 0 selects the default step rule
    InitialCondition init = InitialCondition::Step;
    double noise = 0.0;  ///< uniform perturbation of the initial data, clipped to [0,1]
    std::uint64_t seed = 0;
    int stride = 10;  ///< emit every stride-th recorded snapshot
    SpeedOptions speed{};
    Format format = Format::Csv;
};

struct PhaseOptions {
    double k = 2.0;
    std::vector<double> d_grid;
    std::vector<double> a_grid;
    PhaseMode mode = PhaseMode::ClosedForm;
    PinningMode pinning = PinningMode::Strict;
    int half_width = 100;
    double t_end = 200.0;
    SpeedOptions speed{};
    unsigned threads = 0;  ///< 0 selects the hardware concurrency
    Format format = Format::Csv;
};

struct ReversalOptions {
    double k = 2.0;
    double a = 0.9;
    Format format = Format::Json;
};

struct StabilityOptions {
    double d = 1.0;
    double k = 2.0;
    double a = 0.7;
    double amplitude = 0.01;
    int half_width = 100;
    double t_end = 0.0;  ///< 0 selects 10 / |kernel decay rate|
    double h = 0.0;      ///< 0 selects the default step rule
    Format format = Format::Json;
};

// Each command validates its options (Error(InvalidParameter) on usage
// errors) and writes a complete document to `out`.
void cmd_region(const RegionOptions& opts, std::ostream& out);
void cmd_profile(const ProfileOptions& opts, std::ostream& out);
void cmd_simulate(const SimulateOptions& opts, std::ostream& out);
void cmd_phase(const PhaseOptions& opts, std::ostream& out);
void cmd_reversal(const ReversalOptions& opts, std::ostream& out);
void cmd_stability(const StabilityOptions& opts, std::ostream& out);

/// Exit status: 0 on success, 2 on usage or domain errors, 3 on numerical failures.
int exit_code_for(const Error& e) noexcept;

/// Full command line front end; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treewave::cli
