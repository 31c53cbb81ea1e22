#include "commands.hpp"

#include "treewave/stability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace treewave::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1";

std::string schema(const char* command) {
    return std::string("treewave.") + command + "/" + kSchemaVersion;
}

// Full double precision, locale independent.
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ordered_json json_number(double x) {
    return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

void usage_error(const std::string& message) {
    throw Error(ErrorKind::InvalidParameter, message);
}

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) usage_error(std::string(name) + " must be finite");
}

std::string_view to_string(PhaseMode mode) {
    switch (mode) {
        case PhaseMode::ClosedForm: return "closed_form";
        case PhaseMode::Simulate: return "simulate";
        case PhaseMode::Both: return "both";
    }
    return "?";
}

std::string_view to_string(PinningMode mode) {
    return mode == PinningMode::Strict ? "strict" : "nonstrict";
}

void write_json(const ordered_json& doc, std::ostream& out) {
    out << doc.dump(2) << '\n';
}

SimConfig simulation_config(const TreeParams& p, double t_end, int half_width, double h) {
    require_finite(t_end, "--t-end");
    if (!(t_end > 0.0)) usage_error("--t-end must be positive");
    if (half_width < 10) usage_error("--N must be at least 10");
    SimConfig cfg = default_config(p, t_end, half_width);
    if (h != 0.0) {
        require_finite(h, "--h");
        if (!(h > 0.0)) usage_error("--h must be positive");
        // keep recording roughly every 0.1 time units
        cfg.h = h;
        cfg.record_every = std::max(1, static_cast<int>(std::lround(0.1 / h)));
    }
    return cfg;
}

void check_speed_options(const SpeedOptions& s) {
    if (!(s.pinning_tolerance > 0.0) || !std::isfinite(s.pinning_tolerance)) {
        usage_error("--eps-c must be positive");
    }
    if (!(s.transient_fraction >= 0.0 && s.transient_fraction < 1.0)) {
        usage_error("--transient must lie in [0, 1)");
    }
}

}  // namespace

void cmd_region(const RegionOptions& opts, std::ostream& out) {
    require_finite(opts.d_min, "--d-min");
    require_finite(opts.d_max, "--d-max");
    if (!(opts.k > 1.0)) usage_error("--k must exceed 1");
    if (!(opts.d_min > 0.0) || opts.d_max < opts.d_min) {
        usage_error("need 0 < d_min <= d_max");
    }
    if (opts.points < 1 || (opts.points < 2 && opts.d_min != opts.d_max)) {
        usage_error("--points must be at least 2 unless d_min == d_max");
    }
    std::vector<double> ds;
    for (int j = 0; j < opts.points; ++j) {
        const double s = opts.points == 1 ? 0.0 : static_cast<double>(j) / (opts.points - 1);
        double d = opts.scale == Scale::Log
                       ? std::exp(std::log(opts.d_min) + s * (std::log(opts.d_max) - std::log(opts.d_min)))
                       : opts.d_min + s * (opts.d_max - opts.d_min);
        if (j == 0) d = opts.d_min;
        if (j == opts.points - 1) d = opts.d_max;
        ds.push_back(d);
    }
    if (opts.format == Format::Csv) {
        out << "d,a_minus,a_plus\n";
        for (double d : ds) {
            const RegionBounds b = pinning_bounds(d, opts.k);
            out << num(d) << ',' << num(b.a_minus) << ',' << num(b.a_plus) << '\n';
        }
        out << "# k=" << num(opts.k) << "\n# scale=" << (opts.scale == Scale::Log ? "log" : "linear") << '\n';
        return;
    }
    ordered_json rows = ordered_json::array();
    for (double d : ds) {
        const RegionBounds b = pinning_bounds(d, opts.k);
        rows.push_back({{"d", d}, {"a_minus", b.a_minus}, {"a_plus", b.a_plus}});
    }
    write_json({{"schema", schema("region")},
                {"k", opts.k},
                {"scale", opts.scale == Scale::Log ? "log" : "linear"},
                {"rows", rows}},
               out);
}

void cmd_profile(const ProfileOptions& opts, std::ostream& out) {
    if (opts.i_min > opts.i_max) usage_error("--i-min must not exceed --i-max");
    const Profile u = pinned_profile(opts.d, opts.k, opts.i_min, opts.i_max);
    if (opts.format == Format::Csv) {
        out << "i,u\n";
        for (int i = u.first_index(); i <= u.last_index(); ++i) out << i << ',' << num(u[i]) << '\n';
        out << "# d=" << num(opts.d) << "\n# k=" << num(opts.k) << '\n';
        return;
    }
    ordered_json rows = ordered_json::array();
    for (int i = u.first_index(); i <= u.last_index(); ++i) rows.push_back({{"i", i}, {"u", u[i]}});
    write_json({{"schema", schema("profile")}, {"d", opts.d}, {"k", opts.k}, {"profile", rows}}, out);
}

void cmd_simulate(const SimulateOptions& opts, std::ostream& out) {
    check_speed_options(opts.speed);
    if (opts.stride < 1) usage_error("--stride must be at least 1");
    if (!(opts.noise >= 0.0) || !std::isfinite(opts.noise)) usage_error("--noise must be non-negative");
    const TreeParams p = opts.k == 1.0 ? TreeParams::lattice(opts.d, opts.a) : TreeParams(opts.d, opts.k, opts.a);
    const SimConfig cfg = simulation_config(p, opts.t_end, opts.half_width, opts.h);

    Profile initial = make_initial(opts.init, p, cfg.half_width);
    if (opts.noise > 0.0) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> jitter(-opts.noise, opts.noise);
        for (double& v : initial.values()) v = std::clamp(v + jitter(rng), 0.0, 1.0);
    }
    const Trajectory traj = integrate(initial, p, Reaction::mckean(p.a()), cfg);
    const SpeedEstimate est = estimate_speed(traj, opts.speed);

    const auto emitted = [&](std::size_t j) { return j % opts.stride == 0 || j + 1 == traj.size(); };
    const ordered_json metadata{{"d", p.d()},
                                {"k", p.k()},
                                {"a", p.a()},
                                {"N", cfg.half_width},
                                {"h", cfg.h},
                                {"t_end", cfg.t_end},
                                {"init", std::string(to_string(opts.init))},
                                {"noise", opts.noise},
                                {"seed", opts.seed},
                                {"eps_c", opts.speed.pinning_tolerance},
                                {"transient", opts.speed.transient_fraction},
                                {"level", opts.speed.level}};
    const ordered_json summary{{"c", json_number(est.c)},
                               {"fit_quality", json_number(est.fit_quality)},
                               {"direction", std::string(to_string(est.direction))},
                               {"truncated", est.truncated},
                               {"samples", est.samples}};

    if (opts.format == Format::Csv) {
        out << "t,i,u\n";
        for (std::size_t j = 0; j < traj.size(); ++j) {
            if (!emitted(j)) continue;
            const Profile& s = traj.snapshots[j];
            const std::string t = num(traj.times[j]);
            for (int i = s.first_index(); i <= s.last_index(); ++i) {
                out << t << ',' << i << ',' << num(s[i]) << '\n';
            }
        }
        for (const auto& [key, value] : metadata.items()) {
            out << "# " << key << '=';
            if (value.is_number_float()) {
                out << num(value.get<double>());
            } else if (value.is_string()) {
                out << value.get<std::string>();
            } else {
                out << value.dump();
            }
            out << '\n';
        }
        out << "# summary.c=" << num(est.c) << "\n# summary.fit_quality=" << num(est.fit_quality)
            << "\n# summary.direction=" << to_string(est.direction)
            << "\n# summary.truncated=" << (est.truncated ? "true" : "false")
            << "\n# summary.samples=" << est.samples << '\n';
        return;
    }
    ordered_json snapshots = ordered_json::array();
    for (std::size_t j = 0; j < traj.size(); ++j) {
        if (!emitted(j)) continue;
        const Profile& s = traj.snapshots[j];
        snapshots.push_back({{"t", traj.times[j]},
                             {"i_min", s.first_index()},
                             {"u", std::vector<double>(s.values().begin(), s.values().end())}});
    }
    write_json({{"schema", schema("simulate")},
                {"metadata", metadata},
                {"snapshots", snapshots},
                {"summary", summary}},
               out);
}

void cmd_phase(const PhaseOptions& opts, std::ostream& out) {
    if (opts.d_grid.empty() || opts.a_grid.empty()) usage_error("--d-grid and --a-grid must be non-empty");
    if (!(opts.k > 1.0)) usage_error("--k must exceed 1");
    check_speed_options(opts.speed);
    if (opts.mode != PhaseMode::ClosedForm) {
        if (!(opts.t_end > 0.0) || !std::isfinite(opts.t_end)) usage_error("--t-end must be positive");
        if (opts.half_width < 10) usage_error("--N must be at least 10");
    }

    std::vector<TreeParams> points;
    for (double d : opts.d_grid) {
        for (double a : opts.a_grid) points.emplace_back(d, opts.k, a);
    }
    const bool closed = opts.mode != PhaseMode::Simulate;
    const bool simulate = opts.mode != PhaseMode::ClosedForm;
    std::vector<SpeedEstimate> est;
    if (simulate) est = classify_empirical_many(points, opts.t_end, opts.half_width, opts.speed, opts.threads);

    int mismatches = 0;
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    csv << "d,a,direction_closed,direction_empirical,c,mismatch\n";
    for (std::size_t j = 0; j < points.size(); ++j) {
        const TreeParams& p = points[j];
        const std::string dir_closed = closed ? std::string(to_string(classify(p, opts.pinning))) : "";
        const std::string dir_emp = simulate ? std::string(to_string(est[j].direction)) : "";
        const bool both = closed && simulate;
        const bool mismatch = both && dir_closed != dir_emp;
        mismatches += mismatch;
        csv << num(p.d()) << ',' << num(p.a()) << ',' << dir_closed << ',' << dir_emp << ','
            << (simulate ? num(est[j].c) : "") << ',' << (both ? (mismatch ? "1" : "0") : "") << '\n';
        ordered_json row{{"d", p.d()}, {"a", p.a()}};
        row["direction_closed"] = closed ? ordered_json(dir_closed) : ordered_json(nullptr);
        row["direction_empirical"] = simulate ? ordered_json(dir_emp) : ordered_json(nullptr);
        row["c"] = simulate ? json_number(est[j].c) : ordered_json(nullptr);
        row["truncated"] = simulate ? ordered_json(est[j].truncated) : ordered_json(nullptr);
        row["mismatch"] = both ? ordered_json(mismatch) : ordered_json(nullptr);
        rows.push_back(row);
    }
    if (opts.format == Format::Csv) {
        out << csv.str() << "# k=" << num(opts.k) << "\n# mode=" << to_string(opts.mode)
            << "\n# pinning=" << to_string(opts.pinning);
        if (simulate) {
            out << "\n# N=" << opts.half_width << "\n# t_end=" << num(opts.t_end)
                << "\n# eps_c=" << num(opts.speed.pinning_tolerance)
                << "\n# transient=" << num(opts.speed.transient_fraction);
        }
        if (closed && simulate) out << "\n# mismatches=" << mismatches;
        out << '\n';
        return;
    }
    ordered_json doc{{"schema", schema("phase")},
                     {"k", opts.k},
                     {"mode", std::string(to_string(opts.mode))},
                     {"pinning", std::string(to_string(opts.pinning))}};
    if (simulate) {
        doc["N"] = opts.half_width;
        doc["t_end"] = opts.t_end;
        doc["eps_c"] = opts.speed.pinning_tolerance;
        doc["transient"] = opts.speed.transient_fraction;
    }
    doc["rows"] = rows;
    if (closed && simulate) doc["mismatches"] = mismatches;
    write_json(doc, out);
}

void cmd_reversal(const ReversalOptions& opts, std::ostream& out) {
    const ReversalThresholds r = reversal_thresholds(opts.a, opts.k);
    const double res_lo = a_plus(r.d_lo_plus, opts.k) - opts.a;
    const double res_hi = a_plus(r.d_hi_plus, opts.k) - opts.a;
    const double res_minus = a_minus(r.d_lo_minus, opts.k) - opts.a;
    if (opts.format == Format::Csv) {
        out << "k,a,d_lo_plus,d_hi_plus,d_lo_minus,residual_lo_plus,residual_hi_plus,residual_lo_minus\n"
            << num(opts.k) << ',' << num(opts.a) << ',' << num(r.d_lo_plus) << ',' << num(r.d_hi_plus)
            << ',' << num(r.d_lo_minus) << ',' << num(res_lo) << ',' << num(res_hi) << ','
            << num(res_minus) << '\n';
        return;
    }
    write_json({{"schema", schema("reversal")},
                {"k", opts.k},
                {"a", opts.a},
                {"a_plus_star", min_upper_bound(opts.k).a_plus_star},
                {"d_lo_plus", r.d_lo_plus},
                {"d_hi_plus", r.d_hi_plus},
                {"d_lo_minus", r.d_lo_minus},
                {"residuals", {{"d_lo_plus", res_lo}, {"d_hi_plus", res_hi}, {"d_lo_minus", res_minus}}}},
               out);
}

void cmd_stability(const StabilityOptions& opts, std::ostream& out) {
    const TreeParams p(opts.d, opts.k, opts.a);
    if (opts.half_width < 10) usage_error("--N must be at least 10");
    SimConfig cfg = stability_config(p, opts.half_width);
    if (opts.t_end != 0.0) {
        if (!(opts.t_end > 0.0) || !std::isfinite(opts.t_end)) usage_error("--t-end must be positive");
        cfg.t_end = opts.t_end;
    }
    if (opts.h != 0.0) {
        if (!(opts.h > 0.0) || !std::isfinite(opts.h)) usage_error("--h must be positive");
        cfg.h = opts.h;
        cfg.record_every = std::max(1, static_cast<int>(std::lround(0.05 / opts.h)));
    }
    const DecayReport rep = perturbation_decay_test(p, opts.amplitude, cfg);
    if (opts.format == Format::Csv) {
        out << "t,sup_norm\n";
        for (std::size_t j = 0; j < rep.times.size(); ++j) {
            out << num(rep.times[j]) << ',' << num(rep.sup_norms[j]) << '\n';
        }
        out << "# d=" << num(p.d()) << "\n# k=" << num(p.k()) << "\n# a=" << num(p.a())
            << "\n# amplitude=" << num(rep.amplitude) << "\n# N=" << cfg.half_width << "\n# h=" << num(cfg.h)
            << "\n# t_end=" << num(cfg.t_end) << "\n# summary.final_sup_norm=" << num(rep.final_sup_norm)
            << "\n# summary.fitted_exponent="
            << (rep.fitted_exponent ? num(*rep.fitted_exponent) : std::string("none"))
            << "\n# summary.theoretical_rate=" << num(rep.theoretical_rate)
            << "\n# summary.decayed=" << (rep.decayed ? "true" : "false")
            << "\n# summary.linear_relative_error=" << num(rep.linear_relative_error) << '\n';
        return;
    }
    write_json({{"schema", schema("stability")},
                {"d", p.d()},
                {"k", p.k()},
                {"a", p.a()},
                {"amplitude", rep.amplitude},
                {"N", cfg.half_width},
                {"h", cfg.h},
                {"t_end", cfg.t_end},
                {"times", rep.times},
                {"sup_norms", rep.sup_norms},
                {"final_sup_norm", rep.final_sup_norm},
                {"fitted_exponent", rep.fitted_exponent ? json_number(*rep.fitted_exponent) : ordered_json(nullptr)},
                {"theoretical_rate", rep.theoretical_rate},
                {"decayed", rep.decayed},
                {"linear_check",
                 {{"t", rep.linear_check_time},
                  {"observed", rep.linear_observed},
                  {"predicted", rep.linear_predicted},
                  {"relative_error", json_number(rep.linear_relative_error)}}}},
               out);
}

int exit_code_for(const Error& e) noexcept {
    return e.is_domain_error() ? 2 : 3;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pinned and travelling waves of the McKean equation on k-ary trees", "treewave"};
    app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
    app.require_subcommand(1);

    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
    std::string out_path = "-";
    Format format = Format::Csv;
    bool format_given = false;

    const auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: csv or json")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
            ->each([&](const std::string&) { format_given = true; });
        cmd->add_option("--out", out_path, "output file, '-' for stdout");
    };
    PinningMode pinning = PinningMode::Strict;
    const auto add_pinning = [&](CLI::App* cmd) {
        auto* strict = cmd->add_flag_callback("--strict", [&] { pinning = PinningMode::Strict; },
                                              "a_- < a <= a_+ counts as pinned (default)");
        auto* loose = cmd->add_flag_callback("--nonstrict", [&] { pinning = PinningMode::Nonstrict; },
                                             "a_- <= a <= a_+ counts as pinned");
        strict->excludes(loose);
    };

    RegionOptions region;
    auto* c_region = app.add_subcommand("region", "pinning bounds a_-(d,k), a_+(d,k) over a range of d");
    c_region->add_option("--k", region.k, "branching factor (> 1)");
    c_region->add_option("--d-min", region.d_min, "smallest diffusion");
    c_region->add_option("--d-max", region.d_max, "largest diffusion");
    c_region->add_option("--points", region.points, "number of d values");
    c_region->add_option("--scale", region.scale, "spacing of d: linear or log")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Scale>{{"linear", Scale::Linear}, {"log", Scale::Log}},
                                            CLI::ignore_case));
    add_io(c_region);

    ProfileOptions profile;
    auto* c_profile = app.add_subcommand("profile", "explicit pinned wave on a window of sites");
    c_profile->add_option("--d", profile.d, "diffusion");
    c_profile->add_option("--k", profile.k, "branching factor (> 1)");
    c_profile->add_option("--i-min", profile.i_min, "first site (<= -1)");
    c_profile->add_option("--i-max", profile.i_max, "last site (>= 0)");
    add_io(c_profile);

    SimulateOptions sim;
    std::string sim_init = "step";
    auto* c_sim = app.add_subcommand("simulate", "integrate the tree equation and estimate the wave speed");
    c_sim->add_option("--d", sim.d, "diffusion");
    c_sim->add_option("--k", sim.k, "branching factor (>= 1)");
    c_sim->add_option("--a", sim.a, "detuning in (0,1)");
    c_sim->add_option("--N", sim.half_width, "window half width, sites -N..N");
    c_sim->add_option("--t-end", sim.t_end, "final time");
    c_sim->add_option("--h", sim.h, "RK4 step (default 0.01/(d(k+1)+1))");
    c_sim->add_option("--init", sim_init, "initial data: step, pinned or tail")
        ->check(CLI::IsMember({"step", "pinned", "tail"}));
    c_sim->add_option("--noise", sim.noise, "uniform perturbation amplitude of the initial data");
    c_sim->add_option("--seed", sim.seed, "seed for --noise");
    c_sim->add_option("--stride", sim.stride, "emit every n-th recorded snapshot (recorded every ~0.1)");
    c_sim->add_option("--eps-c", sim.speed.pinning_tolerance, "|c| below this counts as pinned");
    c_sim->add_option("--transient", sim.speed.transient_fraction, "fraction of the run discarded before fitting");
    add_io(c_sim);

    PhaseOptions phase;
    auto* c_phase = app.add_subcommand("phase", "classify a (d,a) grid as pinned, down or up");
    c_phase->add_option("--k", phase.k, "branching factor (> 1)");
    c_phase->add_option("--d-grid", phase.d_grid, "comma separated diffusion values")->delimiter(',');
    c_phase->add_option("--a-grid", phase.a_grid, "comma separated detuning values")->delimiter(',');
    c_phase->add_option("--mode", phase.mode, "closed_form, simulate or both")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, PhaseMode>{
                {"closed_form", PhaseMode::ClosedForm}, {"simulate", PhaseMode::Simulate}, {"both", PhaseMode::Both}},
            CLI::ignore_case));
    c_phase->add_option("--N", phase.half_width, "window half width for simulations");
    c_phase->add_option("--t-end", phase.t_end, "simulation time");
    c_phase->add_option("--eps-c", phase.speed.pinning_tolerance, "|c| below this counts as pinned");
    c_phase->add_option("--transient", phase.speed.transient_fraction, "fraction of the run discarded before fitting");
    c_phase->add_option("--threads", phase.threads, "worker threads (0 = hardware concurrency)");
    add_pinning(c_phase);
    add_io(c_phase);

    ReversalOptions reversal;
    auto* c_rev = app.add_subcommand("reversal", "diffusion thresholds where the propagation direction changes");
    c_rev->add_option("--k", reversal.k, "branching factor (> 1)");
    c_rev->add_option("--a", reversal.a, "detuning, must exceed a_+^*(k)");
    add_io(c_rev);

    StabilityOptions stab;
    auto* c_stab = app.add_subcommand("stability", "decay of a perturbation of the pinned wave");
    c_stab->add_option("--d", stab.d, "diffusion");
    c_stab->add_option("--k", stab.k, "branching factor (> 1)");
    c_stab->add_option("--a", stab.a, "detuning inside the pinning region");
    c_stab->add_option("--amplitude", stab.amplitude, "perturbation subtracted at site 0");
    c_stab->add_option("--N", stab.half_width, "window half width");
    c_stab->add_option("--t-end", stab.t_end, "final time (default 10/|decay rate|)");
    c_stab->add_option("--h", stab.h, "RK4 step");
    add_io(c_stab);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::ostringstream doc;
    try {
        if (c_region->parsed()) {
            region.format = format;
            cmd_region(region, doc);
        } else if (c_profile->parsed()) {
            profile.format = format;
            cmd_profile(profile, doc);
        } else if (c_sim->parsed()) {
            sim.format = format;
            sim.init = parse_initial_condition(sim_init);
            cmd_simulate(sim, doc);
        } else if (c_phase->parsed()) {
            phase.format = format;
            phase.pinning = pinning;
            cmd_phase(phase, doc);
        } else if (c_rev->parsed()) {
            reversal.format = format_given ? format : Format::Json;
            cmd_reversal(reversal, doc);
        } else if (c_stab->parsed()) {
            stab.format = format_given ? format : Format::Json;
            cmd_stability(stab, doc);
        }
    } catch (const Error& e) {
        err << "treewave: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "treewave: " << e.what() << '\n';
        return 3;
    }

    if (out_path == "-" || out_path == "stdout") {
        out << doc.str();
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "treewave: cannot open " << out_path << " for writing\n";
        return 2;
    }
    file << doc.str();
    return file ? 0 : 3;
}

}  // namespace treewave::cli
