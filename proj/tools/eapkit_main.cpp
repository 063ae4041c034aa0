// eapkit: command-line front end.
//
// Subcommands dispatch to the header-only library; every run emits a
// schema-versioned JSON record on stdout that echoes the resolved scenario,
// and optionally writes artifacts (atomically) under --out.
//
// Exit codes: 0 success, 1 config error (message names the offending key),
// 2 numerical failure, 3 I/O failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eapkit/bundled_scenarios.hpp"
#include "eapkit/eapkit.hpp"
#include "eapkit/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string scenario_id;
    std::string out_dir;
    std::vector<std::string> formats;
    long long seed = 0;
    std::string sweep_spec;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool sweepable) {
    cmd->add_option("--config", o.config_path, "scenario config file");
    cmd->add_option("--scenario", o.scenario_id, "bundled scenario id");
    cmd->add_option("--out", o.out_dir, "output directory for artifacts");
    cmd->add_option("--format", o.formats, "artifact formats (json,csv)")->delimiter(',');
    cmd->add_option("--seed", o.seed, "seed echoed into the run record");
    if (sweepable)
        cmd->add_option("--sweep", o.sweep_spec,
                        "axis spec param:min:max:count:scale (scale: log|linear)");
}

std::vector<std::string> resolved_formats(const CommonOpts& o) {
    std::vector<std::string> f = o.formats.empty() ? std::vector<std::string>{"json"} : o.formats;
    for (const std::string& x : f)
        if (x != "json" && x != "csv")
            throw eapkit::ConfigError("key '--format' accepts json and csv, got '" + x + "'");
    return f;
}

bool wants(const CommonOpts& o, const std::string& fmt) {
    for (const std::string& x : resolved_formats(o))
        if (x == fmt) return true;
    return false;
}

eapkit::Config load_config(const CommonOpts& o) {
    if (!o.config_path.empty() && !o.scenario_id.empty())
        throw eapkit::ConfigError("give either '--config' or '--scenario', not both");
    if (!o.config_path.empty()) return eapkit::Config::parse_file(o.config_path);
    if (!o.scenario_id.empty())
        return eapkit::Config::parse_string(eapkit::bundled_scenario_text(o.scenario_id),
                                            "bundled:" + o.scenario_id);
    throw eapkit::ConfigError("missing '--config' (or '--scenario')");
}

json base_record(const std::string& command, const CommonOpts& o, const eapkit::Config& cfg,
                 double G) {
    json j;
    j["schema"] = eapkit::JSON_SCHEMA;
    j["command"] = command;
    j["seed"] = o.seed;
    j["G"] = G;
    j["config"] = eapkit::config_echo(cfg);
    return j;
}

void write_artifacts(const CommonOpts& o, const std::string& stem, const json* record,
                     const std::string* csv) {
    if (o.out_dir.empty()) return;
    const fs::path dir(o.out_dir);
    if (record && wants(o, "json")) eapkit::atomic_write(dir / (stem + ".json"), record->dump(2) + "\n");
    if (csv && wants(o, "csv")) eapkit::atomic_write(dir / (stem + ".csv"), *csv);
}

// ---------------------------------------------------------------- builders

eapkit::CavendishNullConfig build_cavendish_null(const eapkit::Config& c) {
    eapkit::CavendishNullConfig cfg;
    cfg.test_mass = c.get_double("cavendish_null.test_mass");
    cfg.arm = c.get_measured("cavendish_null.arm");
    cfg.source_distance = c.get_measured("cavendish_null.source_distance");
    cfg.source_mass = c.get_measured("cavendish_null.source_mass");
    cfg.phi_ddot = c.get_measured("cavendish_null.phi_ddot");
    cfg.materials = {c.get_string_or("cavendish_null.material_1", ""),
                     c.get_string_or("cavendish_null.material_2", "")};
    return cfg;
}

eapkit::CavendishStandardConfig build_cavendish_standard(const eapkit::Config& c) {
    eapkit::CavendishStandardConfig cfg;
    cfg.test_mass = c.get_double("cavendish_standard.test_mass");
    cfg.arm = c.get_measured("cavendish_standard.arm");
    cfg.source_offset = c.get_measured("cavendish_standard.source_offset");
    cfg.source_mass_1 = c.get_measured("cavendish_standard.source_mass_1");
    cfg.source_mass_2 = c.get_measured("cavendish_standard.source_mass_2");
    cfg.phi_ddot = c.get_measured("cavendish_standard.phi_ddot");
    cfg.materials = {c.get_string_or("cavendish_standard.material_1", ""),
                     c.get_string_or("cavendish_standard.material_2", "")};
    return cfg;
}

eapkit::SlabConfig build_slab(const eapkit::Config& c) {
    eapkit::SlabConfig cfg;
    cfg.materials = {c.get_string_or("slab.material_1", ""),
                     c.get_string_or("slab.material_2", "")};
    cfg.rho1 = c.has("slab.rho1") ? c.get_double("slab.rho1")
                                  : eapkit::material_lookup(c.get_string("slab.material_1"));
    cfg.rho2 = c.has("slab.rho2") ? c.get_double("slab.rho2")
                                  : eapkit::material_lookup(c.get_string("slab.material_2"));
    cfg.thickness = c.get_double("slab.thickness");
    cfg.length = c.get_double("slab.length");
    cfg.width = c.get_double("slab.width");
    cfg.resolution = c.get_double("slab.resolution");
    return cfg;
}

double resolve_energy(const eapkit::Config& c, const std::string& section,
                      const std::string& base) {
    const std::string e = section + "." + base;
    const std::string epc2 = e + "_per_c2";
    const std::string wl = section + ".transition_wavelength";
    const int given = int(c.has(e)) + int(c.has(epc2)) + int(c.has(wl));
    if (given != 1)
        throw eapkit::ConfigError("give exactly one of '" + e + "' (J), '" + epc2 + "' (kg), '" +
                                  wl + "' (m)");
    if (c.has(e)) return c.get_double(e);
    const double c2 = eapkit::constants::SPEED_OF_LIGHT * eapkit::constants::SPEED_OF_LIGHT;
    if (c.has(epc2)) return c.get_double(epc2) * c2;
    return eapkit::constants::PLANCK * eapkit::constants::SPEED_OF_LIGHT / c.get_double(wl);
}

eapkit::SqScenario build_sq(const eapkit::Config& c) {
    eapkit::SqScenario sc;
    sc.m1p = c.get_double("sq_bound.m1p");
    sc.m2p = c.get_double("sq_bound.m2p");
    sc.r = c.get_double("sq_bound.separation");
    sc.mean_transition_energy = resolve_energy(c, "sq_bound", "mean_transition_energy");
    sc.n_systems = c.get_double_or("sq_bound.n_systems", 1.0);
    sc.resolution = c.get_double("sq_bound.resolution");
    return sc;
}

// ------------------------------------------------------------ bound runner

using BoundFn = std::function<eapkit::BoundResult(const eapkit::Config&, double)>;

struct SweepAxis {
    std::string parameter;
    double min = 0, max = 0;
    std::size_t count = 0;
    bool logscale = false;
};

SweepAxis parse_sweep(const std::string& spec) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = spec.find(':', start);
        parts.push_back(spec.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() != 5)
        throw eapkit::ConfigError("'--sweep' expects param:min:max:count:scale, got '" + spec +
                                  "'");
    SweepAxis ax;
    ax.parameter = parts[0];
    try {
        ax.min = std::stod(parts[1]);
        ax.max = std::stod(parts[2]);
        ax.count = static_cast<std::size_t>(std::stoul(parts[3]));
    } catch (const std::exception&) {
        throw eapkit::ConfigError("'--sweep' has non-numeric min/max/count in '" + spec + "'");
    }
    if (ax.count < 2) throw eapkit::ConfigError("'--sweep' count must be >= 2");
    if (parts[4] == "log") ax.logscale = true;
    else if (parts[4] == "linear") ax.logscale = false;
    else throw eapkit::ConfigError("'--sweep' scale must be log or linear, got '" + parts[4] + "'");
    if (ax.logscale && (ax.min <= 0.0 || ax.max <= 0.0))
        throw eapkit::ConfigError("'--sweep' log scale needs positive min and max");
    return ax;
}

void run_bound_command(const std::string& name, const CommonOpts& o, const BoundFn& compute) {
    const eapkit::Config cfg = load_config(o);
    const double G = eapkit::constants::effective_newton_constant();

    if (!o.sweep_spec.empty()) {
        const SweepAxis ax = parse_sweep(o.sweep_spec);
        if (!cfg.has(ax.parameter))
            throw eapkit::ConfigError("unknown sweep parameter '" + ax.parameter + "'");

        std::string csv = ax.parameter + ",central,uncertainty\n";
        json rows = json::array();
        for (std::size_t k = 0; k < ax.count; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(ax.count - 1);
            const double v = ax.logscale
                                 ? std::exp(std::log(ax.min) + t * (std::log(ax.max) - std::log(ax.min)))
                                 : ax.min + t * (ax.max - ax.min);
            eapkit::Config point = cfg;
            point.set(ax.parameter, eapkit::format_double(v));
            const eapkit::BoundResult r = compute(point, G);
            csv += eapkit::format_double(v) + "," + eapkit::format_double(r.central) + "," +
                   eapkit::format_double(r.uncertainty) + "\n";
            rows.push_back({{"value", v}, {"central", r.central}, {"uncertainty", r.uncertainty}});
        }

        json record = base_record("sweep", o, cfg, G);
        record["base_command"] = name;
        record["axis"] = {{"parameter", ax.parameter}, {"min", ax.min},   {"max", ax.max},
                          {"count", ax.count},         {"scale", ax.logscale ? "log" : "linear"}};
        record["rows"] = rows;
        std::cout << csv;
        const std::string stem = name + "_sweep";
        if (!o.out_dir.empty()) {
            eapkit::atomic_write(fs::path(o.out_dir) / (stem + ".csv"), csv);
            if (wants(o, "json"))
                eapkit::atomic_write(fs::path(o.out_dir) / (stem + ".json"), record.dump(2) + "\n");
        }
        return;
    }

    const eapkit::BoundResult r = compute(cfg, G);
    json record = base_record(name, o, cfg, G);
    record["result"] = eapkit::to_json(r);
    std::cout << record.dump(2) << "\n";
    const std::string csv = eapkit::bound_csv_header() + "\n" + eapkit::bound_csv_row(r) + "\n";
    write_artifacts(o, name, &record, &csv);
}

// ------------------------------------------------------------ subcommands

void run_quantum_clock(const CommonOpts& o) {
    const eapkit::Config c = load_config(o);
    const double G = eapkit::constants::effective_newton_constant();

    const double m1p = c.get_double("quantum_clock.m1p");
    const double m2p = c.get_double("quantum_clock.m2p");
    const double r = c.get_double("quantum_clock.separation");
    const double e01 = resolve_energy(c, "quantum_clock", "transition_energy");

    eapkit::CMatrix ep(2);
    ep(1, 1) = e01;

    const std::string state_name = c.get_string_or("quantum_clock.state", "equal");
    eapkit::InternalState state = eapkit::InternalState::equal_superposition(2);
    if (state_name == "ground") state = eapkit::InternalState::basis(2, 0);
    else if (state_name == "excited") state = eapkit::InternalState::basis(2, 1);
    else if (state_name != "equal")
        throw eapkit::ConfigError("key 'quantum_clock.state' must be ground, excited or equal");

    const std::string model_name = c.get_string("quantum_clock.model");
    eapkit::SourceModel model = eapkit::SourceModel::identity();
    if (model_name == "operator_identity") model = eapkit::SourceModel::identity();
    else if (model_name == "expectation_value") model = eapkit::SourceModel::expectation();
    else if (model_name == "null_superposition") model = eapkit::SourceModel::null_superposition();
    else if (model_name == "operator_custom" || model_name == "noncommuting") {
        eapkit::CMatrix ea(2);
        ea(0, 0) = c.get_double_or("quantum_clock.active_diag_0", 0.0);
        ea(1, 1) = c.get_double_or("quantum_clock.active_diag_1", 0.0);
        const double cpl = c.get_double_or("quantum_clock.active_coupling", 0.0);
        ea(0, 1) = cpl;
        ea(1, 0) = cpl;
        model = model_name == "noncommuting" ? eapkit::SourceModel::noncommuting(ea)
                                             : eapkit::SourceModel::custom(ea);
    } else {
        throw eapkit::ConfigError("key 'quantum_clock.model' has unknown value '" + model_name +
                                  "'");
    }

    const eapkit::ClockBranches cb =
        eapkit::clock_self_acceleration(ep, model, state, m1p, m2p, r, G);

    json record = base_record("quantum-clock", o, c, G);
    record["result"] = eapkit::to_json(cb);
    record["result"]["model"] = model_name;
    record["result"]["state"] = state_name;
    std::cout << record.dump(2) << "\n";

    std::string csv = "probability,acceleration\n";
    for (const auto& b : cb.branches)
        csv += eapkit::format_double(b.probability) + "," +
               eapkit::format_double(b.acceleration) + "\n";
    write_artifacts(o, "quantum_clock", &record, &csv);
}

void run_overlap(const CommonOpts& o) {
    const eapkit::Config c = load_config(o);
    const double alpha1 = c.get_double("overlap.alpha1");
    const double alpha2 = c.get_double("overlap.alpha2");
    const double r = c.get_double("overlap.separation");

    const double aeff = eapkit::effective_range(alpha1, alpha2);
    json result;
    result["alpha_eff"] = aeff;
    result["overlap"] = eapkit::overlap(r, alpha1, alpha2);
    if (c.has("overlap.binding_energy")) {
        const double eb = c.get_double("overlap.binding_energy");
        const double e0 = c.get_double("overlap.reference_energy");
        result["binding_distance"] = eapkit::binding_distance(eb, e0, aeff);
    }

    json record = base_record("overlap", o, c, eapkit::constants::effective_newton_constant());
    record["result"] = result;
    std::cout << record.dump(2) << "\n";
    write_artifacts(o, "overlap", &record, nullptr);
}

void run_nbody(const CommonOpts& o) {
    const eapkit::Config c = load_config(o);
    const double G_env = eapkit::constants::effective_newton_constant();

    eapkit::NBodySystem sys;
    sys.G = c.get_double_or("nbody.g", G_env);
    const std::size_t n = c.get_count("nbody.bodies");
    if (n == 0) throw eapkit::ConfigError("key 'nbody.bodies' must be >= 1");
    for (std::size_t i = 0; i < n; ++i) {
        const std::string s = "body." + std::to_string(i);
        sys.bodies.emplace_back(
            c.get_double(s + ".passive_mass"), c.get_double(s + ".active_mass"),
            eapkit::Vec3{c.get_double_or(s + ".x", 0.0), c.get_double_or(s + ".y", 0.0),
                         c.get_double_or(s + ".z", 0.0)},
            eapkit::Vec3{c.get_double_or(s + ".vx", 0.0), c.get_double_or(s + ".vy", 0.0),
                         c.get_double_or(s + ".vz", 0.0)},
            c.get_string_or(s + ".material", ""));
    }
    for (std::size_t j = 0; c.has("link." + std::to_string(j) + ".a"); ++j) {
        const std::string s = "link." + std::to_string(j);
        eapkit::add_rigid_link(sys, c.get_count(s + ".a"), c.get_count(s + ".b"));
    }
    const double dt = c.get_double("nbody.dt");
    const std::size_t steps = c.get_count("nbody.steps");

    const eapkit::Trajectory tr = eapkit::integrate(sys, dt, steps);

    double v_scale = 0.0;
    for (std::size_t i = 0; i < sys.bodies.size(); ++i)
        v_scale += sys.bodies[i].passive_mass * sys.bodies[i].velocity.norm();
    const double p_drift = (tr.total_momentum.back() - tr.total_momentum.front()).norm();

    json result;
    result["bodies"] = n;
    result["steps"] = steps;
    result["dt"] = dt;
    result["duration"] = tr.times.back();
    result["momentum_drift"] = p_drift;
    result["momentum_scale"] = v_scale;
    result["final_passive_cm"] = {tr.passive_cm.back().x, tr.passive_cm.back().y,
                                  tr.passive_cm.back().z};
    result["final_active_cm"] = {tr.active_cm.back().x, tr.active_cm.back().y,
                                 tr.active_cm.back().z};

    json record = base_record("nbody", o, c, sys.G);
    record["result"] = result;
    std::cout << record.dump(2) << "\n";

    if (!o.out_dir.empty()) {
        if (wants(o, "json"))
            eapkit::atomic_write(fs::path(o.out_dir) / "nbody.json", record.dump(2) + "\n");
        if (wants(o, "csv"))
            eapkit::atomic_write(fs::path(o.out_dir) / "trajectory.csv",
                                 eapkit::trajectory_csv(sys, tr));
    }
}

int run_tables(const CommonOpts& o) {
    const double G = eapkit::constants::effective_newton_constant();
    bool all_ok = true;
    std::string csv = "scenario,parameter,computed,reference,ratio,status\n";

    std::printf("%-28s %-6s %13s %12s %8s  %s\n", "scenario", "param", "computed", "reference",
                "ratio", "status");
    for (const auto& t : eapkit::REFERENCE_TARGETS) {
        const eapkit::Config cfg = eapkit::Config::parse_string(
            eapkit::bundled_scenario_text(t.scenario), std::string("bundled:") + t.scenario);
        eapkit::BoundResult r;
        if (cfg.has("cavendish_null.test_mass")) r = eapkit::invert_S_null(build_cavendish_null(cfg), G);
        else if (cfg.has("slab.thickness")) r = eapkit::invert_S_slab(build_slab(cfg), G);
        else r = eapkit::sq_bound(build_sq(cfg), G);

        const double computed = r.central != 0.0 ? r.central : r.uncertainty;
        const double ratio = computed / t.reference;
        const bool ok = computed >= t.window_lo && computed <= t.window_hi;
        all_ok = all_ok && ok;
        std::printf("%-28s %-6s %13.4e %12.0e %8.2f  %s\n", t.name, t.parameter, computed,
                    t.reference, ratio, ok ? "ok" : "OUT OF WINDOW");
        csv += std::string(t.scenario) + "," + t.parameter + "," +
               eapkit::format_double(computed) + "," + eapkit::format_double(t.reference) + "," +
               eapkit::format_double(ratio) + "," + (ok ? "ok" : "out-of-window") + "\n";
    }
    if (!o.out_dir.empty() && wants(o, "csv"))
        eapkit::atomic_write(fs::path(o.out_dir) / "tables.csv", csv);
    return all_ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"eapkit: toolkit for active/passive gravitational mass asymmetry"};
    app.require_subcommand(1);
    int rc = 0;

    CommonOpts o_null, o_std, o_slab, o_sq, o_clock, o_overlap, o_nbody, o_tables;

    auto* c_null = app.add_subcommand("cavendish-null", "S bound from the null-source balance");
    add_common(c_null, o_null, true);
    c_null->callback([&] {
        run_bound_command("cavendish-null", o_null, [](const eapkit::Config& c, double G) {
            return eapkit::invert_S_null(build_cavendish_null(c), G);
        });
    });

    auto* c_std =
        app.add_subcommand("cavendish-standard", "sigma bound from a two-source balance");
    add_common(c_std, o_std, true);
    c_std->callback([&] {
        run_bound_command("cavendish-standard", o_std, [](const eapkit::Config& c, double G) {
            eapkit::Measured gref(c.get_double_or("cavendish_standard.g_reference", G),
                                  c.get_double_or("cavendish_standard.g_reference_sigma", 0.0));
            return eapkit::invert_sigma_standard(build_cavendish_standard(c), gref);
        });
    });

    auto* c_slab = app.add_subcommand("slab", "S bound from the free-falling bi-layer slab");
    add_common(c_slab, o_slab, true);
    c_slab->callback([&] {
        run_bound_command("slab", o_slab, [](const eapkit::Config& c, double G) {
            const eapkit::SlabConfig cfg = build_slab(c);
            cfg.validate();
            if (!cfg.thin_film_ok())
                std::cerr << "warning: slab thickness " << cfg.thickness
                          << " m is not << footprint; closed form assumes a thin film\n";
            return eapkit::invert_S_slab(cfg, G);
        });
    });

    auto* c_sq = app.add_subcommand("sq-bound", "S_q threshold for a clock scenario");
    add_common(c_sq, o_sq, true);
    c_sq->callback([&] {
        run_bound_command("sq-bound", o_sq, [](const eapkit::Config& c, double G) {
            return eapkit::sq_bound(build_sq(c), G);
        });
    });

    auto* c_clock = app.add_subcommand("quantum-clock", "branch self-accelerations of a clock");
    add_common(c_clock, o_clock, false);
    c_clock->callback([&] { run_quantum_clock(o_clock); });

    auto* c_overlap = app.add_subcommand("overlap", "charge-cloud overlap and binding distance");
    add_common(c_overlap, o_overlap, false);
    c_overlap->callback([&] { run_overlap(o_overlap); });

    auto* c_nbody = app.add_subcommand("nbody", "integrate an N-body scenario");
    add_common(c_nbody, o_nbody, false);
    c_nbody->callback([&] { run_nbody(o_nbody); });

    auto* c_tables =
        app.add_subcommand("tables", "recompute bundled scenarios against stored references");
    add_common(c_tables, o_tables, false);
    c_tables->callback([&] { rc = run_tables(o_tables); });

    try {
        app.parse(argc, argv);
        return rc;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const eapkit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const eapkit::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const eapkit::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
