#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "eapkit/config.hpp"
#include "eapkit/errors.hpp"
#include "eapkit/experiment_design.hpp"
#include "eapkit/quantum_eap.hpp"
#include "eapkit/simulation.hpp"

namespace eapkit {

/// Round-trip-exact decimal rendering for CSV cells.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// All emitted JSON records carry this schema tag.
inline constexpr const char* JSON_SCHEMA = "eapkit/1";

/// Flat echo of a config, dotted keys with raw (untyped) values, so a record
/// can be traced back to the exact scenario text that produced it.
inline nlohmann::json config_echo(const Config& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : cfg.entries()) j[k] = v;
    return j;
}

inline nlohmann::json to_json(const BoundResult& r) {
    nlohmann::json j;
    j["parameter"] = to_string(r.parameter);
    j["central"] = r.central;
    j["uncertainty"] = r.uncertainty;
    j["formula"] = r.formula_id;
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    return j;
}

inline nlohmann::json to_json(const ClockBranches& cb) {
    nlohmann::json branches = nlohmann::json::array();
    for (const auto& b : cb.branches)
        branches.push_back({{"probability", b.probability}, {"acceleration", b.acceleration}});
    nlohmann::json j;
    j["branches"] = branches;
    if (cb.oscillation) {
        j["oscillation"] = {{"amplitude", cb.oscillation->amplitude},
                            {"angular_frequency", cb.oscillation->angular_frequency}};
    }
    return j;
}

inline std::string bound_csv_header() { return "parameter,central,uncertainty,formula"; }

inline std::string bound_csv_row(const BoundResult& r) {
    return std::string(to_string(r.parameter)) + "," + format_double(r.central) + "," +
           format_double(r.uncertainty) + "," + r.formula_id;
}

/// Fixed trajectory export format: one row per recorded step,
///   time, then x,y,z,vx,vy,vz per body (b0_, b1_, ...), then total momentum
///   px,py,pz, then passive-CM and active-CM positions.
inline std::string trajectory_csv(const NBodySystem& sys, const Trajectory& tr) {
    std::string out = "time";
    for (std::size_t i = 0; i < sys.bodies.size(); ++i) {
        const std::string b = "b" + std::to_string(i) + "_";
        for (const char* c : {"x", "y", "z", "vx", "vy", "vz"}) out += "," + b + c;
    }
    out += ",px,py,pz,cm_passive_x,cm_passive_y,cm_passive_z,cm_active_x,cm_active_y,cm_active_z\n";

    auto put = [&out](const Vec3& v) {
        out += "," + format_double(v.x) + "," + format_double(v.y) + "," + format_double(v.z);
    };
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        out += format_double(tr.times[k]);
        for (std::size_t i = 0; i < sys.bodies.size(); ++i) {
            put(tr.states[k].positions[i]);
            put(tr.states[k].velocities[i]);
        }
        put(tr.total_momentum[k]);
        put(tr.passive_cm[k]);
        put(tr.active_cm[k]);
        out += "\n";
    }
    return out;
}

/// Write-then-rename so readers never observe a half-written artifact.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                              ec.message());
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

} // namespace eapkit
