#ifndef KEPLERGEO_IO_HPP
#define KEPLERGEO_IO_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "keplergeo/duality.hpp"
#include "keplergeo/flows.hpp"

namespace keplergeo {

inline constexpr const char* kTrajectoryCsvHeader = "t,x1,x2,x3,p1,p2,p3,E,c1,c2,c3,c4,c5,c6";

/// Shortest decimal string that round-trips the binary64 value.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("bad numeric field '" + s + "'");
    return v;
}

inline nlohmann::ordered_json to_json(const Vec3& v) {
    return nlohmann::ordered_json::array({v.x, v.y, v.z});
}

inline nlohmann::ordered_json to_json(const PhasePoint& pt) {
    return {{"position", to_json(pt.position)}, {"momentum", to_json(pt.momentum)}};
}

inline Vec3 vec3_from_json(const nlohmann::json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

inline PhasePoint phase_point_from_json(const nlohmann::json& j) {
    return {vec3_from_json(j.at("position")), vec3_from_json(j.at("momentum"))};
}

/// Sidecar path for a CSV output: final extension replaced by .json
/// (traj.csv -> traj.json), or .json appended when there is none.
inline std::string sidecar_path(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of('/');
    const auto dot = csv_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return csv_path + ".json";
    return csv_path.substr(0, dot) + ".json";
}

inline void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << kTrajectoryCsvHeader << '\n';
    for (const Sample& s : traj.samples) {
        const auto z = to_array(s.state);
        out << format_double(s.t);
        for (double v : z) out << ',' << format_double(v);
        out << ',' << format_double(s.energy);
        for (double c : s.charges) out << ',' << format_double(c);
        out << '\n';
    }
}

inline nlohmann::ordered_json trajectory_sidecar(const Trajectory& traj, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["format"] = "keplergeo-trajectory-v1";
    j["system"] = to_string(traj.system);
    j["parameter"] = traj.parameter;
    j["initial_state"] = traj.samples.empty() ? nlohmann::ordered_json()
                                              : to_json(traj.samples.front().state);
    j["t_final"] = traj.samples.empty() ? 0.0 : traj.samples.back().t;
    j["config"] = {{"rtol", traj.config.rtol},
                   {"atol", traj.config.atol},
                   {"max_step", traj.config.max_step},
                   {"sample_count", traj.config.sample_count}};
    j["seed"] = seed;
    const DriftReport drift = drift_report(traj);
    j["drift"] = {{"energy", drift.energy}, {"charges", drift.charges}};
    auto events = nlohmann::ordered_json::array();
    for (const SwitchEvent& e : traj.switch_events)
        events.push_back({{"t", e.t}, {"before", to_json(e.before)}, {"after", to_json(e.after)}});
    j["switch_events"] = events;
    j["truncated"] = traj.truncated;
    if (traj.truncated) j["truncation_reason"] = traj.truncation_reason;
    j["steps"] = {{"accepted", traj.accepted_steps}, {"rejected", traj.rejected_steps}};
    return j;
}

inline void write_json(const nlohmann::ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

inline nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return j;
}

/// Reads a trajectory back from CSV plus its sidecar metadata.
inline Trajectory read_trajectory_csv(const std::string& csv_path,
                                      const std::string& meta_path) {
    const nlohmann::json meta = read_json(meta_path);
    Trajectory traj;
    const std::string system = meta.at("system").get<std::string>();
    if (system == "kepler")
        traj.system = SystemKind::Kepler;
    else if (system == "geodesic-natural")
        traj.system = SystemKind::GeodesicNatural;
    else if (system == "geodesic-transformed")
        traj.system = SystemKind::GeodesicTransformed;
    else
        throw std::runtime_error("unknown system tag '" + system + "'");
    traj.parameter = meta.at("parameter").get<double>();
    if (meta.contains("config")) {
        traj.config.rtol = meta["config"].value("rtol", 1e-12);
        traj.config.atol = meta["config"].value("atol", 1e-12);
        traj.config.max_step = meta["config"].value("max_step", 0.0);
        traj.config.sample_count = meta["config"].value("sample_count", std::size_t{1000});
    }
    traj.truncated = meta.value("truncated", false);

    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open '" + csv_path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryCsvHeader)
        throw std::runtime_error("'" + csv_path + "' lacks the trajectory CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 14)
            throw std::runtime_error("bad CSV row with " + std::to_string(fields.size()) +
                                     " fields");
        Sample s;
        s.t = parse_double(fields[0]);
        std::array<double, 6> z{};
        for (std::size_t i = 0; i < 6; ++i) z[i] = parse_double(fields[1 + i]);
        s.state = from_array(z);
        s.energy = parse_double(fields[7]);
        for (std::size_t i = 0; i < 6; ++i) s.charges[i] = parse_double(fields[8 + i]);
        traj.samples.push_back(s);
    }
    if (traj.samples.empty()) throw std::runtime_error("'" + csv_path + "' holds no samples");
    return traj;
}

}  // namespace keplergeo

#endif
