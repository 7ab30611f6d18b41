#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "experiment.hpp"
#include "trace.hpp"

namespace mqlswarm {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kTraceHeader = "tick,particle,x,y,state,action,reward,neighbor_count";
inline constexpr const char* kSnapshotHeader = "particle,x,y";

/// Nine significant digits, printf %g style.
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError(path.string() + ": write failed");
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace detail

inline void write_trace_csv(const Trace& trace, std::ostream& out) {
    out << kTraceHeader << '\n';
    for (const auto& r : trace) {
        out << r.tick << ',' << r.particle.value << ',' << format_real(r.position.x) << ','
            << format_real(r.position.y) << ',';
        if (r.state) out << to_string(*r.state);
        out << ',';
        if (r.action) out << *r.action;
        out << ',';
        if (r.reward) out << format_real(*r.reward);
        out << ',' << r.neighbor_count << '\n';
    }
}

inline void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    write_trace_csv(trace, out);
    detail::finish_write(out, path);
}

inline Trace read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader) {
        throw IoError("trace csv: missing or unexpected header");
    }
    Trace trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 8) {
            throw IoError("trace csv line " + std::to_string(line_no) + ": expected 8 fields");
        }
        try {
            TickRecord r;
            r.tick = std::stoull(f[0]);
            r.particle = ParticleId{std::stoull(f[1])};
            r.position = {std::stod(f[2]), std::stod(f[3])};
            if (!f[4].empty()) r.state = state_from_string(f[4]);
            if (!f[5].empty()) r.action = std::stoull(f[5]);
            if (!f[6].empty()) r.reward = std::stod(f[6]);
            r.neighbor_count = std::stoull(f[7]);
            trace.push_back(r);
        } catch (const std::exception& e) {
            throw IoError("trace csv line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return trace;
}

inline Trace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open for reading");
    return read_trace_csv(in);
}

inline void write_snapshot_csv(const Snapshot& snap, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    out << kSnapshotHeader << '\n';
    for (std::size_t i = 0; i < snap.positions.size(); ++i) {
        out << i << ',' << format_real(snap.positions[i].x) << ','
            << format_real(snap.positions[i].y) << '\n';
    }
    detail::finish_write(out, path);
}

inline void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    out << j.dump(2) << '\n';
    detail::finish_write(out, path);
}

inline void write_summary_json(const RunSummary& summary, const std::filesystem::path& path) {
    write_json(to_json(summary), path);
}

/// Per-tick swarm metrics: tick,connected_fraction,dispersion,components.
inline void write_metrics_csv(const Trace& trace, std::size_t m, std::size_t iterations,
                              double epsilon, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    out << "tick,connected_fraction,dispersion,components\n";
    std::vector<std::vector<Vec2>> per_tick(iterations, std::vector<Vec2>(m));
    for (const auto& r : trace) {
        if (r.tick < iterations && r.particle.value < m) {
            per_tick[r.tick][r.particle.value] = r.position;
        }
    }
    for (std::size_t t = 0; t < iterations; ++t) {
        out << t << ',' << format_real(connected_fraction(per_tick[t], epsilon)) << ','
            << format_real(dispersion(per_tick[t])) << ','
            << connectivity_components(per_tick[t], epsilon).size() << '\n';
    }
    detail::finish_write(out, path);
}

/// tick,particle,reward,decision for every observed particle.
inline void write_decisions_csv(const RunSummary& summary, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    out << "tick,particle,reward,decision\n";
    for (const auto& o : summary.observed) {
        for (std::size_t k = 0; k < o.ticks.size(); ++k) {
            out << o.ticks[k] << ',' << o.particle.value << ',' << format_real(o.rewards[k])
                << ',' << (o.decisions[k] == Decision::good ? "good" : "bad") << '\n';
        }
    }
    detail::finish_write(out, path);
}

/// Writes every artefact of a run into `dir`:
/// config.json, trace.csv, summary.json, snapshot_<tick>.csv, and when
/// enabled metrics.csv and decisions.csv.
inline std::vector<std::filesystem::path> write_run_outputs(const RunResult& result,
                                                            const std::filesystem::path& dir) {
    const SwarmConfig& cfg = result.summary.config;
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::filesystem::path& p) { written.push_back(p); };

    write_json(to_json(cfg), dir / "config.json");
    emit(dir / "config.json");
    write_trace_csv(result.trace, dir / "trace.csv");
    emit(dir / "trace.csv");
    write_summary_json(result.summary, dir / "summary.json");
    emit(dir / "summary.json");
    for (const auto& snap : result.snapshots) {
        const auto p = dir / ("snapshot_" + std::to_string(snap.tick) + ".csv");
        write_snapshot_csv(snap, p);
        emit(p);
    }
    if (cfg.metrics_csv) {
        write_metrics_csv(result.trace, cfg.swarm_size, cfg.iterations, cfg.mql.epsilon,
                          dir / "metrics.csv");
        emit(dir / "metrics.csv");
    }
    if (!result.summary.observed.empty()) {
        write_decisions_csv(result.summary, dir / "decisions.csv");
        emit(dir / "decisions.csv");
    }
    return written;
}

}  // namespace mqlswarm
