#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "metrics.hpp"
#include "mql.hpp"
#include "pso.hpp"
#include "random.hpp"
#include "trace.hpp"

namespace mqlswarm {

/// Full swarm positions after `tick` ticks (tick 0 is the initial layout).
struct Snapshot {
    std::size_t tick = 0;
    std::vector<Vec2> positions;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct SnapshotMetrics {
    std::size_t tick = 0;
    std::vector<std::size_t> components;
    double connected_fraction = 0.0;
    double dispersion = 0.0;
};

struct DecisionSeries {
    ParticleId particle{};
    std::vector<std::size_t> ticks;
    std::vector<double> rewards;
    std::vector<Decision> decisions;
};

struct RunSummary {
    SwarmConfig config;
    std::vector<double> cumulative_rewards;
    double initial_dispersion = 0.0;
    double final_connected_fraction = 0.0;
    double final_dispersion = 0.0;
    double final_overlap_pair_fraction = 0.0;
    std::vector<std::size_t> final_components;
    std::vector<SnapshotMetrics> snapshots;
    std::vector<std::optional<std::size_t>> drift_onsets;
    std::vector<DecisionSeries> observed;
    // Row-major final Q-tables, one per particle; empty for PSO runs.
    std::vector<std::vector<double>> q_tables;
};

struct RunResult {
    Trace trace;
    std::vector<Snapshot> snapshots;
    std::vector<Vec2> initial_positions;
    RunSummary summary;
};

/// Positions of all particles at the end of `tick` (0-based), taken from
/// the trace.
inline std::vector<Vec2> positions_at(const Trace& trace, std::size_t tick, std::size_t m) {
    std::vector<Vec2> out(m);
    for (const auto& r : trace) {
        if (r.tick == tick && r.particle.value < m) out[r.particle.value] = r.position;
    }
    return out;
}

/// Computes the summary from the trace, the initial layout and the final
/// Q-tables. Everything here is recomputable by replaying the config.
inline RunSummary summarize(const SwarmConfig& cfg, const Trace& trace,
                            const std::vector<Vec2>& initial,
                            const std::vector<Snapshot>& snapshots,
                            std::vector<std::vector<double>> q_tables) {
    RunSummary s;
    s.config = cfg;
    const std::size_t m = cfg.swarm_size;
    const double eps = cfg.mql.epsilon;
    const auto final_positions = positions_at(trace, cfg.iterations - 1, m);

    s.initial_dispersion = dispersion(initial);
    s.final_connected_fraction = connected_fraction(final_positions, eps);
    s.final_dispersion = dispersion(final_positions);
    s.final_overlap_pair_fraction = overlap_pair_fraction(final_positions, cfg.mql.d_min);
    s.final_components = connectivity_components(final_positions, eps);
    for (const auto& snap : snapshots) {
        s.snapshots.push_back({snap.tick, connectivity_components(snap.positions, eps),
                               connected_fraction(snap.positions, eps),
                               dispersion(snap.positions)});
    }
    for (std::size_t i = 0; i < m; ++i) {
        s.cumulative_rewards.push_back(cumulative_reward(trace, ParticleId{i}));
        s.drift_onsets.push_back(drift_onset(trace, ParticleId{i}));
    }
    for (auto p : cfg.observe_particles) {
        DecisionSeries series;
        series.particle = ParticleId{p};
        for (const auto& r : records_for(trace, ParticleId{p})) {
            if (!r.reward) continue;
            series.ticks.push_back(r.tick);
            series.rewards.push_back(*r.reward);
            series.decisions.push_back(*r.reward > 0.0 ? Decision::good : Decision::bad);
        }
        s.observed.push_back(std::move(series));
    }
    s.q_tables = std::move(q_tables);
    return s;
}

/// Runs one seeded experiment. Random draws happen in a fixed order:
/// initial layout first, then per tick in particle-index order.
inline RunResult run_experiment(const SwarmConfig& cfg) {
    cfg.validate();
    RandomStream rng(cfg.seed);
    RunResult result;
    result.trace.reserve(cfg.swarm_size * cfg.iterations);

    std::vector<std::size_t> wanted = cfg.snapshot_ticks;
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    auto take_snapshot = [&](std::size_t tick, const std::vector<Vec2>& positions) {
        if (std::binary_search(wanted.begin(), wanted.end(), tick)) {
            result.snapshots.push_back({tick, positions});
        }
    };

    std::vector<std::vector<double>> q_tables;
    if (cfg.algorithm == Algorithm::mql) {
        MqlSwarm swarm = mql_init(cfg.swarm_size, cfg.spawn, rng);
        result.initial_positions = positions_of(swarm);
        take_snapshot(0, result.initial_positions);
        for (std::size_t t = 0; t < cfg.iterations; ++t) {
            auto rows = mql_tick(swarm, cfg.mql, cfg.world, rng, t);
            result.trace.insert(result.trace.end(), rows.begin(), rows.end());
            take_snapshot(t + 1, positions_of(swarm));
        }
        for (const auto& p : swarm.particles) q_tables.push_back(p.qtable.values());
    } else {
        PsoSwarm swarm = pso_init(cfg.swarm_size, cfg.pso, cfg.spawn, cfg.objective, rng);
        result.initial_positions = positions_of(swarm);
        take_snapshot(0, result.initial_positions);
        for (std::size_t t = 0; t < cfg.iterations; ++t) {
            pso_step(swarm, cfg.objective, cfg.pso, rng);
            const auto positions = positions_of(swarm);
            for (std::size_t i = 0; i < positions.size(); ++i) {
                TickRecord rec;
                rec.tick = t;
                rec.particle = ParticleId{i};
                rec.position = positions[i];
                rec.neighbor_count = neighbor_count(i, positions, cfg.mql.epsilon);
                result.trace.push_back(rec);
            }
            take_snapshot(t + 1, positions);
        }
    }
    result.summary = summarize(cfg, result.trace, result.initial_positions, result.snapshots,
                               std::move(q_tables));
    return result;
}

inline nlohmann::json to_json(const RunSummary& s) {
    using nlohmann::json;
    json j;
    j["config"] = to_json(s.config);
    j["defaults_note"] =
        "world size, epsilon, d_min, step set, swarm size, learning and PSO coefficients are "
        "this project's chosen defaults, not values taken from an external source";
    j["cumulative_rewards"] = s.cumulative_rewards;
    j["initial_dispersion"] = s.initial_dispersion;
    j["final"] = {{"connected_fraction", s.final_connected_fraction},
                  {"dispersion", s.final_dispersion},
                  {"overlap_pair_fraction", s.final_overlap_pair_fraction},
                  {"components", s.final_components}};
    json snaps = json::array();
    for (const auto& sm : s.snapshots) {
        snaps.push_back({{"tick", sm.tick},
                         {"components", sm.components},
                         {"connected_fraction", sm.connected_fraction},
                         {"dispersion", sm.dispersion}});
    }
    j["snapshots"] = snaps;
    json drift = json::array();
    for (const auto& d : s.drift_onsets) drift.push_back(d ? json(*d) : json(nullptr));
    j["drift_onsets"] = drift;
    json observed = json::array();
    for (const auto& o : s.observed) {
        std::size_t good = 0;
        std::string pattern;
        for (auto d : o.decisions) {
            good += d == Decision::good ? 1 : 0;
            pattern += d == Decision::good ? 'G' : 'B';
        }
        observed.push_back({{"particle", o.particle.value},
                            {"good", good},
                            {"bad", o.decisions.size() - good},
                            {"decisions", pattern}});
    }
    j["observed"] = observed;
    j["q_tables"] = s.q_tables.empty() ? json(nullptr) : json(s.q_tables);
    return j;
}

}  // namespace mqlswarm
