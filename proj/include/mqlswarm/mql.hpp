#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "qlearning.hpp"
#include "random.hpp"
#include "trace.hpp"

namespace mqlswarm {

enum class Axis { horizontal, vertical };

enum class Schedule { simultaneous, round_robin };

inline std::string_view to_string(Schedule s) {
    return s == Schedule::simultaneous ? "simultaneous" : "round_robin";
}

inline Schedule schedule_from_string(std::string_view s) {
    if (s == "simultaneous") return Schedule::simultaneous;
    if (s == "round_robin") return Schedule::round_robin;
    throw std::invalid_argument("unknown schedule '" + std::string(s) +
                                "' (expected simultaneous or round_robin)");
}

/// Short, mid and long step magnitudes.
using StepSet = std::array<double, 3>;

/// {horizontal, vertical} x {+1, -1} x {short, mid, long}.
inline constexpr std::size_t kNumActions = 12;

struct ActionSpec {
    Axis axis = Axis::horizontal;
    int direction = 1;
    double magnitude = 0.0;

    friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

/// Action ids are laid out as axis * 6 + (direction < 0) * 3 + step index.
inline ActionSpec action_spec(ActionId a, const StepSet& steps) {
    if (a >= kNumActions) {
        throw std::out_of_range("action " + std::to_string(a) + " out of range");
    }
    return {a < 6 ? Axis::horizontal : Axis::vertical, (a % 6) < 3 ? 1 : -1, steps[a % 3]};
}

inline ActionId action_id(Axis axis, int direction, std::size_t step_index) {
    return (axis == Axis::horizontal ? 0 : 6) + (direction > 0 ? 0 : 3) + step_index;
}

struct MqlParams {
    double epsilon = 10.0;  // sensing / connection radius
    double d_min = 2.0;     // overlap floor
    double tau_r = 0.02;    // relative tolerance for the full reward
    double tau_s = 0.05;    // relative tolerance for the IDEAL state
    double reward_max = 100.0;
    StepSet step_set{0.5, 1.0, 2.0};
    LearningParams learning{};
    double exploration = 0.0;  // epsilon-greedy rate; 0 is pure greedy
    Schedule schedule = Schedule::simultaneous;
    bool homing = false;

    friend bool operator==(const MqlParams&, const MqlParams&) = default;

    void validate() const {
        auto check = [](bool ok, const char* key, const std::string& what) {
            if (!ok) throw std::invalid_argument(std::string("mql.") + key + ": " + what);
        };
        check(std::isfinite(epsilon) && epsilon > 0.0, "epsilon", "must be positive");
        check(std::isfinite(d_min) && d_min > 0.0 && d_min < epsilon, "d_min",
              "must satisfy 0 < d_min < epsilon (" + std::to_string(epsilon) + ")");
        check(tau_r > 0.0 && tau_r < 1.0, "tau_r", "must lie in (0, 1)");
        check(tau_s > 0.0 && tau_s < 1.0, "tau_s", "must lie in (0, 1)");
        check(std::isfinite(reward_max) && reward_max > 0.0, "reward_max", "must be positive");
        check(std::isfinite(step_set[0]) && std::isfinite(step_set[2]) && step_set[0] > 0.0 &&
                  step_set[0] < step_set[1] && step_set[1] < step_set[2],
              "step_set", "needs three positive, strictly increasing magnitudes");
        check(exploration >= 0.0 && exploration <= 1.0, "exploration", "must lie in [0, 1]");
        try {
            learning.validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string("mql.") + e.what());
        }
    }
};

struct MqlParticle {
    Vec2 position;
    QTable qtable{kNumStates, kNumActions};
    StateId last_state = StateId::disconnected;
    std::optional<ActionId> last_action;
    double cumulative_reward = 0.0;
};

struct MqlSwarm {
    std::vector<MqlParticle> particles;
};

inline std::vector<Vec2> positions_of(const MqlSwarm& swarm) {
    std::vector<Vec2> out;
    out.reserve(swarm.particles.size());
    for (const auto& p : swarm.particles) out.push_back(p.position);
    return out;
}

inline void check_particle(ParticleId i, std::span<const Vec2> positions) {
    if (i.value >= positions.size()) {
        throw std::out_of_range("particle " + std::to_string(i.value) + " not in swarm of " +
                                std::to_string(positions.size()));
    }
}

/// Peers strictly closer than epsilon, ascending by id. Never contains i.
inline std::vector<ParticleId> neighborhood(ParticleId i, std::span<const Vec2> positions,
                                            double epsilon) {
    check_particle(i, positions);
    std::vector<ParticleId> out;
    for (std::size_t k = 0; k < positions.size(); ++k) {
        if (k == i.value) continue;
        if (euclidean_distance(positions[i.value], positions[k]) < epsilon) {
            out.emplace_back(k);
        }
    }
    return out;
}

/// Sum of neighbour distances minus count * epsilon.
struct Deviation {
    std::size_t neighbors = 0;
    std::optional<double> value;  // empty when there are no neighbours
    double min_distance = std::numeric_limits<double>::infinity();
};

inline Deviation distance_deviation(ParticleId i, std::span<const Vec2> positions,
                                    double epsilon) {
    check_particle(i, positions);
    Deviation dev;
    double sum = 0.0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
        if (k == i.value) continue;
        const double d = euclidean_distance(positions[i.value], positions[k]);
        if (d < epsilon) {
            ++dev.neighbors;
            sum += d;
            if (d < dev.min_distance) dev.min_distance = d;
        }
    }
    if (dev.neighbors > 0) {
        dev.value = sum - static_cast<double>(dev.neighbors) * epsilon;
    }
    return dev;
}

inline StateId encode_state(const Deviation& dev, const MqlParams& params) {
    if (dev.neighbors == 0) return StateId::disconnected;
    if (dev.min_distance < params.d_min) return StateId::too_close;
    const double rho = *dev.value / (static_cast<double>(dev.neighbors) * params.epsilon);
    if (std::abs(rho) <= params.tau_s) return StateId::ideal;
    return rho < 0.0 ? StateId::near : StateId::far;
}

inline StateId encode_state(ParticleId i, std::span<const Vec2> positions,
                            const MqlParams& params) {
    return encode_state(distance_deviation(i, positions, params.epsilon), params);
}

/// Step scale in [0, 1]: 1 while disconnected, otherwise the deviation
/// magnitude normalised by count * epsilon.
inline double step_scale_pi(const Deviation& dev, const MqlParams& params) {
    if (dev.neighbors == 0) return 1.0;
    const double scale =
        std::abs(*dev.value) / (static_cast<double>(dev.neighbors) * params.epsilon);
    return std::min(1.0, scale);
}

inline double step_scale_pi(ParticleId i, std::span<const Vec2> positions,
                            const MqlParams& params) {
    return step_scale_pi(distance_deviation(i, positions, params.epsilon), params);
}

inline Vec2 apply_action(const Vec2& pos, const ActionSpec& a, double pi,
                         const WorldBounds& world) {
    if (!(pi >= 0.0 && pi <= 1.0)) {
        throw std::invalid_argument("apply_action: step scale must lie in [0, 1]");
    }
    const double shift = pi * a.magnitude * static_cast<double>(a.direction);
    Vec2 next = pos;
    if (a.axis == Axis::horizontal) {
        next.x += shift;
    } else {
        next.y += shift;
    }
    return clamp_to_world(next, world);
}

inline double reward(const Deviation& dev, const MqlParams& params) {
    if (dev.neighbors == 0) return -params.reward_max;
    if (dev.min_distance < params.d_min) return -params.reward_max;
    const double magnitude = std::abs(*dev.value);
    if (magnitude <= params.tau_r * static_cast<double>(dev.neighbors) * params.epsilon) {
        return params.reward_max;
    }
    return -std::min(magnitude, params.reward_max);
}

/// Reward for particle i evaluated on post-move positions.
inline double reward(ParticleId i, std::span<const Vec2> positions, const MqlParams& params) {
    return reward(distance_deviation(i, positions, params.epsilon), params);
}

/// Positions drawn uniformly from `spawn`, x then y per particle.
inline MqlSwarm mql_init(std::size_t m, const WorldBounds& spawn, RandomStream& rng) {
    if (m == 0) {
        throw std::invalid_argument("mql_init: swarm size must be at least 1");
    }
    spawn.validate("spawn", true);
    MqlSwarm swarm;
    swarm.particles.resize(m);
    for (auto& p : swarm.particles) {
        p.position.x = spawn.x_min + (spawn.x_max - spawn.x_min) * rng.uniform01();
        p.position.y = spawn.y_min + (spawn.y_max - spawn.y_min) * rng.uniform01();
    }
    return swarm;
}

namespace detail {

inline ActionId choose_action(const QTable& q, StateId s, const MqlParams& params,
                              RandomStream& rng) {
    if (params.exploration > 0.0 && rng.bernoulli(params.exploration)) {
        return rng.uniform_index(kNumActions);
    }
    return greedy_action(q, index_of(s), rng);
}

// Points the chosen axis towards the nearest peer. Only used when homing is
// switched on and the particle has no neighbours.
inline ActionSpec home_towards_nearest(ActionSpec a, ParticleId i,
                                       std::span<const Vec2> positions) {
    double best = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> nearest;
    for (std::size_t k = 0; k < positions.size(); ++k) {
        if (k == i.value) continue;
        const double d = euclidean_distance(positions[i.value], positions[k]);
        if (d < best) {
            best = d;
            nearest = k;
        }
    }
    if (!nearest) return a;
    const Vec2 delta = positions[*nearest] - positions[i.value];
    const double along = a.axis == Axis::horizontal ? delta.x : delta.y;
    if (along != 0.0) a.direction = along > 0.0 ? 1 : -1;
    return a;
}

inline Vec2 decide_move(MqlParticle& p, ParticleId i, std::span<const Vec2> positions,
                        const MqlParams& params, const WorldBounds& world, RandomStream& rng) {
    const Deviation dev = distance_deviation(i, positions, params.epsilon);
    const StateId s = encode_state(dev, params);
    const ActionId a = choose_action(p.qtable, s, params, rng);
    ActionSpec spec = action_spec(a, params.step_set);
    if (params.homing && s == StateId::disconnected) {
        spec = home_towards_nearest(spec, i, positions);
    }
    p.last_state = s;
    p.last_action = a;
    return apply_action(positions[i.value], spec, step_scale_pi(dev, params), world);
}

inline TickRecord learn_from_move(MqlParticle& p, ParticleId i, std::span<const Vec2> positions,
                                  const MqlParams& params, std::size_t tick) {
    const Deviation dev = distance_deviation(i, positions, params.epsilon);
    const double r = reward(dev, params);
    const StateId next = encode_state(dev, params);
    q_update(p.qtable, index_of(p.last_state), *p.last_action, r, index_of(next),
             params.learning);
    p.cumulative_reward += r;
    return {tick, i, p.position, p.last_state, p.last_action, r, dev.neighbors};
}

}  // namespace detail

/// Advances the swarm by one tick and returns one record per particle.
///
/// Simultaneous: every particle observes the tick-start snapshot, all
/// decisions are drawn in index order, then all move at once. Round robin:
/// only particle (tick mod M) acts; the others are logged without an action.
inline std::vector<TickRecord> mql_tick(MqlSwarm& swarm, const MqlParams& params,
                                        const WorldBounds& world, RandomStream& rng,
                                        std::size_t tick) {
    const std::size_t m = swarm.particles.size();
    std::vector<TickRecord> records;
    records.reserve(m);
    const std::vector<Vec2> before = positions_of(swarm);

    if (params.schedule == Schedule::simultaneous) {
        std::vector<Vec2> after(m);
        for (std::size_t i = 0; i < m; ++i) {
            after[i] =
                detail::decide_move(swarm.particles[i], ParticleId{i}, before, params, world, rng);
        }
        for (std::size_t i = 0; i < m; ++i) swarm.particles[i].position = after[i];
        for (std::size_t i = 0; i < m; ++i) {
            records.push_back(
                detail::learn_from_move(swarm.particles[i], ParticleId{i}, after, params, tick));
        }
        return records;
    }

    const std::size_t mover = tick % m;
    std::vector<Vec2> after = before;
    after[mover] =
        detail::decide_move(swarm.particles[mover], ParticleId{mover}, before, params, world, rng);
    swarm.particles[mover].position = after[mover];
    for (std::size_t i = 0; i < m; ++i) {
        if (i == mover) {
            records.push_back(
                detail::learn_from_move(swarm.particles[i], ParticleId{i}, after, params, tick));
            continue;
        }
        const Deviation dev = distance_deviation(ParticleId{i}, after, params.epsilon);
        TickRecord rec;
        rec.tick = tick;
        rec.particle = ParticleId{i};
        rec.position = after[i];
        rec.state = encode_state(dev, params);
        rec.neighbor_count = dev.neighbors;
        records.push_back(rec);
    }
    return records;
}

}  // namespace mqlswarm
