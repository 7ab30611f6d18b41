#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace mqlswarm {

template <class R>
concept UnitSource = requires(R r) {
    { r.uniform01() } -> std::convertible_to<double>;
};

struct PsoParams {
    double c1 = 2.0;
    double c2 = 2.0;
    double inertia_w0 = 0.9;
    double inertia_decrement = 0.99;
    double constriction = 1.0;
    double v_min = -2.0;
    double v_max = 2.0;
    // false: v(t+1) = constriction * w_t * dv, exactly as printed.
    // true:  v(t+1) = constriction * (w_t * v(t) + dv).
    bool canonical_velocity = false;
    WorldBounds bounds{};

    friend bool operator==(const PsoParams&, const PsoParams&) = default;

    void validate() const {
        auto check = [](bool ok, const char* key, const char* what) {
            if (!ok) throw std::invalid_argument(std::string("pso.") + key + ": " + what);
        };
        check(std::isfinite(c1) && c1 >= 0.0, "c1", "must be finite and >= 0");
        check(std::isfinite(c2) && c2 >= 0.0, "c2", "must be finite and >= 0");
        check(inertia_w0 > 0.0 && inertia_w0 <= 1.0, "inertia_w0", "must lie in (0, 1]");
        check(inertia_decrement > 0.0 && inertia_decrement <= 1.0, "inertia_decrement",
              "must lie in (0, 1]");
        check(constriction > 0.0 && constriction <= 1.0, "constriction", "must lie in (0, 1]");
        check(std::isfinite(v_min) && std::isfinite(v_max) && v_min < v_max, "v_min",
              "must be finite and below v_max");
        bounds.validate("pso.bounds");
    }
};

enum class ObjectiveKind { target, sphere, rastrigin };

inline std::string_view to_string(ObjectiveKind k) {
    switch (k) {
        case ObjectiveKind::target: return "target";
        case ObjectiveKind::sphere: return "sphere";
        case ObjectiveKind::rastrigin: return "rastrigin";
    }
    return "target";
}

inline ObjectiveKind objective_kind_from_string(std::string_view s) {
    if (s == "target") return ObjectiveKind::target;
    if (s == "sphere") return ObjectiveKind::sphere;
    if (s == "rastrigin") return ObjectiveKind::rastrigin;
    throw std::invalid_argument("unknown objective kind '" + std::string(s) +
                                "' (expected target, sphere or rastrigin)");
}

/// Cost to minimise. All kinds have their optimum, value 0, at `target`.
struct Objective {
    ObjectiveKind kind = ObjectiveKind::target;
    Vec2 target{50.0, 50.0};

    friend bool operator==(const Objective&, const Objective&) = default;
};

inline double evaluate_fitness(const Vec2& x, const Objective& obj) {
    switch (obj.kind) {
        case ObjectiveKind::target:
            return euclidean_distance(x, obj.target);
        case ObjectiveKind::sphere: {
            const Vec2 d = x - obj.target;
            return d.x * d.x + d.y * d.y;
        }
        case ObjectiveKind::rastrigin: {
            const Vec2 d = x - obj.target;
            constexpr double two_pi = 2.0 * std::numbers::pi;
            return 20.0 + d.x * d.x - 10.0 * std::cos(two_pi * d.x) + d.y * d.y -
                   10.0 * std::cos(two_pi * d.y);
        }
    }
    return 0.0;
}

struct PsoParticle {
    Vec2 position;
    Vec2 velocity;
    Vec2 personal_best;
    double personal_best_fitness = 0.0;
};

struct PsoSwarm {
    std::vector<PsoParticle> particles;
    ParticleId global_best_id{0};
    Vec2 global_best;
    double global_best_fitness = 0.0;
    // Ticks elapsed; the inertia weight is inertia_w0 * decrement^tick.
    std::size_t tick = 0;
    double inertia = 0.0;
};

inline double sample_range(double lo, double hi, double u) { return lo + (hi - lo) * u; }

inline std::pair<ParticleId, Vec2> select_global_best(const std::vector<PsoParticle>& swarm) {
    if (swarm.empty()) {
        throw std::invalid_argument("select_global_best: empty swarm");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < swarm.size(); ++i) {
        if (swarm[i].personal_best_fitness < swarm[best].personal_best_fitness) best = i;
    }
    return {ParticleId{best}, swarm[best].personal_best};
}

inline void refresh_global_best(PsoSwarm& swarm) {
    const auto [id, pos] = select_global_best(swarm.particles);
    swarm.global_best_id = id;
    swarm.global_best = pos;
    swarm.global_best_fitness = swarm.particles[id.value].personal_best_fitness;
}

/// Positions are drawn from `spawn` and velocities from [v_min, v_max], one
/// uniform per component in the order x, y, vx, vy for each particle.
template <UnitSource Rng>
PsoSwarm pso_init(std::size_t m, const PsoParams& p, const WorldBounds& spawn,
                  const Objective& obj, Rng& rng) {
    if (m == 0) {
        throw std::invalid_argument("pso_init: swarm size must be at least 1");
    }
    spawn.validate("spawn", true);
    PsoSwarm swarm;
    swarm.particles.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        PsoParticle part;
        part.position.x = sample_range(spawn.x_min, spawn.x_max, rng.uniform01());
        part.position.y = sample_range(spawn.y_min, spawn.y_max, rng.uniform01());
        part.velocity.x = sample_range(p.v_min, p.v_max, rng.uniform01());
        part.velocity.y = sample_range(p.v_min, p.v_max, rng.uniform01());
        part.personal_best = part.position;
        part.personal_best_fitness = evaluate_fitness(part.position, obj);
        swarm.particles.push_back(part);
    }
    swarm.inertia = p.inertia_w0;
    refresh_global_best(swarm);
    return swarm;
}

/// Replaces the personal best only on strict improvement.
inline PsoParticle update_personal_best(PsoParticle p, const Objective& obj) {
    const double current = evaluate_fitness(p.position, obj);
    if (current < p.personal_best_fitness) {
        p.personal_best = p.position;
        p.personal_best_fitness = current;
    }
    return p;
}

/// Velocity with explicit r1, r2; the stochastic overload draws them.
inline Vec2 velocity_update(const PsoParticle& p, const Vec2& g, double w_t,
                            const PsoParams& params, double r1, double r2) {
    const Vec2 dv = params.c1 * r1 * (p.personal_best - p.position) +
                    params.c2 * r2 * (g - p.position);
    Vec2 v = params.canonical_velocity ? params.constriction * (w_t * p.velocity + dv)
                                       : params.constriction * w_t * dv;
    v.x = std::clamp(v.x, params.v_min, params.v_max);
    v.y = std::clamp(v.y, params.v_min, params.v_max);
    return v;
}

template <UnitSource Rng>
Vec2 velocity_update(const PsoParticle& p, const Vec2& g, double w_t, const PsoParams& params,
                     Rng& rng) {
    const double r1 = rng.uniform01();
    const double r2 = rng.uniform01();
    return velocity_update(p, g, w_t, params, r1, r2);
}

inline double inertia_at(const PsoParams& p, std::size_t tick) {
    return p.inertia_w0 * std::pow(p.inertia_decrement, static_cast<double>(tick));
}

/// One synchronous PSO iteration. Every particle steers by the global best
/// from the start of the tick; the global best and inertia are refreshed
/// afterwards.
template <UnitSource Rng>
void pso_step(PsoSwarm& swarm, const Objective& obj, const PsoParams& params, Rng& rng) {
    const Vec2 g = swarm.global_best;
    for (auto& part : swarm.particles) {
        part.velocity = velocity_update(part, g, swarm.inertia, params, rng);
        part.position = clamp_to_world(part.position + part.velocity, params.bounds);
        part = update_personal_best(part, obj);
    }
    refresh_global_best(swarm);
    ++swarm.tick;
    swarm.inertia = inertia_at(params, swarm.tick);
}

inline std::vector<Vec2> positions_of(const PsoSwarm& swarm) {
    std::vector<Vec2> out;
    out.reserve(swarm.particles.size());
    for (const auto& p : swarm.particles) out.push_back(p.position);
    return out;
}

}  // namespace mqlswarm
