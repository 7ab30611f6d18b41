#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "core.hpp"
#include "mql.hpp"
#include "pso.hpp"

namespace mqlswarm {

enum class Algorithm { mql, pso };

inline std::string_view to_string(Algorithm a) { return a == Algorithm::mql ? "mql" : "pso"; }

inline Algorithm algorithm_from_string(std::string_view s) {
    if (s == "mql") return Algorithm::mql;
    if (s == "pso") return Algorithm::pso;
    throw std::invalid_argument("unknown algorithm '" + std::string(s) +
                                "' (expected mql or pso)");
}

/// Configuration error; the message starts with the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything that determines a run. Two configs that compare equal produce
/// identical traces.
struct SwarmConfig {
    Algorithm algorithm = Algorithm::mql;
    std::size_t swarm_size = 20;
    std::size_t iterations = 500;
    std::uint64_t seed = 1;
    WorldBounds world{};
    // Initial positions are drawn uniformly from this region.
    WorldBounds spawn{35.0, 65.0, 35.0, 65.0};
    std::vector<std::size_t> snapshot_ticks;
    std::vector<std::size_t> observe_particles;
    std::string output_dir = "out";
    bool metrics_csv = true;
    MqlParams mql{};
    PsoParams pso{};
    Objective objective{};

    friend bool operator==(const SwarmConfig&, const SwarmConfig&) = default;

    /// Throws ConfigError naming the first violated key.
    void validate() const {
        auto fail = [](const std::string& key, const std::string& what) {
            throw ConfigError(key + ": " + what);
        };
        if (swarm_size < 1) fail("swarm_size", "must be at least 1");
        if (iterations < 1) fail("iterations", "must be at least 1");
        try {
            world.validate("world");
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        try {
            spawn.validate("spawn", true);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (!world.contains({spawn.x_min, spawn.y_min}) ||
            !world.contains({spawn.x_max, spawn.y_max})) {
            fail("spawn", "must lie inside world");
        }
        for (auto t : snapshot_ticks) {
            if (t > iterations) {
                fail("snapshot_ticks", "tick " + std::to_string(t) + " exceeds iterations (" +
                                           std::to_string(iterations) + ")");
            }
        }
        for (auto p : observe_particles) {
            if (p >= swarm_size) {
                fail("observe_particles", "particle " + std::to_string(p) +
                                              " is not below swarm_size (" +
                                              std::to_string(swarm_size) + ")");
            }
        }
        if (!(std::isfinite(objective.target.x) && std::isfinite(objective.target.y))) {
            fail("pso.objective.target", "must be finite");
        }
        if (pso.bounds != world) fail("pso.bounds", "must equal world");
        try {
            mql.validate();
            pso.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
};

namespace detail {

using nlohmann::json;

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) {
            throw ConfigError(display(path_) + ": expected an object");
        }
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    template <class T>
    void get(const std::string& key, T& out) {
        if (!obj_.contains(key)) return;
        seen_.insert(key);
        try {
            out = obj_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(qualify(key) + ": wrong type (got " +
                              std::string(obj_.at(key).type_name()) + ")");
        }
    }

    template <class T, class Parse>
    void get_enum(const std::string& key, T& out, Parse parse) {
        std::string text;
        get(key, text);
        if (!obj_.contains(key)) return;
        try {
            out = parse(text);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(qualify(key) + ": " + e.what());
        }
    }

    ObjectReader child(const std::string& key) {
        seen_.insert(key);
        return ObjectReader(obj_.at(key), qualify(key));
    }

    void finish() const {
        for (const auto& item : obj_.items()) {
            if (!seen_.contains(item.key())) {
                throw ConfigError(qualify(item.key()) + ": unknown key");
            }
        }
    }

    std::string qualify(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    static std::string display(const std::string& p) { return p.empty() ? "<root>" : p; }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

inline void read_bounds(ObjectReader& parent, const std::string& key, WorldBounds& b) {
    if (!parent.has(key)) return;
    auto r = parent.child(key);
    r.get("x_min", b.x_min);
    r.get("x_max", b.x_max);
    r.get("y_min", b.y_min);
    r.get("y_max", b.y_max);
    r.finish();
}

inline json bounds_json(const WorldBounds& b) {
    return {{"x_min", b.x_min}, {"x_max", b.x_max}, {"y_min", b.y_min}, {"y_max", b.y_max}};
}

}  // namespace detail

/// Builds a config from parsed JSON. Missing keys keep their defaults;
/// unknown keys and invariant violations raise ConfigError.
inline SwarmConfig config_from_json(const nlohmann::json& doc) {
    SwarmConfig cfg;
    detail::ObjectReader root(doc, "");
    root.get_enum("algorithm", cfg.algorithm, algorithm_from_string);
    root.get("swarm_size", cfg.swarm_size);
    root.get("iterations", cfg.iterations);
    root.get("seed", cfg.seed);
    detail::read_bounds(root, "world", cfg.world);
    if (!root.has("spawn")) {
        // Default spawn is the central 30% square of whatever world was given.
        const Vec2 c = cfg.world.center();
        const double hw = 0.15 * cfg.world.width();
        const double hh = 0.15 * cfg.world.height();
        cfg.spawn = {c.x - hw, c.x + hw, c.y - hh, c.y + hh};
    }
    detail::read_bounds(root, "spawn", cfg.spawn);
    root.get("snapshot_ticks", cfg.snapshot_ticks);
    root.get("observe_particles", cfg.observe_particles);
    root.get("output_dir", cfg.output_dir);
    root.get("metrics_csv", cfg.metrics_csv);

    if (root.has("mql")) {
        auto r = root.child("mql");
        r.get("epsilon", cfg.mql.epsilon);
        cfg.mql.d_min = 0.2 * cfg.mql.epsilon;
        r.get("d_min", cfg.mql.d_min);
        r.get("tau_r", cfg.mql.tau_r);
        r.get("tau_s", cfg.mql.tau_s);
        r.get("reward_max", cfg.mql.reward_max);
        r.get("step_set", cfg.mql.step_set);
        r.get("learning_rate", cfg.mql.learning.learning_rate);
        r.get("discount", cfg.mql.learning.discount);
        r.get("exploration", cfg.mql.exploration);
        r.get_enum("schedule", cfg.mql.schedule, schedule_from_string);
        r.get("homing", cfg.mql.homing);
        r.finish();
    }

    if (root.has("pso")) {
        auto r = root.child("pso");
        r.get("c1", cfg.pso.c1);
        r.get("c2", cfg.pso.c2);
        r.get("inertia_w0", cfg.pso.inertia_w0);
        r.get("inertia_decrement", cfg.pso.inertia_decrement);
        r.get("constriction", cfg.pso.constriction);
        r.get("v_min", cfg.pso.v_min);
        r.get("v_max", cfg.pso.v_max);
        r.get("canonical_velocity", cfg.pso.canonical_velocity);
        if (!r.has("objective")) {
            cfg.objective.target = cfg.world.center();
        } else {
            auto o = r.child("objective");
            o.get_enum("kind", cfg.objective.kind, objective_kind_from_string);
            cfg.objective.target = cfg.world.center();
            if (o.has("target")) {
                std::array<double, 2> t{};
                o.get("target", t);
                cfg.objective.target = {t[0], t[1]};
            }
            o.finish();
        }
        r.finish();
    } else {
        cfg.objective.target = cfg.world.center();
    }
    root.finish();

    cfg.pso.bounds = cfg.world;
    cfg.validate();
    return cfg;
}

inline SwarmConfig parse_config(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    return config_from_json(doc);
}

inline SwarmConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open config file");
    }
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_config(text);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

/// Full effective config; config_from_json(to_json(c)) == c.
inline nlohmann::json to_json(const SwarmConfig& c) {
    using detail::bounds_json;
    nlohmann::json j;
    j["algorithm"] = std::string(to_string(c.algorithm));
    j["swarm_size"] = c.swarm_size;
    j["iterations"] = c.iterations;
    j["seed"] = c.seed;
    j["world"] = bounds_json(c.world);
    j["spawn"] = bounds_json(c.spawn);
    j["snapshot_ticks"] = c.snapshot_ticks;
    j["observe_particles"] = c.observe_particles;
    j["output_dir"] = c.output_dir;
    j["metrics_csv"] = c.metrics_csv;
    j["mql"] = {
        {"epsilon", c.mql.epsilon},
        {"d_min", c.mql.d_min},
        {"tau_r", c.mql.tau_r},
        {"tau_s", c.mql.tau_s},
        {"reward_max", c.mql.reward_max},
        {"step_set", c.mql.step_set},
        {"learning_rate", c.mql.learning.learning_rate},
        {"discount", c.mql.learning.discount},
        {"exploration", c.mql.exploration},
        {"schedule", std::string(to_string(c.mql.schedule))},
        {"homing", c.mql.homing},
    };
    j["pso"] = {
        {"c1", c.pso.c1},
        {"c2", c.pso.c2},
        {"inertia_w0", c.pso.inertia_w0},
        {"inertia_decrement", c.pso.inertia_decrement},
        {"constriction", c.pso.constriction},
        {"v_min", c.pso.v_min},
        {"v_max", c.pso.v_max},
        {"canonical_velocity", c.pso.canonical_velocity},
        {"objective",
         {{"kind", std::string(to_string(c.objective.kind))},
          {"target", std::array<double, 2>{c.objective.target.x, c.objective.target.y}}}},
    };
    return j;
}

inline constexpr std::array<std::string_view, 2> kPresetNames = {"fig3-compare",
                                                                "fig4-individuals"};

/// Named experiment presets.
///
/// fig3-compare: an M-QL and a PSO config that differ only in `algorithm`,
/// 20 particles, 500 ticks, snapshots at 10, 50 and 500.
/// fig4-individuals: one M-QL config, 100 ticks, decision series for
/// particles 0, 1 and 2.
inline std::vector<SwarmConfig> preset(std::string_view name, std::uint64_t seed = 1) {
    SwarmConfig base;
    base.seed = seed;
    base.objective.target = base.world.center();
    base.pso.bounds = base.world;
    if (name == "fig3-compare") {
        base.swarm_size = 20;
        base.iterations = 500;
        base.snapshot_ticks = {10, 50, 500};
        SwarmConfig mql = base;
        mql.algorithm = Algorithm::mql;
        SwarmConfig pso = base;
        pso.algorithm = Algorithm::pso;
        return {mql, pso};
    }
    if (name == "fig4-individuals") {
        base.algorithm = Algorithm::mql;
        base.iterations = 100;
        base.observe_particles = {0, 1, 2};
        return {base};
    }
    std::string valid;
    for (auto n : kPresetNames) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (valid presets: " + valid + ")");
}

}  // namespace mqlswarm
