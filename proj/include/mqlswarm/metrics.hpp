#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "trace.hpp"

namespace mqlswarm {

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    std::size_t size_of_root(std::size_t root) const { return size_[root]; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace detail

/// Component sizes of the proximity graph (edge iff distance < epsilon),
/// largest first.
inline std::vector<std::size_t> connectivity_components(std::span<const Vec2> positions,
                                                        double epsilon) {
    const std::size_t m = positions.size();
    detail::DisjointSets sets(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = i + 1; k < m; ++k) {
            if (euclidean_distance(positions[i], positions[k]) < epsilon) sets.unite(i, k);
        }
    }
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < m; ++i) {
        if (sets.find(i) == i) sizes.push_back(sets.size_of_root(i));
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

inline std::size_t neighbor_count(std::size_t i, std::span<const Vec2> positions,
                                  double epsilon) {
    std::size_t n = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
        if (k != i && euclidean_distance(positions[i], positions[k]) < epsilon) ++n;
    }
    return n;
}

/// Fraction of particles with at least one peer within epsilon.
inline double connected_fraction(std::span<const Vec2> positions, double epsilon) {
    if (positions.empty()) {
        throw std::invalid_argument("connected_fraction: empty swarm");
    }
    std::size_t connected = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (neighbor_count(i, positions, epsilon) > 0) ++connected;
    }
    return static_cast<double>(connected) / static_cast<double>(positions.size());
}

inline Vec2 centroid(std::span<const Vec2> positions) {
    Vec2 c;
    for (const auto& p : positions) c += p;
    return c * (1.0 / static_cast<double>(positions.size()));
}

/// Mean distance to the swarm centroid.
inline double dispersion(std::span<const Vec2> positions) {
    if (positions.empty()) {
        throw std::invalid_argument("dispersion: empty swarm");
    }
    const Vec2 c = centroid(positions);
    double total = 0.0;
    for (const auto& p : positions) total += euclidean_distance(p, c);
    return total / static_cast<double>(positions.size());
}

/// Fraction of unordered pairs closer than d_min; 0 for a singleton.
inline double overlap_pair_fraction(std::span<const Vec2> positions, double d_min) {
    const std::size_t m = positions.size();
    if (m < 2) return 0.0;
    std::size_t close = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = i + 1; k < m; ++k) {
            if (euclidean_distance(positions[i], positions[k]) < d_min) ++close;
        }
    }
    return static_cast<double>(close) / (0.5 * static_cast<double>(m * (m - 1)));
}

/// Records of one particle in tick order.
inline std::vector<TickRecord> records_for(const Trace& trace, ParticleId i) {
    std::vector<TickRecord> out;
    for (const auto& r : trace) {
        if (r.particle == i) out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const TickRecord& a, const TickRecord& b) { return a.tick < b.tick; });
    return out;
}

inline std::vector<TickRecord> require_records(const Trace& trace, ParticleId i) {
    auto rows = records_for(trace, i);
    if (rows.empty()) {
        throw std::out_of_range("particle " + std::to_string(i.value) + " not present in trace");
    }
    return rows;
}

inline double cumulative_reward(const Trace& trace, ParticleId i) {
    double total = 0.0;
    for (const auto& r : require_records(trace, i)) {
        if (r.reward) total += *r.reward;
    }
    return total;
}

enum class Decision { good, bad };

/// good iff the reward is strictly positive. Ticks on which the particle
/// made no decision (round-robin idle turns, PSO rows) are skipped.
inline std::vector<Decision> classify_decisions(const Trace& trace, ParticleId i) {
    std::vector<Decision> out;
    for (const auto& r : require_records(trace, i)) {
        if (r.reward) out.push_back(*r.reward > 0.0 ? Decision::good : Decision::bad);
    }
    return out;
}

/// First tick from which the particle never has a neighbour again, or empty
/// if it ends the run connected.
inline std::optional<std::size_t> drift_onset(const Trace& trace, ParticleId i) {
    const auto rows = require_records(trace, i);
    std::optional<std::size_t> onset;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (it->neighbor_count != 0) break;
        onset = it->tick;
    }
    return onset;
}

}  // namespace mqlswarm
