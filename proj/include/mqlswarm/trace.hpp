#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "qlearning.hpp"

namespace mqlswarm {

/// Discretised neighbourhood observation of one M-QL particle.
enum class StateId : std::size_t { disconnected = 0, too_close, near, ideal, far };

inline constexpr std::size_t kNumStates = 5;

inline constexpr std::array<std::string_view, kNumStates> kStateNames = {
    "DISCONNECTED", "TOO_CLOSE", "NEAR", "IDEAL", "FAR"};

inline constexpr StateIndex index_of(StateId s) { return static_cast<StateIndex>(s); }

inline std::string_view to_string(StateId s) { return kStateNames.at(index_of(s)); }

inline StateId state_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kNumStates; ++i) {
        if (kStateNames[i] == name) return static_cast<StateId>(i);
    }
    throw std::invalid_argument("unknown state '" + std::string(name) + "'");
}

/// One particle's log row for one tick. The M-QL-only fields are empty for
/// PSO runs and for particles that sat out a round-robin turn.
struct TickRecord {
    std::size_t tick = 0;
    ParticleId particle{};
    Vec2 position;
    std::optional<StateId> state;
    std::optional<ActionId> action;
    std::optional<double> reward;
    std::size_t neighbor_count = 0;

    friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

using Trace = std::vector<TickRecord>;

}  // namespace mqlswarm
