#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqlswarm {

using StateIndex = std::size_t;
using ActionId = std::size_t;

/// Random source usable for tie-breaking.
template <class R>
concept IndexSource = requires(R r, std::size_t n) {
    { r.uniform_index(n) } -> std::convertible_to<std::size_t>;
};

struct LearningParams {
    double learning_rate = 0.1;
    double discount = 0.9;

    friend bool operator==(const LearningParams&, const LearningParams&) = default;

    void validate() const {
        if (!(learning_rate >= 0.0 && learning_rate <= 1.0)) {
            throw std::invalid_argument("learning_rate must lie in [0, 1]");
        }
        if (!(discount >= 0.0 && discount <= 1.0)) {
            throw std::invalid_argument("discount must lie in [0, 1]");
        }
    }
};

/// Dense state x action utility table, row-major, zero-initialised.
class QTable {
public:
    QTable(std::size_t num_states, std::size_t num_actions)
        : states_(num_states), actions_(num_actions) {
        if (num_states == 0 || num_actions == 0) {
            throw std::invalid_argument("QTable dimensions must be positive");
        }
        values_.assign(num_states * num_actions, 0.0);
    }

    std::size_t num_states() const { return states_; }
    std::size_t num_actions() const { return actions_; }

    double at(StateIndex s, ActionId a) const { return values_[offset(s, a)]; }

    void set(StateIndex s, ActionId a, double value) {
        if (!std::isfinite(value)) {
            throw std::invalid_argument("QTable entries must be finite");
        }
        values_[offset(s, a)] = value;
    }

    std::span<const double> row(StateIndex s) const {
        check_state(s);
        return {values_.data() + s * actions_, actions_};
    }

    /// Row-major copy of every entry.
    const std::vector<double>& values() const { return values_; }

    void check_state(StateIndex s) const {
        if (s >= states_) {
            throw std::out_of_range("state " + std::to_string(s) + " out of range [0, " +
                                    std::to_string(states_) + ")");
        }
    }

    void check_action(ActionId a) const {
        if (a >= actions_) {
            throw std::out_of_range("action " + std::to_string(a) + " out of range [0, " +
                                    std::to_string(actions_) + ")");
        }
    }

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::size_t offset(StateIndex s, ActionId a) const {
        check_state(s);
        check_action(a);
        return s * actions_ + a;
    }

    std::size_t states_;
    std::size_t actions_;
    std::vector<double> values_;
};

inline QTable q_init(std::size_t num_states, std::size_t num_actions) {
    return QTable(num_states, num_actions);
}

inline double max_q(const QTable& t, StateIndex s) {
    const auto row = t.row(s);
    double best = row[0];
    for (double v : row) {
        if (v > best) best = v;
    }
    return best;
}

/// Actions attaining the row maximum, ascending.
inline std::vector<ActionId> greedy_set(const QTable& t, StateIndex s) {
    const double best = max_q(t, s);
    const auto row = t.row(s);
    std::vector<ActionId> tied;
    for (ActionId a = 0; a < row.size(); ++a) {
        if (row[a] == best) tied.push_back(a);
    }
    return tied;
}

/// Greedy action; ties resolved uniformly at random. The stream is only
/// consumed when two or more actions tie.
template <IndexSource Rng>
ActionId greedy_action(const QTable& t, StateIndex s, Rng& rng) {
    const auto tied = greedy_set(t, s);
    if (tied.size() == 1) return tied.front();
    return tied[rng.uniform_index(tied.size())];
}

/// One-step Q-learning update of cell (s, a); returns the new value.
inline double q_update(QTable& t, StateIndex s, ActionId a, double reward, StateIndex s_next,
                       const LearningParams& p) {
    if (!std::isfinite(reward)) {
        throw std::invalid_argument("q_update: reward must be finite");
    }
    t.check_state(s_next);
    const double old = t.at(s, a);
    const double updated =
        old + p.learning_rate * (reward + p.discount * max_q(t, s_next) - old);
    t.set(s, a, updated);
    return updated;
}

}  // namespace mqlswarm
