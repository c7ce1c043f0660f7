#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "desdiag/bitset.hpp"
#include "desdiag/decimal.hpp"

namespace desdiag {

/// One entry of the transition relation: target reachable from `from` when
/// `event` occurs. Positions are 0-based declaration indices.
struct Transition {
    std::size_t event;
    std::size_t from;
    std::size_t to;
};

/// Nondeterministic event-driven automaton over a finite event alphabet and
/// a finite state set. The relation may be partial (no successor) and
/// nondeterministic (several successors). Immutable after construction and
/// safe for concurrent reads.
///
/// Events are numbered 1..n for display to match the usual sigma_1..sigma_n
/// convention; states are numbered 0..m-1. Internally everything is a 0-based
/// position.
class Model {
public:
    Model(std::vector<std::string> event_labels, std::vector<std::string> state_labels,
          const std::vector<Transition>& transitions);

    std::size_t num_events() const { return event_labels_.size(); }
    std::size_t num_states() const { return state_labels_.size(); }

    const std::string& event_label(std::size_t pos) const { return event_labels_[pos]; }
    const std::string& state_label(std::size_t pos) const { return state_labels_[pos]; }
    const std::vector<std::string>& event_labels() const { return event_labels_; }
    const std::vector<std::string>& state_labels() const { return state_labels_; }

    std::optional<std::size_t> event_pos(const std::string& label) const;
    std::optional<std::size_t> state_pos(const std::string& label) const;

    /// Successor set delta(event, from) as a bitset over states.
    const Bitset& targets(std::size_t event, std::size_t from) const {
        return delta_[event][from];
    }

    Bitset all_events() const { return Bitset::full(num_events()); }

    bool operator==(const Model& other) const {
        return event_labels_ == other.event_labels_ && state_labels_ == other.state_labels_ &&
               delta_ == other.delta_;
    }

private:
    std::vector<std::string> event_labels_;
    std::vector<std::string> state_labels_;
    std::vector<std::vector<Bitset>> delta_;  // [event][from] -> target set
    std::unordered_map<std::string, std::size_t> event_index_;
    std::unordered_map<std::string, std::size_t> state_index_;
};

/// What to do with states the declared partition leaves uncovered.
enum class RemainderPolicy {
    Reject,              // uncovered states are an error
    SingleRemainderCell, // all uncovered states form one extra cell
    SingletonCells,      // each uncovered state becomes its own cell
};

/// Disjoint cells of states; the diagnosis target. A partition need not
/// cover the state set until normalize_partition() has been applied.
struct DesiredPartition {
    std::vector<std::vector<std::size_t>> cells;  // each sorted ascending
    RemainderPolicy policy = RemainderPolicy::SingleRemainderCell;

    bool operator==(const DesiredPartition& other) const = default;
};

/// Completes a partition to cover all states of the model according to its
/// remainder policy. Cells already present are passed through unchanged; a
/// covering partition is returned as is under every policy. Throws
/// ValidationError when cells overlap, reference unknown states, are empty,
/// or when the policy is Reject and uncovered states exist.
DesiredPartition normalize_partition(const DesiredPartition& partition, const Model& model);

/// Cell index per state for a covering partition. Throws ValidationError on
/// overlap or when some state is uncovered (normalize first).
std::vector<std::size_t> cell_assignment(const DesiredPartition& partition, const Model& model);

/// Per-event nonnegative observation costs plus the canonical event order
/// they induce: cost descending, declaration position ascending on ties.
/// Canonical ranks are 1-based. Immutable after construction.
class CostTable {
public:
    CostTable() = default;
    explicit CostTable(std::vector<Decimal> cost_by_event);

    std::size_t size() const { return costs_.size(); }
    const Decimal& cost(std::size_t event_pos) const { return costs_[event_pos]; }

    /// Event positions ordered by canonical rank (rank 1 first).
    const std::vector<std::size_t>& canonical_order() const { return order_; }

    /// 1-based canonical rank of an event position.
    std::size_t canonical_rank(std::size_t event_pos) const { return rank_[event_pos]; }

    bool operator==(const CostTable& other) const { return costs_ == other.costs_; }

private:
    std::vector<Decimal> costs_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> rank_;
};

/// Event positions sorted by (cost descending, declaration position
/// ascending). A permutation of 0..n-1; idempotent in the sense that the
/// order never depends on the caller's declaration order of equal costs.
std::vector<std::size_t> canonical_event_order(const std::vector<Decimal>& cost_by_event);

}  // namespace desdiag
