#include "desdiag/model.hpp"

#include <algorithm>
#include <numeric>

#include "desdiag/errors.hpp"

namespace desdiag {

namespace {

void check_labels(const std::vector<std::string>& labels, const char* kind,
                  std::unordered_map<std::string, std::size_t>& index) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].empty())
            throw ValidationError(std::string(kind) + " label at position " + std::to_string(i) +
                                  " is empty");
        if (!index.emplace(labels[i], i).second)
            throw ValidationError(std::string("duplicate ") + kind + " label '" + labels[i] + "'");
    }
}

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (const auto& l : labels) {
        if (!out.empty()) out += ", ";
        out += l;
    }
    return out;
}

}  // namespace

Model::Model(std::vector<std::string> event_labels, std::vector<std::string> state_labels,
             const std::vector<Transition>& transitions)
    : event_labels_(std::move(event_labels)), state_labels_(std::move(state_labels)) {
    check_labels(event_labels_, "event", event_index_);
    check_labels(state_labels_, "state", state_index_);

    const std::size_t m = num_states();
    delta_.assign(num_events(), std::vector<Bitset>(m, Bitset(m)));
    for (const Transition& t : transitions) {
        if (t.event >= num_events())
            throw ValidationError("transition references unknown event position " +
                                  std::to_string(t.event));
        if (t.from >= m || t.to >= m)
            throw ValidationError("transition references unknown state position");
        delta_[t.event][t.from].set(t.to);
    }
}

std::optional<std::size_t> Model::event_pos(const std::string& label) const {
    auto it = event_index_.find(label);
    if (it == event_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Model::state_pos(const std::string& label) const {
    auto it = state_index_.find(label);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

DesiredPartition normalize_partition(const DesiredPartition& partition, const Model& model) {
    const std::size_t m = model.num_states();
    Bitset covered(m);
    for (const auto& cell : partition.cells) {
        if (cell.empty()) throw ValidationError("partition contains an empty cell");
        for (std::size_t s : cell) {
            if (s >= m)
                throw ValidationError("partition references unknown state position " +
                                      std::to_string(s));
            if (covered.test(s))
                throw ValidationError("partition cells overlap on state '" +
                                      model.state_label(s) + "'");
            covered.set(s);
        }
    }

    const Bitset uncovered = covered.complement();
    DesiredPartition out = partition;
    if (uncovered.none()) return out;

    switch (partition.policy) {
        case RemainderPolicy::Reject: {
            std::vector<std::string> labels;
            uncovered.for_each([&](std::size_t s) { labels.push_back(model.state_label(s)); });
            throw ValidationError("partition leaves states uncovered: " + join_labels(labels));
        }
        case RemainderPolicy::SingleRemainderCell:
            out.cells.push_back(uncovered.positions());
            break;
        case RemainderPolicy::SingletonCells:
            uncovered.for_each([&](std::size_t s) { out.cells.push_back({s}); });
            break;
    }
    return out;
}

std::vector<std::size_t> cell_assignment(const DesiredPartition& partition, const Model& model) {
    const std::size_t m = model.num_states();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> assign(m, kNone);
    for (std::size_t ci = 0; ci < partition.cells.size(); ++ci) {
        for (std::size_t s : partition.cells[ci]) {
            if (s >= m)
                throw ValidationError("partition references unknown state position " +
                                      std::to_string(s));
            if (assign[s] != kNone)
                throw ValidationError("partition cells overlap on state '" +
                                      model.state_label(s) + "'");
            assign[s] = ci;
        }
    }
    for (std::size_t s = 0; s < m; ++s) {
        if (assign[s] == kNone)
            throw ValidationError("state '" + model.state_label(s) +
                                  "' is not covered by the partition; normalize it first");
    }
    return assign;
}

std::vector<std::size_t> canonical_event_order(const std::vector<Decimal>& cost_by_event) {
    std::vector<std::size_t> order(cost_by_event.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto cmp = cost_by_event[a] <=> cost_by_event[b];
        if (cmp != 0) return cmp > 0;  // higher cost first
        return a < b;
    });
    return order;
}

CostTable::CostTable(std::vector<Decimal> cost_by_event) : costs_(std::move(cost_by_event)) {
    for (std::size_t i = 0; i < costs_.size(); ++i) {
        if (costs_[i].is_negative())
            throw ValidationError("negative cost for event at position " + std::to_string(i));
    }
    order_ = canonical_event_order(costs_);
    rank_.assign(costs_.size(), 0);
    for (std::size_t r = 0; r < order_.size(); ++r) rank_[order_[r]] = r + 1;
}

}  // namespace desdiag
