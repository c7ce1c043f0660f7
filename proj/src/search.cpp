#include "desdiag/search.hpp"

#include <algorithm>
#include <vector>

#include "desdiag/errors.hpp"

namespace desdiag {

namespace {

constexpr const char* kNotDiagnosable =
    "system is not diagnosable even with all events observable";

void require_cost_table(const DiagnosabilityOracle& oracle, const CostTable& costs) {
    if (costs.size() != oracle.num_events())
        throw ValidationError("cost table covers " + std::to_string(costs.size()) +
                              " events but the oracle universe has " +
                              std::to_string(oracle.num_events()));
}

std::vector<std::size_t> canonical_ranks(const Bitset& events, const CostTable& costs) {
    std::vector<std::size_t> ranks;
    ranks.reserve(events.count());
    events.for_each([&](std::size_t pos) { ranks.push_back(costs.canonical_rank(pos)); });
    std::sort(ranks.begin(), ranks.end());
    return ranks;
}

/// Incumbent of the exact searches, ordered by (cost, canonical-rank tuple).
struct Incumbent {
    Decimal cost;
    Bitset chosen;
    std::vector<std::size_t> ranks;

    bool beaten_by(const Decimal& cost_b, const std::vector<std::size_t>& ranks_b) const {
        const auto cmp = cost_b <=> cost;
        if (cmp != 0) return cmp < 0;
        return std::lexicographical_compare(ranks_b.begin(), ranks_b.end(), ranks.begin(),
                                            ranks.end());
    }
};

struct ExactSearch {
    static constexpr std::size_t kFailureWindow = 128;

    const DiagnosabilityOracle& oracle;
    const CostTable& costs;
    PruneMode mode;
    std::vector<std::size_t> branch_events;  // canonical order, minus the fixed base
    std::size_t greedy_min_rank = 0;         // lmS; n+1 when greedy chose nothing
    Incumbent best;
    std::uint64_t calls = 0;
    bool warned = false;
    std::vector<Bitset> failed;  // bounded sample, for the monotonicity check

    // depth: next branch position; current carries the fixed base plus all
    // included branch events; cost is kept in sync incrementally.
    void dfs(std::size_t depth, Bitset& current, const Decimal& cost, bool has_low_rank) {
        if (cost > best.cost) return;  // equal cost may still win the tie-break
        if (mode == PruneMode::MinLabel && !has_low_rank && depth >= greedy_min_rank)
            return;  // every completion would have min rank > lmS, none can qualify
        if (depth == branch_events.size()) {
            if (mode == PruneMode::MinLabel && !has_low_rank &&
                greedy_min_rank <= oracle.num_events())
                return;
            auto ranks = canonical_ranks(current, costs);
            if (!best.beaten_by(cost, ranks)) return;  // cannot improve, skip the query
            ++calls;
            if (oracle.diagnosable(current)) {
                if (!warned)
                    for (const Bitset& f : failed)
                        if (current.is_subset_of(f)) {
                            warned = true;  // a superset of this set already failed
                            break;
                        }
                best = Incumbent{cost, current, std::move(ranks)};
            } else {
                if (best.chosen.is_subset_of(current))
                    warned = true;  // superset of a diagnosable set failed
                if (failed.size() < kFailureWindow) failed.push_back(current);
            }
            return;
        }
        const std::size_t pos = branch_events[depth];
        current.set(pos);
        dfs(depth + 1, current, cost + costs.cost(pos),
            has_low_rank || costs.canonical_rank(pos) <= greedy_min_rank);
        current.reset(pos);
        dfs(depth + 1, current, cost, has_low_rank);
    }
};

}  // namespace

const char* to_string(SearchMethod method) {
    switch (method) {
        case SearchMethod::Greedy: return "greedy";
        case SearchMethod::ExactNoPrune: return "exact-no-prune";
        case SearchMethod::ExactMinLabelPrune: return "exact-minl-prune";
        case SearchMethod::ExactNesReduced: return "exact-nes-reduced";
        case SearchMethod::BruteForce: return "brute-force";
    }
    return "unknown";
}

Decimal set_cost(const Bitset& events, const CostTable& costs) {
    Decimal total;
    events.for_each([&](std::size_t pos) { total += costs.cost(pos); });
    return total;
}

std::size_t min_label(const Bitset& events, const CostTable& costs) {
    std::size_t best = costs.size() + 1;
    events.for_each([&](std::size_t pos) { best = std::min(best, costs.canonical_rank(pos)); });
    return best;
}

bool is_minimal(const Bitset& events, const DiagnosabilityOracle& oracle,
                std::uint64_t* oracle_calls) {
    std::uint64_t calls = 0;
    bool minimal = true;
    const auto positions = events.positions();
    for (std::size_t pos : positions) {
        ++calls;
        if (oracle.diagnosable(events.without(pos))) {
            minimal = false;
            break;
        }
    }
    if (oracle_calls) *oracle_calls += calls;
    return minimal;
}

Bitset necessary_elements(const DiagnosabilityOracle& oracle, std::uint64_t* oracle_calls) {
    const std::size_t n = oracle.num_events();
    std::uint64_t calls = 1;
    const Bitset full = Bitset::full(n);
    if (!oracle.diagnosable(full)) {
        if (oracle_calls) *oracle_calls += calls;
        throw NotDiagnosableError(kNotDiagnosable);
    }
    Bitset nes(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        ++calls;
        if (!oracle.diagnosable(full.without(pos))) nes.set(pos);
    }
    if (oracle_calls) *oracle_calls += calls;
    return nes;
}

SearchResult greedy_min_oes(const DiagnosabilityOracle& oracle, const CostTable& costs) {
    require_cost_table(oracle, costs);
    std::uint64_t calls = 1;
    Bitset current = Bitset::full(oracle.num_events());
    if (!oracle.diagnosable(current)) throw NotDiagnosableError(kNotDiagnosable);

    for (std::size_t pos : costs.canonical_order()) {
        ++calls;
        const Bitset trial = current.without(pos);
        if (oracle.diagnosable(trial)) current = trial;
    }

    SearchResult result;
    result.chosen = current;
    result.total_cost = set_cost(current, costs);
    result.method = SearchMethod::Greedy;
    result.minimal = is_minimal(current, oracle, &calls);
    result.oracle_calls = calls;
    return result;
}

SearchResult optimal_min_oes(const DiagnosabilityOracle& oracle, const CostTable& costs,
                             PruneMode prune) {
    require_cost_table(oracle, costs);
    const SearchResult seed = greedy_min_oes(oracle, costs);

    ExactSearch search{oracle,
                       costs,
                       prune,
                       {},
                       min_label(seed.chosen, costs),
                       Incumbent{seed.total_cost, seed.chosen, canonical_ranks(seed.chosen, costs)},
                       seed.oracle_calls,
                       false,
                       {}};

    Bitset base(oracle.num_events());
    if (prune == PruneMode::NesReduced) {
        base = necessary_elements(oracle, &search.calls);
        for (std::size_t pos : costs.canonical_order())
            if (!base.test(pos)) search.branch_events.push_back(pos);
    } else {
        search.branch_events = costs.canonical_order();
    }

    Bitset current = base;
    search.dfs(0, current, set_cost(base, costs), false);

    SearchResult result;
    result.chosen = search.best.chosen;
    result.total_cost = search.best.cost;
    result.method = prune == PruneMode::None        ? SearchMethod::ExactNoPrune
                    : prune == PruneMode::MinLabel  ? SearchMethod::ExactMinLabelPrune
                                                    : SearchMethod::ExactNesReduced;
    result.minimal = is_minimal(result.chosen, oracle, &search.calls);
    result.oracle_calls = search.calls;
    result.monotonicity_warning = search.warned;
    return result;
}

SearchResult brute_force_min_oes(const DiagnosabilityOracle& oracle, const CostTable& costs,
                                 std::size_t max_events) {
    require_cost_table(oracle, costs);
    const std::size_t n = oracle.num_events();
    if (n > max_events)
        throw ValidationError("brute force enumeration refused: " + std::to_string(n) +
                              " events exceeds the cap of " + std::to_string(max_events));

    std::uint64_t calls = 1;
    if (!oracle.diagnosable(Bitset::full(n))) throw NotDiagnosableError(kNotDiagnosable);

    bool have_best = false;
    Incumbent best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Bitset candidate(n);
        for (std::size_t pos = 0; pos < n; ++pos)
            if ((mask >> pos) & 1) candidate.set(pos);
        ++calls;
        if (!oracle.diagnosable(candidate)) continue;
        Decimal cost = set_cost(candidate, costs);
        auto ranks = canonical_ranks(candidate, costs);
        if (!have_best || best.beaten_by(cost, ranks)) {
            best = Incumbent{std::move(cost), std::move(candidate), std::move(ranks)};
            have_best = true;
        }
    }

    SearchResult result;
    result.chosen = best.chosen;
    result.total_cost = best.cost;
    result.method = SearchMethod::BruteForce;
    result.minimal = is_minimal(result.chosen, oracle, &calls);
    result.oracle_calls = calls;
    return result;
}

}  // namespace desdiag
