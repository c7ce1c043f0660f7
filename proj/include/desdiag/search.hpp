#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "desdiag/bitset.hpp"
#include "desdiag/decimal.hpp"
#include "desdiag/model.hpp"
#include "desdiag/oracle.hpp"

namespace desdiag {

enum class PruneMode {
    None,        // exhaustive over all subsets, cost bound only (safety net)
    MinLabel,    // restrict to candidates whose cheapest-rank member is <= the
                 // greedy result's, sound for monotone oracles
    NesReduced,  // search only above the necessary-event set
};

enum class SearchMethod {
    Greedy,
    ExactNoPrune,
    ExactMinLabelPrune,
    ExactNesReduced,
    BruteForce,
};

const char* to_string(SearchMethod method);

struct SearchResult {
    Bitset chosen;
    Decimal total_cost;
    bool minimal = false;  // no single removal stays diagnosable
    SearchMethod method = SearchMethod::Greedy;
    std::uint64_t oracle_calls = 0;
    // Set when a candidate containing a known-diagnosable set tested
    // non-diagnosable, i.e. the oracle is not monotone. Results for
    // non-monotone oracles are best-effort (use PruneMode::None).
    bool monotonicity_warning = false;
};

/// Exact sum of member costs; 0 for the empty set.
Decimal set_cost(const Bitset& events, const CostTable& costs);

/// Smallest canonical (cost-descending) rank present, 1-based.
/// Defined as n+1 for the empty set.
std::size_t min_label(const Bitset& events, const CostTable& costs);

/// True iff removing any single member breaks diagnosability; costs one
/// oracle call per member (added to *oracle_calls when given). The set
/// itself is assumed diagnosable.
bool is_minimal(const Bitset& events, const DiagnosabilityOracle& oracle,
                std::uint64_t* oracle_calls = nullptr);

/// Events whose removal from the full set breaks diagnosability. Every
/// diagnosable set contains all of them (for monotone oracles), so they can
/// be fixed once and excluded from any further search. Throws
/// NotDiagnosableError when the full set is not diagnosable.
Bitset necessary_elements(const DiagnosabilityOracle& oracle,
                          std::uint64_t* oracle_calls = nullptr);

/// Greedy removal in canonical order: drop each event, most expensive first,
/// and restore it when diagnosability breaks. Returns a diagnosable set that
/// is minimal for monotone oracles, but not necessarily minimum-cost.
/// Deterministic. Throws NotDiagnosableError when the full set fails.
SearchResult greedy_min_oes(const DiagnosabilityOracle& oracle, const CostTable& costs);

/// Minimum-cost diagnosable subset, found by depth-first inclusion/exclusion
/// over the canonical order with branch-and-bound on accumulated cost. The
/// greedy result seeds the bound. Among equal-cost optima the winner is the
/// lexicographically smallest ascending canonical-rank tuple, so every prune
/// mode (and brute force) returns the identical set for monotone oracles.
SearchResult optimal_min_oes(const DiagnosabilityOracle& oracle, const CostTable& costs,
                             PruneMode prune = PruneMode::MinLabel);

/// Independent verification search: enumerates all 2^n subsets in ascending
/// bitmask order and keeps the (cost, canonical-rank tuple) minimum. Refuses
/// universes larger than max_events.
SearchResult brute_force_min_oes(const DiagnosabilityOracle& oracle, const CostTable& costs,
                                 std::size_t max_events = 20);

}  // namespace desdiag
