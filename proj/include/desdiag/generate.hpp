#pragma once

#include <cstdint>
#include <vector>

#include "desdiag/model.hpp"
#include "desdiag/oracle.hpp"

namespace desdiag {
namespace gen {

/// Parameters for seeded random instances.
///
/// Reproducibility contract: all draws come from a std::mt19937_64 seeded
/// with `seed` (the engine's output sequence is fixed by the C++ standard,
/// so it is identical on every platform). Draw order and reduction are
/// pinned:
///   1. transitions, event-major then source then target: one draw each,
///      kept when (draw >> 11) * 2^-53 < density;
///   2. cell of each state q_j with j >= cells (states q_0..q_{cells-1} pin
///      one state per cell): draw % cells;
///   3. cost of each event in declaration order:
///      cost_min + draw % (cost_max - cost_min + 1).
struct GenSpec {
    std::size_t states = 5;
    std::size_t events = 4;
    double density = 0.15;
    std::size_t cells = 2;
    std::uint64_t seed = 0;
    std::int64_t cost_min = 1;
    std::int64_t cost_max = 20;
};

struct GeneratedInstance {
    Model model;
    DesiredPartition partition;  // always covering
    CostTable costs;
};

/// Deterministic random automaton, covering partition and cost table.
/// Labels are e1..en and q0..q{m-1}. Throws ValidationError on an invalid
/// spec (states or events zero, density outside [0,1], cells outside
/// [1, states], cost_min negative or above cost_max).
GeneratedInstance random_model(const GenSpec& spec);

/// Parameters for a random generator family (see FamilyOracle).
struct FamilySpec {
    std::size_t events = 5;
    std::size_t generators = 2;
    std::size_t max_size = 3;  // each generator gets 1..max_size members
    std::uint64_t seed = 0;
};

/// Deterministic random superset-family oracle plus its generator list.
/// Per generator: size = 1 + draw % max_size, then a partial Fisher-Yates
/// shuffle of 0..n-1 (swap index i with i + draw % (n - i)) picks the
/// members. Monotone by construction.
FamilyOracle random_family(const FamilySpec& spec);

/// Deterministic uniform integer costs in [cost_min, cost_max], one per
/// event in declaration order, drawn as cost_min + draw % range.
CostTable random_costs(std::size_t events, std::int64_t cost_min, std::int64_t cost_max,
                       std::uint64_t seed);

}  // namespace gen
}  // namespace desdiag
