#include "desdiag/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "desdiag/errors.hpp"

namespace desdiag {
namespace gen {

namespace {

double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

}  // namespace

GeneratedInstance random_model(const GenSpec& spec) {
    if (spec.states == 0 || spec.events == 0)
        throw ValidationError("generator spec needs at least one state and one event");
    if (!(spec.density >= 0.0 && spec.density <= 1.0))
        throw ValidationError("generator density must lie in [0, 1]");
    if (spec.cells == 0 || spec.cells > spec.states)
        throw ValidationError("generator cell count must lie in [1, states]");
    if (spec.cost_min < 0 || spec.cost_min > spec.cost_max)
        throw ValidationError("generator cost range must satisfy 0 <= cost_min <= cost_max");

    std::mt19937_64 rng(spec.seed);

    std::vector<std::string> events(spec.events);
    for (std::size_t i = 0; i < spec.events; ++i) events[i] = "e" + std::to_string(i + 1);
    std::vector<std::string> states(spec.states);
    for (std::size_t j = 0; j < spec.states; ++j) states[j] = "q" + std::to_string(j);

    std::vector<Transition> transitions;
    for (std::size_t e = 0; e < spec.events; ++e)
        for (std::size_t from = 0; from < spec.states; ++from)
            for (std::size_t to = 0; to < spec.states; ++to)
                if (unit_real(rng) < spec.density) transitions.push_back({e, from, to});

    DesiredPartition partition;
    partition.cells.assign(spec.cells, {});
    for (std::size_t j = 0; j < spec.states; ++j) {
        const std::size_t cell = j < spec.cells ? j : bounded(rng, spec.cells);
        partition.cells[cell].push_back(j);
    }

    const std::uint64_t range = static_cast<std::uint64_t>(spec.cost_max - spec.cost_min) + 1;
    std::vector<Decimal> costs(spec.events);
    for (std::size_t e = 0; e < spec.events; ++e)
        costs[e] = Decimal::from_int(spec.cost_min +
                                     static_cast<std::int64_t>(bounded(rng, range)));

    return GeneratedInstance{Model(std::move(events), std::move(states), transitions),
                             std::move(partition), CostTable(std::move(costs))};
}

FamilyOracle random_family(const FamilySpec& spec) {
    if (spec.events == 0 || spec.generators == 0)
        throw ValidationError("family spec needs at least one event and one generator");
    if (spec.max_size == 0 || spec.max_size > spec.events)
        throw ValidationError("family generator size must lie in [1, events]");

    std::mt19937_64 rng(spec.seed);
    std::vector<Bitset> generators;
    generators.reserve(spec.generators);
    std::vector<std::size_t> pool(spec.events);
    for (std::size_t g = 0; g < spec.generators; ++g) {
        const std::size_t size = 1 + static_cast<std::size_t>(bounded(rng, spec.max_size));
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        Bitset member(spec.events);
        for (std::size_t i = 0; i < size; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(bounded(rng, spec.events - i));
            std::swap(pool[i], pool[j]);
            member.set(pool[i]);
        }
        generators.push_back(std::move(member));
    }
    return FamilyOracle(spec.events, std::move(generators));
}

CostTable random_costs(std::size_t events, std::int64_t cost_min, std::int64_t cost_max,
                       std::uint64_t seed) {
    if (cost_min < 0 || cost_min > cost_max)
        throw ValidationError("cost range must satisfy 0 <= cost_min <= cost_max");
    std::mt19937_64 rng(seed);
    const std::uint64_t range = static_cast<std::uint64_t>(cost_max - cost_min) + 1;
    std::vector<Decimal> costs(events);
    for (std::size_t e = 0; e < events; ++e)
        costs[e] = Decimal::from_int(cost_min + static_cast<std::int64_t>(bounded(rng, range)));
    return CostTable(std::move(costs));
}

}  // namespace gen
}  // namespace desdiag
