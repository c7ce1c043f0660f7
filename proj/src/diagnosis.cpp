#include "desdiag/diagnosis.hpp"

#include <algorithm>
#include <numeric>

#include "desdiag/errors.hpp"

namespace desdiag {

Bitset reachable_under(const Model& model, std::size_t event) {
    Bitset reached(model.num_states());
    for (std::size_t from = 0; from < model.num_states(); ++from)
        reached |= model.targets(event, from);
    return reached;
}

std::vector<Bitset> event_partition(const Model& model, std::size_t event) {
    const Bitset reached = reachable_under(model, event);
    const Bitset rest = reached.complement();
    std::vector<Bitset> blocks;
    if (reached.any()) blocks.push_back(reached);
    if (rest.any()) blocks.push_back(rest);
    if (blocks.empty()) blocks.push_back(reached);  // no states at all
    return blocks;
}

std::vector<Bitset> signatures(const Model& model, const Bitset& observable) {
    const std::size_t width = observable.count();
    std::vector<Bitset> sig(model.num_states(), Bitset(width));
    std::size_t bit = 0;
    observable.for_each([&](std::size_t event) {
        reachable_under(model, event).for_each([&](std::size_t q) { sig[q].set(bit); });
        ++bit;
    });
    return sig;
}

DiagnosabilityVerdict is_offline_diagnosable(const Model& model, const Bitset& observable,
                                             const DesiredPartition& partition) {
    const std::vector<std::size_t> cell_of = cell_assignment(partition, model);
    const std::vector<Bitset> sig = signatures(model, observable);

    const std::size_t m = model.num_states();
    std::vector<std::size_t> by_sig(m);
    std::iota(by_sig.begin(), by_sig.end(), std::size_t{0});
    std::sort(by_sig.begin(), by_sig.end(), [&](std::size_t a, std::size_t b) {
        const auto cmp = sig[a] <=> sig[b];
        if (cmp != 0) return cmp < 0;
        return a < b;
    });

    // Within a run of equal signatures the states are in ascending order, so
    // the smallest conflicting pair of the run is (first state, first later
    // state in another cell). The overall witness is the minimum over runs.
    std::optional<Witness> witness;
    std::size_t run_begin = 0;
    while (run_begin < m) {
        std::size_t run_end = run_begin + 1;
        while (run_end < m && sig[by_sig[run_end]] == sig[by_sig[run_begin]]) ++run_end;
        const std::size_t lead = by_sig[run_begin];
        for (std::size_t i = run_begin + 1; i < run_end; ++i) {
            const std::size_t other = by_sig[i];
            if (cell_of[other] != cell_of[lead]) {
                if (!witness || lead < witness->first ||
                    (lead == witness->first && other < witness->second))
                    witness = Witness{lead, other};
                break;
            }
        }
        run_begin = run_end;
    }

    if (witness) return {false, witness};
    return {true, std::nullopt};
}

}  // namespace desdiag
