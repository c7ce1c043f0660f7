#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "desdiag/bitset.hpp"
#include "desdiag/model.hpp"

namespace desdiag {

/// Two distinct states that share a signature but sit in different cells of
/// the desired partition. first < second by state position.
struct Witness {
    std::size_t first;
    std::size_t second;

    bool operator==(const Witness&) const = default;
};

struct DiagnosabilityVerdict {
    bool diagnosable = false;
    std::optional<Witness> witness;  // present exactly when !diagnosable
};

/// States reachable in one step under `event` from any source state.
Bitset reachable_under(const Model& model, std::size_t event);

/// The two-block partition an observable event induces on the state set:
/// {reachable, not reachable}, with empty blocks dropped. Degenerates to one
/// block spanning all states when the event reaches nothing or everything.
std::vector<Bitset> event_partition(const Model& model, std::size_t event);

/// Per-state bit signature over an observable event set. Bit k of state q's
/// signature is set iff q is reachable under the (k+1)-th observable event,
/// where observable events are enumerated in ascending declaration order.
/// Two states get equal signatures exactly when every observable event
/// either reaches both or neither; width is |observable| and is not limited
/// to a machine word.
std::vector<Bitset> signatures(const Model& model, const Bitset& observable);

/// Decides off-line diagnosability: every pair of states with equal
/// signatures must lie in the same cell of the partition. The partition must
/// cover all states (see normalize_partition). On failure the witness is the
/// lexicographically smallest conflicting state pair, so verdicts are
/// deterministic.
///
/// Cost is O(m*n*m/w) for the signatures plus an O(m log m) sort; each call
/// recomputes from scratch.
DiagnosabilityVerdict is_offline_diagnosable(const Model& model, const Bitset& observable,
                                             const DesiredPartition& partition);

}  // namespace desdiag
