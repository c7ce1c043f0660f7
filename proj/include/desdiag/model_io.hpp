#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "desdiag/bitset.hpp"
#include "desdiag/model.hpp"

namespace desdiag {
namespace io {

/// A fully cross-referenced model document.
struct ModelDocument {
    Model model;
    DesiredPartition partition;
    std::optional<CostTable> costs;
    std::optional<Bitset> observable;
};

/// Parses the UTF-8 JSON model document:
///   {
///     "events": ["s1", ...],
///     "states": ["q0", ...],
///     "transitions": [{"event": "s1", "from": "q0", "to": ["q1", "q2"]}, ...],
///     "partition": [["q0"], ["q1"], ...],
///     "costs": {"s1": 13, "s2": "9.5", ...},      // optional
///     "observable": ["s1", "s2"]                   // optional
///   }
/// Costs may be JSON numbers or decimal strings; either way they are kept
/// exact. Unknown fields are rejected. Throws ParseError for malformed JSON
/// (with the position nlohmann reports) and ValidationError for unknown
/// references, duplicate labels, negative costs or overlapping cells.
ModelDocument parse_model(std::string_view text);

/// Canonical serialization of a document: declaration order everywhere,
/// transitions grouped by (event, from) and sorted, costs as decimal
/// strings. parse_model(serialize_model(doc)) reproduces the document
/// structurally, and equal documents serialize to identical bytes.
std::string serialize_model(const ModelDocument& doc);

/// A diagnosability fixture given directly as a generator family:
///   {"n": 5, "costs": [13, 9, 7, 5, 2], "generators": [[2, 5], [3, 4, 5]]}
/// Generator members are 1-based event declaration indices.
struct FamilyDocument {
    std::size_t num_events = 0;
    CostTable costs;
    std::vector<Bitset> generators;
};

FamilyDocument parse_family(std::string_view text);

}  // namespace io
}  // namespace desdiag
