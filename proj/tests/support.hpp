#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "desdiag/diagnosis.hpp"
#include "desdiag/model.hpp"
#include "desdiag/model_io.hpp"

namespace testsupport {

inline std::string read_fixture(const std::string& name) {
    const std::string path = std::string(DESDIAG_FIXTURE_DIR) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing fixture ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline desdiag::io::ModelDocument load_fixture(const std::string& name) {
    return desdiag::io::parse_model(read_fixture(name));
}

/// Reference decision procedure: build the common refinement of the
/// two-block event partitions by repeated splitting, then test that every
/// block stays inside one cell. Independent of the signature/sort path.
inline bool refinement_diagnosable(const desdiag::Model& model,
                                   const desdiag::Bitset& observable,
                                   const desdiag::DesiredPartition& partition) {
    const std::size_t m = model.num_states();
    std::vector<std::set<std::size_t>> blocks;
    std::set<std::size_t> all;
    for (std::size_t q = 0; q < m; ++q) all.insert(q);
    if (!all.empty()) blocks.push_back(all);

    observable.for_each([&](std::size_t event) {
        // membership in Q(event) recomputed with plain loops
        std::set<std::size_t> reached;
        for (std::size_t q = 0; q < m; ++q)
            for (std::size_t from = 0; from < m; ++from)
                if (model.targets(event, from).test(q)) reached.insert(q);

        std::vector<std::set<std::size_t>> next;
        for (const auto& block : blocks) {
            std::set<std::size_t> in, out;
            for (std::size_t q : block) (reached.count(q) ? in : out).insert(q);
            if (!in.empty()) next.push_back(in);
            if (!out.empty()) next.push_back(out);
        }
        blocks = next;
    });

    std::vector<std::size_t> cell_of(m, static_cast<std::size_t>(-1));
    for (std::size_t ci = 0; ci < partition.cells.size(); ++ci)
        for (std::size_t q : partition.cells[ci]) cell_of[q] = ci;

    for (const auto& block : blocks) {
        const std::size_t cell = cell_of[*block.begin()];
        for (std::size_t q : block)
            if (cell_of[q] != cell) return false;
    }
    return true;
}

}  // namespace testsupport
