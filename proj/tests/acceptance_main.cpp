// Acceptance suite: one self-contained scenario per criterion, one PASS/FAIL
// line each. Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "desdiag/diagnosis.hpp"
#include "desdiag/generate.hpp"
#include "desdiag/model_io.hpp"
#include "desdiag/search.hpp"

using namespace desdiag;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

std::string read_fixture(const std::string& name) {
    const std::string path = std::string(DESDIAG_FIXTURE_DIR) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::printf("FAIL  missing fixture %s\n", path.c_str());
        ++failures;
        return "";
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::vector<std::uint64_t> signature_values(const Model& m, const Bitset& obs) {
    std::vector<std::uint64_t> out;
    for (const Bitset& s : signatures(m, obs)) out.push_back(s.to_uint64());
    return out;
}

// --- criterion 1: signature reproduction on the five-state automaton --------

void criterion_signatures() {
    const io::ModelDocument doc = io::parse_model(read_fixture("fig5.json"));
    const DesiredPartition part = normalize_partition(doc.partition, doc.model);

    const Bitset obs12 = Bitset::of(4, {0, 1});
    const Bitset obs123 = Bitset::of(4, {0, 1, 2});

    const auto start = std::chrono::steady_clock::now();
    const auto sig12 = signature_values(doc.model, obs12);
    const auto sig123 = signature_values(doc.model, obs123);
    const auto verdict12 = is_offline_diagnosable(doc.model, obs12, part);
    const auto verdict123 = is_offline_diagnosable(doc.model, obs123, part);
    const double ms = elapsed_ms(start);

    const bool ok = sig12 == std::vector<std::uint64_t>{0, 1, 1, 2, 2} &&
                    sig123 == std::vector<std::uint64_t>{0, 1, 5, 6, 2} &&
                    !verdict12.diagnosable && verdict12.witness == Witness{1, 2} &&
                    verdict123.diagnosable && ms < 1.0;
    char detail[64];
    std::snprintf(detail, sizeof detail, "%.3f ms", ms);
    report(1, "signatures (0,1,1,2,2) and (0,1,5,6,2), verdicts false/true", ok, detail);
}

// --- criterion 2: five-event family, greedy vs optimal ----------------------

void criterion_small_family() {
    const io::FamilyDocument fam = io::parse_family(read_fixture("family_lost.json"));
    const FamilyOracle oracle(fam.num_events, fam.generators);

    const SearchResult greedy = greedy_min_oes(oracle, fam.costs);
    bool ok = greedy.chosen == Bitset::of(5, {2, 3, 4}) &&
              greedy.total_cost == Decimal::from_int(14);
    for (auto prune : {PruneMode::None, PruneMode::MinLabel, PruneMode::NesReduced}) {
        const SearchResult best = optimal_min_oes(oracle, fam.costs, prune);
        ok = ok && best.chosen == Bitset::of(5, {1, 4}) &&
             best.total_cost == Decimal::from_int(11);
    }
    report(2, "greedy {s3,s4,s5} cost 14; optimal {s2,s5} cost 11 in all prune modes", ok);
}

// --- criterion 3: ten-event family, NES reduction ----------------------------

void criterion_large_family() {
    const io::FamilyDocument fam = io::parse_family(read_fixture("family_sec5.json"));
    const FamilyOracle oracle(fam.num_events, fam.generators);

    const auto start = std::chrono::steady_clock::now();
    const SearchResult greedy = greedy_min_oes(oracle, fam.costs);
    const SearchResult optimal = optimal_min_oes(oracle, fam.costs, PruneMode::MinLabel);
    const Bitset nes = necessary_elements(oracle);
    const SearchResult reduced = optimal_min_oes(oracle, fam.costs, PruneMode::NesReduced);
    const double ms = elapsed_ms(start);

    // the reduced total must equal cost(NES) + cost({s7})
    const Decimal expected_total =
        set_cost(nes, fam.costs) + set_cost(Bitset::of(10, {6}), fam.costs);

    const bool ok = greedy.total_cost == Decimal::from_int(40) &&
                    optimal.total_cost == Decimal::from_int(38) &&
                    optimal.chosen == Bitset::of(10, {2, 4, 6, 9}) &&
                    nes == Bitset::of(10, {2, 4, 9}) &&
                    reduced.total_cost == expected_total &&
                    reduced.total_cost == Decimal::from_int(38) &&
                    reduced.chosen == optimal.chosen && ms < 1000.0;
    char detail[64];
    std::snprintf(detail, sizeof detail, "%.1f ms", ms);
    report(3, "greedy 40, optimal {s3,s5,s7,s10} = 38, NES {s3,s5,s10}, reduced 38", ok,
           detail);
}

// --- criterion 4: three minimal singletons ----------------------------------

void criterion_three_singletons() {
    const io::ModelDocument doc = io::parse_model(read_fixture("prop1.json"));
    const ModelOracle oracle(doc.model, normalize_partition(doc.partition, doc.model));

    // enumerate all 8 subsets, collect the minimal diagnosable ones
    std::vector<Bitset> minimal_sets;
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        Bitset s(3);
        for (std::size_t i = 0; i < 3; ++i)
            if ((mask >> i) & 1) s.set(i);
        if (oracle.diagnosable(s) && is_minimal(s, oracle)) minimal_sets.push_back(s);
    }

    const bool three_singletons =
        minimal_sets.size() == 3 &&
        std::all_of(minimal_sets.begin(), minimal_sets.end(),
                    [](const Bitset& s) { return s.count() == 1; });

    const SearchResult best = optimal_min_oes(oracle, *doc.costs);
    const bool ok = three_singletons && best.chosen == Bitset::of(3, {0})  // alpha
                    && best.total_cost == Decimal::from_int(1);
    report(4, "exactly three minimal singletons; optimal picks the tie-break winner", ok);
}

// --- criterion 5: prune modes vs brute force on 500+ random instances --------

void criterion_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t instances = 0;
    std::size_t mismatches = 0;

    std::mt19937_64 rng(20240501);
    // 260 family-backed instances
    for (int round = 0; round < 260; ++round) {
        gen::FamilySpec spec;
        spec.events = 2 + rng() % 11;  // n <= 12
        spec.generators = 1 + rng() % 3;
        spec.max_size = 1 + rng() % spec.events;
        spec.seed = rng();
        const FamilyOracle oracle = gen::random_family(spec);
        const CostTable costs = gen::random_costs(spec.events, 0, 12, rng());

        const SearchResult reference = brute_force_min_oes(oracle, costs);
        ++instances;
        for (auto prune : {PruneMode::None, PruneMode::MinLabel, PruneMode::NesReduced}) {
            const SearchResult res = optimal_min_oes(oracle, costs, prune);
            if (!(res.chosen == reference.chosen && res.total_cost == reference.total_cost))
                ++mismatches;
        }
    }
    // 260 model-backed instances (skip never-diagnosable draws)
    int collected = 0;
    for (int attempt = 0; attempt < 20000 && collected < 260; ++attempt) {
        gen::GenSpec spec;
        spec.states = 2 + rng() % 9;   // m <= 10
        spec.events = 1 + rng() % 12;  // n <= 12
        spec.cells = 1 + rng() % spec.states;
        spec.density = 0.05 + 0.1 * static_cast<double>(rng() % 6);
        spec.seed = rng();
        spec.cost_min = 0;
        spec.cost_max = 9;
        const auto inst = gen::random_model(spec);
        const ModelOracle oracle(inst.model, inst.partition);
        if (!oracle.diagnosable(inst.model.all_events())) continue;
        ++collected;
        ++instances;

        const SearchResult reference = brute_force_min_oes(oracle, inst.costs);
        for (auto prune : {PruneMode::None, PruneMode::MinLabel, PruneMode::NesReduced}) {
            const SearchResult res = optimal_min_oes(oracle, inst.costs, prune);
            if (!(res.chosen == reference.chosen && res.total_cost == reference.total_cost))
                ++mismatches;
        }
    }

    const double ms = elapsed_ms(start);
    const bool ok = instances >= 500 && mismatches == 0 && ms < 60000.0;
    char detail[96];
    std::snprintf(detail, sizeof detail, "%zu instances, %zu mismatches, %.0f ms", instances,
                  mismatches, ms);
    report(5, "optimal equals brute force under every prune mode", ok, detail);
}

// --- criterion 6: property suites --------------------------------------------

void criterion_properties() {
    std::mt19937_64 rng(20240502);
    std::size_t violations = 0;

    // monotonicity over model-backed oracles
    for (int round = 0; round < 500; ++round) {
        gen::GenSpec spec;
        spec.states = 1 + rng() % 8;
        spec.events = 2 + rng() % 7;
        spec.cells = 1 + rng() % spec.states;
        spec.density = 0.05 + 0.1 * static_cast<double>(rng() % 6);
        spec.seed = rng();
        const auto inst = gen::random_model(spec);
        Bitset small(spec.events), extra(spec.events);
        for (std::size_t e = 0; e < spec.events; ++e) {
            if (rng() & 1) small.set(e);
            if (rng() & 1) extra.set(e);
        }
        if (is_offline_diagnosable(inst.model, small, inst.partition).diagnosable &&
            !is_offline_diagnosable(inst.model, small | extra, inst.partition).diagnosable)
            ++violations;
    }
    const std::size_t monotonicity = violations;

    // greedy minimality over family oracles
    violations = 0;
    for (int round = 0; round < 500; ++round) {
        gen::FamilySpec spec;
        spec.events = 2 + rng() % 10;
        spec.generators = 1 + rng() % 3;
        spec.max_size = 1 + rng() % spec.events;
        spec.seed = rng();
        const FamilyOracle oracle = gen::random_family(spec);
        const CostTable costs = gen::random_costs(spec.events, 0, 9, rng());
        const SearchResult res = greedy_min_oes(oracle, costs);
        if (!res.minimal || !is_minimal(res.chosen, oracle)) ++violations;
    }
    const std::size_t greedy_minimality = violations;

    // necessary elements contained in every diagnosable subset
    violations = 0;
    for (int round = 0; round < 500; ++round) {
        gen::FamilySpec spec;
        spec.events = 1 + rng() % 9;
        spec.generators = 1 + rng() % 3;
        spec.max_size = 1 + rng() % spec.events;
        spec.seed = rng();
        const FamilyOracle oracle = gen::random_family(spec);
        const Bitset nes = necessary_elements(oracle);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << spec.events); ++mask) {
            Bitset subset(spec.events);
            for (std::size_t i = 0; i < spec.events; ++i)
                if ((mask >> i) & 1) subset.set(i);
            if (oracle.diagnosable(subset) && !nes.is_subset_of(subset)) ++violations;
        }
    }
    const std::size_t nes_subset = violations;

    // signature verdict vs the refinement definition
    violations = 0;
    for (int round = 0; round < 500; ++round) {
        gen::GenSpec spec;
        spec.states = 1 + rng() % 6;
        spec.events = 1 + rng() % 5;
        spec.cells = 1 + rng() % spec.states;
        spec.density = 0.05 + 0.1 * static_cast<double>(rng() % 7);
        spec.seed = rng();
        const auto inst = gen::random_model(spec);
        Bitset obs(spec.events);
        for (std::size_t e = 0; e < spec.events; ++e)
            if (rng() & 1) obs.set(e);

        // refinement route: split blocks by each reachable set, then check
        std::vector<std::vector<std::size_t>> blocks;
        {
            std::vector<std::size_t> all(spec.states);
            for (std::size_t q = 0; q < spec.states; ++q) all[q] = q;
            blocks.push_back(all);
        }
        obs.for_each([&](std::size_t event) {
            const Bitset reached = reachable_under(inst.model, event);
            std::vector<std::vector<std::size_t>> next;
            for (const auto& block : blocks) {
                std::vector<std::size_t> in, out;
                for (std::size_t q : block) (reached.test(q) ? in : out).push_back(q);
                if (!in.empty()) next.push_back(in);
                if (!out.empty()) next.push_back(out);
            }
            blocks = next;
        });
        std::vector<std::size_t> cell_of = cell_assignment(inst.partition, inst.model);
        bool finer = true;
        for (const auto& block : blocks)
            for (std::size_t q : block)
                if (cell_of[q] != cell_of[block.front()]) finer = false;

        if (is_offline_diagnosable(inst.model, obs, inst.partition).diagnosable != finer)
            ++violations;
    }
    const std::size_t equivalence = violations;

    const bool ok =
        monotonicity == 0 && greedy_minimality == 0 && nes_subset == 0 && equivalence == 0;
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "violations: monotonicity %zu, greedy-minimality %zu, nes-subset %zu, "
                  "refinement %zu",
                  monotonicity, greedy_minimality, nes_subset, equivalence);
    report(6, "property suites over 500 seeded instances each", ok, detail);
}

// --- criterion 7: check time grows sub-cubically -----------------------------

void criterion_scaling() {
    const std::vector<std::size_t> sizes = {50, 100, 200, 400};
    std::vector<double> medians;
    for (std::size_t m : sizes) {
        gen::GenSpec spec;
        spec.states = m;
        spec.events = 16;
        spec.cells = 2;
        spec.density = 0.1;
        spec.seed = 4242;
        const auto inst = gen::random_model(spec);
        const Bitset full = inst.model.all_events();

        // warm-up, then the median of batched timings
        is_offline_diagnosable(inst.model, full, inst.partition);
        std::vector<double> times;
        constexpr int kBatches = 11;
        constexpr int kPerBatch = 8;
        for (int b = 0; b < kBatches; ++b) {
            const auto start = std::chrono::steady_clock::now();
            for (int i = 0; i < kPerBatch; ++i)
                is_offline_diagnosable(inst.model, full, inst.partition);
            times.push_back(elapsed_ms(start) / kPerBatch);
        }
        std::sort(times.begin(), times.end());
        medians.push_back(times[kBatches / 2]);
    }

    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i + 1 < medians.size(); ++i) {
        const double ratio = medians[i + 1] / medians[i];
        if (ratio > 5.0) ok = false;
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s%zu->%zu: %.2fx", i ? ", " : "", sizes[i],
                      sizes[i + 1], ratio);
        detail += buf;
    }
    report(7, "doubling m (n=16) grows median check time at most ~5x", ok, detail);
}

}  // namespace

int main() {
    criterion_signatures();
    criterion_small_family();
    criterion_large_family();
    criterion_three_singletons();
    criterion_oracle_equivalence();
    criterion_properties();
    criterion_scaling();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
