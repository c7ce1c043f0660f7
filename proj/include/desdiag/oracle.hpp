#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "desdiag/bitset.hpp"
#include "desdiag/diagnosis.hpp"
#include "desdiag/model.hpp"

namespace desdiag {

/// Total predicate over observable event sets: "is the system diagnosable
/// with respect to this set and the desired partition?".
///
/// Every search in this library assumes the predicate is monotone (adding
/// events never breaks diagnosability); both implementations below are.
/// Implementations are stateless and safe for concurrent invocation.
class DiagnosabilityOracle {
public:
    virtual ~DiagnosabilityOracle() = default;

    virtual bool diagnosable(const Bitset& observable) const = 0;

    /// Number of events in the universe the predicate is defined over.
    virtual std::size_t num_events() const = 0;
};

/// Oracle backed by an automaton and a covering partition.
class ModelOracle final : public DiagnosabilityOracle {
public:
    ModelOracle(const Model& model, DesiredPartition covering_partition)
        : model_(&model), partition_(std::move(covering_partition)) {}

    bool diagnosable(const Bitset& observable) const override {
        return is_offline_diagnosable(*model_, observable, partition_).diagnosable;
    }

    std::size_t num_events() const override { return model_->num_events(); }

private:
    const Model* model_;
    DesiredPartition partition_;
};

/// Oracle defined by a family of generator sets: a query set is diagnosable
/// iff it contains some generator. Superset-closed by construction, hence
/// monotone. This makes fixtures given as "diagnosable sets are E1, E2 and
/// their supersets" executable without an automaton.
class FamilyOracle final : public DiagnosabilityOracle {
public:
    FamilyOracle(std::size_t num_events, std::vector<Bitset> generators)
        : num_events_(num_events), generators_(std::move(generators)) {}

    bool diagnosable(const Bitset& observable) const override {
        for (const Bitset& g : generators_)
            if (g.is_subset_of(observable)) return true;
        return false;
    }

    std::size_t num_events() const override { return num_events_; }

    const std::vector<Bitset>& generators() const { return generators_; }

private:
    std::size_t num_events_;
    std::vector<Bitset> generators_;
};

}  // namespace desdiag
