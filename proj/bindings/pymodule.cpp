#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "desdiag/diagnosis.hpp"
#include "desdiag/errors.hpp"
#include "desdiag/generate.hpp"
#include "desdiag/model_io.hpp"
#include "desdiag/search.hpp"

namespace py = pybind11;
using namespace desdiag;

namespace {

struct PyVerdict {
    bool diagnosable = false;
    std::optional<std::pair<std::string, std::string>> witness;
};

struct PySearchResult {
    std::vector<std::string> chosen;
    std::vector<std::size_t> chosen_indices;  // canonical 1-based, ascending
    std::string total_cost;
    bool minimal = false;
    std::string method;
    std::uint64_t oracle_calls = 0;
};

std::vector<std::string> family_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "s" + std::to_string(i + 1);
    return labels;
}

Bitset resolve_obs(const io::ModelDocument& doc,
                   const std::optional<std::vector<std::string>>& obs) {
    if (!obs) return doc.observable ? *doc.observable : doc.model.all_events();
    Bitset out(doc.model.num_events());
    for (const std::string& label : *obs) {
        auto pos = doc.model.event_pos(label);
        if (!pos) throw ValidationError("unknown event '" + label + "'");
        out.set(*pos);
    }
    return out;
}

RemainderPolicy policy_from_name(const std::string& name) {
    if (name == "reject") return RemainderPolicy::Reject;
    if (name == "cell") return RemainderPolicy::SingleRemainderCell;
    if (name == "singletons") return RemainderPolicy::SingletonCells;
    throw ValidationError("remainder policy must be 'reject', 'cell' or 'singletons'");
}

PruneMode prune_from_name(const std::string& name) {
    if (name == "none") return PruneMode::None;
    if (name == "minl") return PruneMode::MinLabel;
    if (name == "nes") return PruneMode::NesReduced;
    throw ValidationError("prune mode must be 'none', 'minl' or 'nes'");
}

DesiredPartition normalized(const io::ModelDocument& doc, const std::string& remainder) {
    DesiredPartition part = doc.partition;
    part.policy = policy_from_name(remainder);
    return normalize_partition(part, doc.model);
}

CostTable require_costs(const io::ModelDocument& doc) {
    if (!doc.costs) throw ValidationError("model document has no 'costs' field");
    return *doc.costs;
}

PySearchResult convert(const SearchResult& result, const std::vector<std::string>& labels,
                       const CostTable& costs) {
    PySearchResult out;
    result.chosen.for_each([&](std::size_t e) { out.chosen.push_back(labels[e]); });
    result.chosen.for_each(
        [&](std::size_t e) { out.chosen_indices.push_back(costs.canonical_rank(e)); });
    std::sort(out.chosen_indices.begin(), out.chosen_indices.end());
    out.total_cost = result.total_cost.str();
    out.minimal = result.minimal;
    out.method = to_string(result.method);
    out.oracle_calls = result.oracle_calls;
    return out;
}

py::object signature_ints(const std::vector<Bitset>& sigs) {
    // arbitrary-width signatures become arbitrary-precision python ints
    py::list out;
    const py::object py_int = py::module_::import("builtins").attr("int");
    for (const Bitset& s : sigs) {
        py::object value = py_int(0);
        s.for_each([&](std::size_t bit) {
            value = value.attr("__or__")(py_int(1).attr("__lshift__")(py::int_(bit)));
        });
        out.append(value);
    }
    return out;
}

template <class Fn>
PySearchResult on_model(const io::ModelDocument& doc, const std::string& remainder,
                        bool costs_needed, Fn&& fn) {
    const ModelOracle oracle(doc.model, normalized(doc, remainder));
    const CostTable costs =
        costs_needed ? require_costs(doc)
                     : (doc.costs ? *doc.costs
                                  : CostTable(std::vector<Decimal>(doc.model.num_events(),
                                                                   Decimal::from_int(1))));
    return convert(fn(oracle, costs), doc.model.event_labels(), costs);
}

template <class Fn>
PySearchResult on_family(const io::FamilyDocument& doc, Fn&& fn) {
    const FamilyOracle oracle(doc.num_events, doc.generators);
    return convert(fn(oracle, doc.costs), family_labels(doc.num_events), doc.costs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "off-line diagnosability of discrete event systems";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NotDiagnosableError>(m, "NotDiagnosableError", PyExc_RuntimeError);

    py::class_<io::ModelDocument>(m, "Document")
        .def_property_readonly("num_states",
                               [](const io::ModelDocument& d) { return d.model.num_states(); })
        .def_property_readonly("num_events",
                               [](const io::ModelDocument& d) { return d.model.num_events(); })
        .def_property_readonly("event_labels",
                               [](const io::ModelDocument& d) { return d.model.event_labels(); })
        .def_property_readonly("state_labels",
                               [](const io::ModelDocument& d) { return d.model.state_labels(); })
        .def("__repr__", [](const io::ModelDocument& d) {
            return "<desdiag.Document with " + std::to_string(d.model.num_states()) +
                   " states, " + std::to_string(d.model.num_events()) + " events>";
        });

    py::class_<io::FamilyDocument>(m, "Family")
        .def_property_readonly("num_events",
                               [](const io::FamilyDocument& d) { return d.num_events; })
        .def_property_readonly("generators", [](const io::FamilyDocument& d) {
            std::vector<std::vector<std::size_t>> out;
            for (const Bitset& g : d.generators) {
                std::vector<std::size_t> indices;
                g.for_each([&](std::size_t e) { indices.push_back(e + 1); });
                out.push_back(std::move(indices));
            }
            return out;
        });

    py::class_<PyVerdict>(m, "Verdict")
        .def_readonly("diagnosable", &PyVerdict::diagnosable)
        .def_readonly("witness", &PyVerdict::witness)
        .def("__bool__", [](const PyVerdict& v) { return v.diagnosable; })
        .def("__repr__", [](const PyVerdict& v) {
            return std::string("<desdiag.Verdict diagnosable=") +
                   (v.diagnosable ? "True" : "False") + ">";
        });

    py::class_<PySearchResult>(m, "SearchResult")
        .def_readonly("chosen", &PySearchResult::chosen)
        .def_readonly("chosen_indices", &PySearchResult::chosen_indices)
        .def_readonly("total_cost", &PySearchResult::total_cost)
        .def_readonly("minimal", &PySearchResult::minimal)
        .def_readonly("method", &PySearchResult::method)
        .def_readonly("oracle_calls", &PySearchResult::oracle_calls)
        .def("__repr__", [](const PySearchResult& r) {
            std::string out = "<desdiag.SearchResult {";
            for (std::size_t i = 0; i < r.chosen.size(); ++i)
                out += (i ? ", " : "") + r.chosen[i];
            return out + "} cost=" + r.total_cost + ">";
        });

    m.def("load_model", [](const std::string& text) { return io::parse_model(text); },
          py::arg("text"), "Parse a model document from JSON text.");
    m.def("serialize_model",
          [](const io::ModelDocument& doc) { return io::serialize_model(doc); },
          py::arg("document"));
    m.def("load_family", [](const std::string& text) { return io::parse_family(text); },
          py::arg("text"), "Parse a generator-family fixture from JSON text.");

    m.def(
        "signatures",
        [](const io::ModelDocument& doc, std::optional<std::vector<std::string>> obs) {
            return signature_ints(signatures(doc.model, resolve_obs(doc, obs)));
        },
        py::arg("document"), py::arg("obs") = py::none(),
        "Per-state signatures as python ints; bit k marks reachability under "
        "the (k+1)-th observable event.");

    m.def(
        "check",
        [](const io::ModelDocument& doc, std::optional<std::vector<std::string>> obs,
           const std::string& remainder) {
            const auto verdict = is_offline_diagnosable(doc.model, resolve_obs(doc, obs),
                                                        normalized(doc, remainder));
            PyVerdict out;
            out.diagnosable = verdict.diagnosable;
            if (verdict.witness)
                out.witness = std::make_pair(doc.model.state_label(verdict.witness->first),
                                             doc.model.state_label(verdict.witness->second));
            return out;
        },
        py::arg("document"), py::arg("obs") = py::none(), py::arg("remainder") = "cell",
        "Decide off-line diagnosability; returns a Verdict with an optional "
        "witness pair of state labels.");

    m.def(
        "greedy",
        [](const io::ModelDocument& doc, const std::string& remainder) {
            return on_model(doc, remainder, true, [](const auto& o, const auto& c) {
                return greedy_min_oes(o, c);
            });
        },
        py::arg("document"), py::arg("remainder") = "cell");
    m.def("greedy", [](const io::FamilyDocument& doc) {
        return on_family(doc, [](const auto& o, const auto& c) { return greedy_min_oes(o, c); });
    });

    m.def(
        "optimal",
        [](const io::ModelDocument& doc, const std::string& prune, const std::string& remainder) {
            return on_model(doc, remainder, true, [&](const auto& o, const auto& c) {
                return optimal_min_oes(o, c, prune_from_name(prune));
            });
        },
        py::arg("document"), py::arg("prune") = "minl", py::arg("remainder") = "cell");
    m.def(
        "optimal",
        [](const io::FamilyDocument& doc, const std::string& prune) {
            return on_family(doc, [&](const auto& o, const auto& c) {
                return optimal_min_oes(o, c, prune_from_name(prune));
            });
        },
        py::arg("family"), py::arg("prune") = "minl");

    m.def(
        "brute_force",
        [](const io::FamilyDocument& doc, std::size_t max_events) {
            return on_family(doc, [&](const auto& o, const auto& c) {
                return brute_force_min_oes(o, c, max_events);
            });
        },
        py::arg("family"), py::arg("max_events") = 20);

    m.def(
        "nes",
        [](const io::ModelDocument& doc, const std::string& remainder) {
            const ModelOracle oracle(doc.model, normalized(doc, remainder));
            const Bitset nes = necessary_elements(oracle);
            std::vector<std::string> out;
            nes.for_each([&](std::size_t e) { out.push_back(doc.model.event_label(e)); });
            return out;
        },
        py::arg("document"), py::arg("remainder") = "cell",
        "Events whose removal from the full set breaks diagnosability.");
    m.def("nes", [](const io::FamilyDocument& doc) {
        const FamilyOracle oracle(doc.num_events, doc.generators);
        const Bitset nes = necessary_elements(oracle);
        std::vector<std::string> out;
        const auto labels = family_labels(doc.num_events);
        nes.for_each([&](std::size_t e) { out.push_back(labels[e]); });
        return out;
    });

    m.def(
        "generate",
        [](std::size_t states, std::size_t events, double density, std::size_t cells,
           std::uint64_t seed, std::int64_t cost_min, std::int64_t cost_max) {
            gen::GenSpec spec{states, events, density, cells, seed, cost_min, cost_max};
            gen::GeneratedInstance inst = gen::random_model(spec);
            return io::serialize_model(io::ModelDocument{
                std::move(inst.model), std::move(inst.partition), std::move(inst.costs),
                std::nullopt});
        },
        py::arg("states") = 5, py::arg("events") = 4, py::arg("density") = 0.15,
        py::arg("cells") = 2, py::arg("seed") = 0, py::arg("cost_min") = 1,
        py::arg("cost_max") = 20,
        "Seeded random model document as JSON text; identical for identical "
        "arguments.");
}
