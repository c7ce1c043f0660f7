#include "desdiag/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

#include <json.hpp>

#include "desdiag/errors.hpp"

namespace desdiag {
namespace io {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());  // message carries byte/line position
    }
}

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const char* where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ValidationError(std::string("unknown field '") + key + "' in " + where);
    }
}

const json& require_field(const json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError(std::string("missing field '") + key + "' in " + where);
    return *it;
}

std::vector<std::string> string_array(const json& value, const char* what) {
    if (!value.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<std::string> out;
    out.reserve(value.size());
    for (const auto& entry : value) {
        if (!entry.is_string())
            throw ValidationError(std::string(what) + " entries must be strings");
        out.push_back(entry.get<std::string>());
    }
    return out;
}

Decimal json_to_decimal(const json& value, const std::string& context) {
    try {
        if (value.is_string()) return Decimal::parse(value.get<std::string>());
        if (value.is_number_integer()) return Decimal::from_int(value.get<std::int64_t>());
        if (value.is_number_unsigned()) {
            const auto u = value.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
                throw ParseError("value out of range");
            return Decimal::from_int(static_cast<std::int64_t>(u));
        }
        if (value.is_number_float()) {
            // Shortest round-trip text recovers the decimal the author wrote
            // for ordinary literals like 0.5 or 13.25.
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, value.get<double>());
            return Decimal::parse(std::string_view(buf, res.ptr - buf));
        }
    } catch (const ParseError& e) {
        throw ParseError(context + ": " + e.what());
    }
    throw ValidationError(context + ": must be a number or a decimal string");
}

std::size_t lookup_event(const Model& model, const std::string& label, const char* where) {
    auto pos = model.event_pos(label);
    if (!pos)
        throw ValidationError(std::string("unknown event '") + label + "' in " + where);
    return *pos;
}

std::size_t lookup_state(const Model& model, const std::string& label, const char* where) {
    auto pos = model.state_pos(label);
    if (!pos)
        throw ValidationError(std::string("unknown state '") + label + "' in " + where);
    return *pos;
}

}  // namespace

ModelDocument parse_model(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ValidationError("model document must be a JSON object");
    reject_unknown_fields(doc, {"events", "states", "transitions", "partition", "costs",
                                "observable"},
                          "model document");

    std::vector<std::string> events =
        string_array(require_field(doc, "events", "model document"), "'events'");
    std::vector<std::string> states =
        string_array(require_field(doc, "states", "model document"), "'states'");

    // Label validation happens in the Model constructor; build a throwaway
    // transition-free model first so references can be resolved by label.
    Model skeleton(events, states, {});

    const json& jtrans = require_field(doc, "transitions", "model document");
    if (!jtrans.is_array()) throw ValidationError("'transitions' must be an array");
    std::vector<Transition> transitions;
    for (const auto& entry : jtrans) {
        if (!entry.is_object())
            throw ValidationError("'transitions' entries must be objects");
        reject_unknown_fields(entry, {"event", "from", "to"}, "transition");
        const json& jevent = require_field(entry, "event", "transition");
        const json& jfrom = require_field(entry, "from", "transition");
        if (!jevent.is_string() || !jfrom.is_string())
            throw ValidationError("transition 'event' and 'from' must be strings");
        const std::size_t event = lookup_event(skeleton, jevent.get<std::string>(), "transitions");
        const std::size_t from = lookup_state(skeleton, jfrom.get<std::string>(), "transitions");
        for (const std::string& to :
             string_array(require_field(entry, "to", "transition"), "transition 'to'"))
            transitions.push_back({event, from, lookup_state(skeleton, to, "transitions")});
    }

    const json& jpart = require_field(doc, "partition", "model document");
    if (!jpart.is_array()) throw ValidationError("'partition' must be an array of arrays");
    DesiredPartition partition;
    Bitset seen(states.size());
    for (const auto& jcell : jpart) {
        std::vector<std::size_t> cell;
        for (const std::string& label : string_array(jcell, "partition cell")) {
            const std::size_t s = lookup_state(skeleton, label, "partition");
            if (seen.test(s))
                throw ValidationError("partition cells overlap on state '" + label + "'");
            seen.set(s);
            cell.push_back(s);
        }
        if (cell.empty()) throw ValidationError("partition contains an empty cell");
        std::sort(cell.begin(), cell.end());
        partition.cells.push_back(std::move(cell));
    }

    std::optional<CostTable> costs;
    if (auto it = doc.find("costs"); it != doc.end()) {
        if (!it->is_object()) throw ValidationError("'costs' must be an object");
        std::vector<Decimal> by_event(events.size());
        std::vector<bool> present(events.size(), false);
        for (const auto& [label, jvalue] : it->items()) {
            const std::size_t e = lookup_event(skeleton, label, "costs");
            Decimal value = json_to_decimal(jvalue, "cost for event '" + label + "'");
            if (value.is_negative())
                throw ValidationError("negative cost for event '" + label + "'");
            by_event[e] = std::move(value);
            present[e] = true;
        }
        for (std::size_t e = 0; e < events.size(); ++e)
            if (!present[e])
                throw ValidationError("missing cost for event '" + events[e] + "'");
        costs = CostTable(std::move(by_event));
    }

    std::optional<Bitset> observable;
    if (auto it = doc.find("observable"); it != doc.end()) {
        Bitset obs(events.size());
        for (const std::string& label : string_array(*it, "'observable'")) {
            const std::size_t e = lookup_event(skeleton, label, "observable");
            if (obs.test(e))
                throw ValidationError("duplicate event '" + label + "' in observable");
            obs.set(e);
        }
        observable = std::move(obs);
    }

    return ModelDocument{Model(std::move(events), std::move(states), transitions),
                         std::move(partition), std::move(costs), std::move(observable)};
}

std::string serialize_model(const ModelDocument& doc) {
    const Model& m = doc.model;
    ordered_json out;
    out["events"] = m.event_labels();
    out["states"] = m.state_labels();

    ordered_json jtrans = ordered_json::array();
    for (std::size_t e = 0; e < m.num_events(); ++e) {
        for (std::size_t from = 0; from < m.num_states(); ++from) {
            const Bitset& targets = m.targets(e, from);
            if (targets.none()) continue;
            ordered_json entry;
            entry["event"] = m.event_label(e);
            entry["from"] = m.state_label(from);
            ordered_json to = ordered_json::array();
            targets.for_each([&](std::size_t s) { to.push_back(m.state_label(s)); });
            entry["to"] = std::move(to);
            jtrans.push_back(std::move(entry));
        }
    }
    out["transitions"] = std::move(jtrans);

    ordered_json jpart = ordered_json::array();
    for (const auto& cell : doc.partition.cells) {
        ordered_json jcell = ordered_json::array();
        for (std::size_t s : cell) jcell.push_back(m.state_label(s));
        jpart.push_back(std::move(jcell));
    }
    out["partition"] = std::move(jpart);

    if (doc.costs) {
        ordered_json jcosts = ordered_json::object();
        for (std::size_t e = 0; e < m.num_events(); ++e)
            jcosts[m.event_label(e)] = doc.costs->cost(e).str();
        out["costs"] = std::move(jcosts);
    }
    if (doc.observable) {
        ordered_json jobs = ordered_json::array();
        doc.observable->for_each([&](std::size_t e) { jobs.push_back(m.event_label(e)); });
        out["observable"] = std::move(jobs);
    }

    return out.dump(2) + "\n";
}

FamilyDocument parse_family(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ValidationError("family document must be a JSON object");
    reject_unknown_fields(doc, {"n", "costs", "generators"}, "family document");

    const json& jn = require_field(doc, "n", "family document");
    if (!jn.is_number_unsigned() && !jn.is_number_integer())
        throw ValidationError("'n' must be a nonnegative integer");
    const auto n_signed = jn.get<std::int64_t>();
    if (n_signed < 0) throw ValidationError("'n' must be a nonnegative integer");
    const std::size_t n = static_cast<std::size_t>(n_signed);

    const json& jcosts = require_field(doc, "costs", "family document");
    if (!jcosts.is_array() || jcosts.size() != n)
        throw ValidationError("'costs' must be an array of n values");
    std::vector<Decimal> by_event(n);
    for (std::size_t i = 0; i < n; ++i) {
        by_event[i] = json_to_decimal(jcosts[i], "cost at index " + std::to_string(i + 1));
        if (by_event[i].is_negative())
            throw ValidationError("negative cost at index " + std::to_string(i + 1));
    }

    const json& jgens = require_field(doc, "generators", "family document");
    if (!jgens.is_array()) throw ValidationError("'generators' must be an array of arrays");
    std::vector<Bitset> generators;
    for (const auto& jgen : jgens) {
        if (!jgen.is_array())
            throw ValidationError("'generators' must be an array of arrays");
        Bitset gen(n);
        for (const auto& jidx : jgen) {
            if (!jidx.is_number_integer() && !jidx.is_number_unsigned())
                throw ValidationError("generator members must be 1-based event indices");
            const auto idx = jidx.get<std::int64_t>();
            if (idx < 1 || static_cast<std::size_t>(idx) > n)
                throw ValidationError("generator member " + std::to_string(idx) +
                                      " is outside 1.." + std::to_string(n));
            if (gen.test(static_cast<std::size_t>(idx - 1)))
                throw ValidationError("duplicate member " + std::to_string(idx) +
                                      " in a generator");
            gen.set(static_cast<std::size_t>(idx - 1));
        }
        generators.push_back(std::move(gen));
    }

    return FamilyDocument{n, CostTable(std::move(by_event)), std::move(generators)};
}

}  // namespace io
}  // namespace desdiag
