#ifndef OPENMORSE_IO_HPP
#define OPENMORSE_IO_HPP

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "function.hpp"
#include "complex.hpp"

namespace openmorse {

using json = nlohmann::ordered_json;

// Parsed input bundle. Vertex ids from the file are mapped through a symbol
// table onto dense indices; `names` maps them back for display. Field and
// function data are kept raw so `validate` can report problems instead of
// failing; the checked accessors throw on bad input.
struct input_documents {
    std::vector<long long> names; // dense vertex -> original id
    std::map<long long, std::string> labels;
    complex_pair pair;
    std::optional<vector_field> field_raw;                 // on K
    std::optional<std::map<simplex, double>> values_raw;   // on K (or all of X)

    gradient_field field() const {
        if (!field_raw) fail(errc::parse_error, "no field document given");
        return gradient_field::checked(*field_raw);
    }
    bool has_field() const { return field_raw.has_value(); }
    bool has_function() const { return values_raw.has_value(); }
};

namespace io_detail {

inline std::vector<std::vector<long long>> parse_generators(const json& j, const std::string& key) {
    std::vector<std::vector<long long>> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) fail(errc::parse_error, key + " must be an array of vertex lists");
    for (const auto& g : j[key]) {
        if (!g.is_array()) fail(errc::parse_error, key + " entries must be vertex lists");
        std::vector<long long> verts;
        for (const auto& v : g) {
            if (!v.is_number_integer()) fail(errc::parse_error, "vertex ids must be integers");
            long long id = v.get<long long>();
            if (id < 0) fail(errc::parse_error, "vertex ids must be non-negative");
            verts.push_back(id);
        }
        out.push_back(std::move(verts));
    }
    return out;
}

} // namespace io_detail

// Fills in values for T-cells strictly below the values on K so every cell
// of T is critical, then validates the function on the whole complex.
inline morse_function complete_function_on_pair(const complex_pair& p,
                                                const std::map<simplex, double>& k_values) {
    morse_function f;
    f.domain = p.x;
    f.values.assign(static_cast<size_t>(p.x.size()), 0.0);
    double min_k = 0.0;
    bool first = true;
    std::vector<char> have(static_cast<size_t>(p.x.size()), 0);
    for (const auto& [cell, val] : k_values) {
        int i = p.x.index_of(cell);
        if (i < 0) fail(errc::not_in_complex, "function value on unknown cell " + cell.str());
        f.values[static_cast<size_t>(i)] = val;
        have[static_cast<size_t>(i)] = 1;
        if (first || val < min_k) min_k = val, first = false;
    }
    int missing = 0;
    for (int i = 0; i < p.x.size(); ++i)
        if (!have[static_cast<size_t>(i)]) ++missing;
    int slot = 0;
    for (int i = 0; i < p.x.size(); ++i) {
        if (have[static_cast<size_t>(i)]) continue;
        const simplex& c = p.x.cells[static_cast<size_t>(i)];
        if (p.k.contains(c))
            fail(errc::not_in_complex, "function misses K-cell " + c.str());
        f.values[static_cast<size_t>(i)] = min_k - static_cast<double>(missing - slot);
        ++slot;
    }
    return f;
}

inline input_documents parse_inputs(const std::vector<json>& docs) {
    json merged;
    for (const auto& d : docs) {
        if (!d.is_object()) fail(errc::parse_error, "input document must be an object");
        for (auto it = d.begin(); it != d.end(); ++it) merged[it.key()] = it.value();
    }
    if (!merged.contains("X")) fail(errc::parse_error, "missing key X");

    input_documents in;
    auto xg = io_detail::parse_generators(merged, "X");
    auto tg = io_detail::parse_generators(merged, "T");

    std::set<long long> ids;
    for (const auto& g : xg)
        for (long long v : g) ids.insert(v);
    for (const auto& g : tg)
        for (long long v : g) ids.insert(v);
    in.names.assign(ids.begin(), ids.end());
    std::map<long long, int> dense;
    for (size_t i = 0; i < in.names.size(); ++i) dense[in.names[i]] = static_cast<int>(i);

    auto remap = [&](const std::vector<std::vector<long long>>& gens) {
        std::vector<std::vector<vertex_id>> out;
        for (const auto& g : gens) {
            std::vector<vertex_id> m;
            for (long long v : g) m.push_back(dense.at(v));
            out.push_back(std::move(m));
        }
        return out;
    };
    in.pair = build_pair(remap(xg), remap(tg));

    if (merged.contains("labels")) {
        if (!merged["labels"].is_object()) fail(errc::parse_error, "labels must be an object");
        for (auto it = merged["labels"].begin(); it != merged["labels"].end(); ++it) {
            try {
                in.labels[std::stoll(it.key())] = it.value().get<std::string>();
            } catch (const std::exception&) {
                fail(errc::parse_error, "label keys must be vertex ids");
            }
        }
    }

    auto cell_of = [&](const json& jcell) {
        if (!jcell.is_array()) fail(errc::parse_error, "cells must be vertex lists");
        std::vector<vertex_id> verts;
        for (const auto& v : jcell) {
            if (!v.is_number_integer()) fail(errc::parse_error, "vertex ids must be integers");
            auto it = dense.find(v.get<long long>());
            if (it == dense.end()) fail(errc::parse_error, "unknown vertex id in cell");
            verts.push_back(it->second);
        }
        std::sort(verts.begin(), verts.end());
        return simplex(std::move(verts));
    };

    if (merged.contains("pairs")) {
        vector_field v;
        v.domain = in.pair.k;
        for (const auto& pr : merged["pairs"]) {
            if (!pr.is_array() || pr.size() != 2)
                fail(errc::parse_error, "field pairs must be [facet, coface] lists");
            v.pairs.emplace_back(cell_of(pr[0]), cell_of(pr[1]));
        }
        in.field_raw = std::move(v);
    }

    if (merged.contains("values")) {
        std::map<simplex, double> values;
        for (const auto& entry : merged["values"]) {
            if (!entry.is_array() || entry.size() != 2 || !entry[1].is_number())
                fail(errc::parse_error, "function values must be [cell, value] entries");
            values[cell_of(entry[0])] = entry[1].get<double>();
        }
        in.values_raw = std::move(values);
    }
    return in;
}

// Completes the parsed values to all of X and validates them as a discrete
// Morse function.
inline morse_function function_on_x(const input_documents& in) {
    if (!in.values_raw) fail(errc::parse_error, "no function document given");
    morse_function f = complete_function_on_pair(in.pair, *in.values_raw);
    auto [rep, grad] = validate_function(f);
    if (!rep.ok())
        fail(errc::not_morse, "condition " + rep.violations.front().condition + " fails at " +
                                  rep.violations.front().cell.str());
    return f;
}

inline std::string display_vertex(const input_documents& in, vertex_id dense) {
    long long orig = in.names[static_cast<size_t>(dense)];
    auto it = in.labels.find(orig);
    return it != in.labels.end() ? it->second : std::to_string(orig);
}

inline json cell_to_json(const input_documents& in, const simplex& c) {
    json out = json::array();
    for (vertex_id v : c.v) out.push_back(in.names[static_cast<size_t>(v)]);
    return out;
}

inline json serialize_pair(const input_documents& in) {
    json out;
    out["X"] = json::array();
    for (const auto& c : maximal_cells(in.pair.x)) out["X"].push_back(cell_to_json(in, c));
    out["T"] = json::array();
    for (const auto& c : maximal_cells(in.pair.t)) out["T"].push_back(cell_to_json(in, c));
    if (!in.labels.empty()) {
        json l = json::object();
        for (const auto& [k, v] : in.labels) l[std::to_string(k)] = v;
        out["labels"] = l;
    }
    if (in.field_raw) {
        out["pairs"] = json::array();
        for (const auto& [a, b] : in.field_raw->pairs)
            out["pairs"].push_back(json::array({cell_to_json(in, a), cell_to_json(in, b)}));
    }
    if (in.values_raw) {
        out["values"] = json::array();
        for (const auto& [cell, val] : *in.values_raw)
            out["values"].push_back(json::array({cell_to_json(in, cell), val}));
    }
    return out;
}

// Graph-description export. Gradient pairs appear as reversed (facet ->
// coface) edges with a distinguishing attribute; critical cells are flagged.
inline std::string export_dot(const cell_set& cells, const gradient_field* field,
                              const std::function<std::string(const simplex&)>& name) {
    std::vector<int> partner(static_cast<size_t>(cells.size()), -1);
    std::vector<char> tail(static_cast<size_t>(cells.size()), 0);
    if (field) {
        auto m = detail::index_matching(field->field);
        partner = m.partner;
        tail.assign(m.tail.begin(), m.tail.end());
    }
    std::ostringstream os;
    os << "digraph hasse {\n";
    for (int i = 0; i < cells.size(); ++i) {
        os << "  \"" << name(cells.cells[static_cast<size_t>(i)]) << "\"";
        if (field && partner[static_cast<size_t>(i)] < 0) os << " [color=red, penwidth=2]";
        os << ";\n";
    }
    for (int i = 0; i < cells.size(); ++i) {
        const simplex& c = cells.cells[static_cast<size_t>(i)];
        for (const auto& f : c.facets()) {
            int j = cells.index_of(f);
            if (j < 0) continue;
            bool reversed = tail[static_cast<size_t>(j)] && partner[static_cast<size_t>(j)] == i;
            if (reversed)
                os << "  \"" << name(f) << "\" -> \"" << name(c) << "\" [color=blue, style=bold];\n";
            else
                os << "  \"" << name(c) << "\" -> \"" << name(f) << "\";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace openmorse

#endif
