#ifndef OPENMORSE_FUNCTION_HPP
#define OPENMORSE_FUNCTION_HPP

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "field.hpp"

namespace openmorse {

// A real-valued function on the cells of a set, stored parallel to the
// canonical cell order.
struct morse_function {
    cell_set domain;
    std::vector<double> values;

    double at(const simplex& s) const {
        int i = domain.index_of(s);
        if (i < 0) fail(errc::not_in_complex, "no value for cell " + s.str());
        return values[static_cast<size_t>(i)];
    }
};

struct function_violation {
    simplex cell;
    std::string condition; // "coface-count", "facet-count", "exclusivity"
};

struct function_report {
    std::vector<function_violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks the two local counting conditions. On a genuine simplicial complex
// they are automatically exclusive; on an open complex exclusivity is imposed
// as part of validity so the induced pairing stays a matching.
inline std::pair<function_report, gradient_field> validate_function(const morse_function& f) {
    function_report rep;
    const cell_set& dom = f.domain;
    auto facets_of = detail::facet_lists(dom);
    std::vector<std::vector<int>> cofaces_of(static_cast<size_t>(dom.size()));
    for (int i = 0; i < dom.size(); ++i)
        for (int j : facets_of[static_cast<size_t>(i)]) cofaces_of[static_cast<size_t>(j)].push_back(i);

    vector_field v;
    v.domain = dom;
    for (int i = 0; i < dom.size(); ++i) {
        double fc = f.values[static_cast<size_t>(i)];
        int up = 0, down = 0, up_witness = -1;
        for (int j : cofaces_of[static_cast<size_t>(i)])
            if (f.values[static_cast<size_t>(j)] <= fc) {
                ++up;
                up_witness = j;
            }
        for (int j : facets_of[static_cast<size_t>(i)])
            if (f.values[static_cast<size_t>(j)] >= fc) ++down;
        const simplex& c = dom.cells[static_cast<size_t>(i)];
        if (up > 1) rep.violations.push_back({c, "coface-count"});
        if (down > 1) rep.violations.push_back({c, "facet-count"});
        if (up >= 1 && down >= 1) rep.violations.push_back({c, "exclusivity"});
        if (up == 1 && down == 0)
            v.pairs.emplace_back(c, dom.cells[static_cast<size_t>(up_witness)]);
    }
    if (!rep.ok())
        return {rep, gradient_field{vector_field{dom, {}}}};
    return {rep, gradient_field::checked(std::move(v))};
}

inline gradient_field gradient_from_function(const morse_function& f) {
    auto [rep, g] = validate_function(f);
    if (!rep.ok())
        fail(errc::not_morse, "condition " + rep.violations.front().condition + " fails at " +
                                  rep.violations.front().cell.str());
    return g;
}

// Builds an injective discrete Morse function with the given gradient,
// honoring preset values exactly. Cells are ranked by a sinks-first
// topological placement of the modified facet digraph that releases presets
// in value order; ranks between consecutive presets are interpolated
// linearly, ranks outside them advance in unit steps.
inline morse_function function_from_gradient(const gradient_field& g,
                                             const std::map<simplex, double>& presets = {}) {
    const cell_set& dom = g.domain();
    const int n = dom.size();
    auto m = detail::index_matching(g.field);
    auto down = detail::facet_lists(dom);

    // successors in the modified digraph (value must strictly decrease along
    // every edge)
    std::vector<std::vector<int>> succ(static_cast<size_t>(n)), pred(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
        size_t uu = static_cast<size_t>(u);
        if (m.tail[uu]) succ[uu].push_back(m.partner[uu]);
        for (int w : down[uu])
            if (!(m.tail[static_cast<size_t>(w)] && m.partner[static_cast<size_t>(w)] == u))
                succ[uu].push_back(w);
    }
    for (int u = 0; u < n; ++u)
        for (int w : succ[static_cast<size_t>(u)]) pred[static_cast<size_t>(w)].push_back(u);

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> preset(static_cast<size_t>(n), std::numeric_limits<double>::quiet_NaN());
    for (const auto& [cell, val] : presets) {
        int i = dom.index_of(cell);
        if (i < 0) fail(errc::not_in_complex, "preset on " + cell.str() + " outside the domain");
        preset[static_cast<size_t>(i)] = val;
    }
    auto has_preset = [&](int i) { return !std::isnan(preset[static_cast<size_t>(i)]); };

    // topological order, canonical-least-first among ready nodes
    std::vector<int> indeg(static_cast<size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        for (int w : succ[static_cast<size_t>(u)]) ++indeg[static_cast<size_t>(w)];
    std::set<int> ready;
    for (int u = 0; u < n; ++u)
        if (indeg[static_cast<size_t>(u)] == 0) ready.insert(u);
    std::vector<int> topo;
    topo.reserve(static_cast<size_t>(n));
    while (!ready.empty()) {
        int u = *ready.begin();
        ready.erase(ready.begin());
        topo.push_back(u);
        for (int w : succ[static_cast<size_t>(u)])
            if (--indeg[static_cast<size_t>(w)] == 0) ready.insert(w);
    }
    if (static_cast<int>(topo.size()) != n) fail(errc::cyclic_field, "field has a closed path");

    // tightest preset bounds: low = max preset reachable below, up = min
    // preset ancestor above
    std::vector<double> low(static_cast<size_t>(n), -inf), up(static_cast<size_t>(n), inf);
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int u = *it;
        for (int w : succ[static_cast<size_t>(u)]) {
            double below = has_preset(w) ? preset[static_cast<size_t>(w)] : low[static_cast<size_t>(w)];
            low[static_cast<size_t>(u)] = std::max(low[static_cast<size_t>(u)], below);
        }
        if (has_preset(u) && low[static_cast<size_t>(u)] >= preset[static_cast<size_t>(u)])
            fail(errc::preset_conflict, "preset at " + dom.cells[static_cast<size_t>(u)].str() +
                                            " does not decrease along a directed path");
    }
    for (int u : topo) {
        for (int p : pred[static_cast<size_t>(u)]) {
            double above = has_preset(p) ? preset[static_cast<size_t>(p)] : up[static_cast<size_t>(p)];
            up[static_cast<size_t>(u)] = std::min(up[static_cast<size_t>(u)], above);
        }
        if (has_preset(u) && up[static_cast<size_t>(u)] <= preset[static_cast<size_t>(u)])
            fail(errc::preset_conflict, "preset at " + dom.cells[static_cast<size_t>(u)].str() +
                                            " does not decrease along a directed path");
    }

    // Placement order from sinks upward, holding each preset back until every
    // smaller-valued preset is placed. The resulting rank increases strictly
    // along reversed edges, so any increasing reparameterization of rank that
    // hits the presets exactly is a valid injective extension; values between
    // consecutive presets are spread linearly.
    std::vector<std::pair<double, int>> preset_order;
    for (int u = 0; u < n; ++u)
        if (has_preset(u)) preset_order.emplace_back(preset[static_cast<size_t>(u)], u);
    std::sort(preset_order.begin(), preset_order.end());
    for (size_t i = 0; i + 1 < preset_order.size(); ++i)
        if (preset_order[i].first == preset_order[i + 1].first)
            fail(errc::preset_conflict,
                 "two presets share the value at " +
                     dom.cells[static_cast<size_t>(preset_order[i].second)].str());

    std::vector<int> succ_unplaced(static_cast<size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        succ_unplaced[static_cast<size_t>(u)] = static_cast<int>(succ[static_cast<size_t>(u)].size());
    std::set<int> ready_plain;
    std::set<int> ready_preset;
    for (int u = 0; u < n; ++u)
        if (succ_unplaced[static_cast<size_t>(u)] == 0)
            (has_preset(u) ? ready_preset : ready_plain).insert(u);

    std::vector<int> rank(static_cast<size_t>(n), -1);
    std::vector<std::pair<int, double>> anchors; // (rank, preset value), increasing in both
    size_t next_preset = 0;
    for (int step = 0; step < n; ++step) {
        int u;
        if (!ready_plain.empty()) {
            u = *ready_plain.begin();
            ready_plain.erase(ready_plain.begin());
        } else {
            if (next_preset >= preset_order.size() ||
                !ready_preset.count(preset_order[next_preset].second))
                fail(errc::preset_conflict, "presets cannot be ordered along the field");
            u = preset_order[next_preset].second;
            ready_preset.erase(u);
        }
        if (has_preset(u)) {
            if (preset_order[next_preset].second != u)
                fail(errc::preset_conflict, "presets cannot be ordered along the field");
            anchors.emplace_back(step, preset[static_cast<size_t>(u)]);
            ++next_preset;
        }
        rank[static_cast<size_t>(u)] = step;
        for (int w : pred[static_cast<size_t>(u)])
            if (--succ_unplaced[static_cast<size_t>(w)] == 0)
                (has_preset(w) ? ready_preset : ready_plain).insert(w);
    }

    std::vector<double> value(static_cast<size_t>(n), 0.0);
    auto value_of_rank = [&](int r) {
        if (anchors.empty()) return static_cast<double>(r);
        if (r <= anchors.front().first)
            return anchors.front().second - static_cast<double>(anchors.front().first - r);
        if (r >= anchors.back().first)
            return anchors.back().second + static_cast<double>(r - anchors.back().first);
        auto it2 = std::lower_bound(anchors.begin(), anchors.end(), std::pair<int, double>{r, -std::numeric_limits<double>::infinity()});
        auto [r2, v2] = *it2;
        auto [r1, v1] = *(it2 - 1);
        return v1 + (v2 - v1) * static_cast<double>(r - r1) / static_cast<double>(r2 - r1);
    };
    for (int u = 0; u < n; ++u) value[static_cast<size_t>(u)] = value_of_rank(rank[static_cast<size_t>(u)]);
    return morse_function{dom, std::move(value)};
}

} // namespace openmorse

#endif
