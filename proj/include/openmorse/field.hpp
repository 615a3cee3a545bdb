#ifndef OPENMORSE_FIELD_HPP
#define OPENMORSE_FIELD_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"

namespace openmorse {

// A discrete vector field: a partial matching of cells with their facets.
struct vector_field {
    cell_set domain;
    std::vector<std::pair<simplex, simplex>> pairs; // (facet, coface)

    void normalize() { std::sort(pairs.begin(), pairs.end()); }
};

struct field_violation {
    std::string kind; // "non-facet", "cell-reused", "outside-domain"
    simplex a, b;
};

inline std::vector<field_violation> validate_field(const vector_field& v) {
    std::vector<field_violation> out;
    std::map<simplex, int> uses;
    for (const auto& [a, b] : v.pairs) {
        if (!v.domain.contains(a)) out.push_back({"outside-domain", a, b});
        if (!v.domain.contains(b)) out.push_back({"outside-domain", b, a});
        if (!a.is_facet_of(b)) out.push_back({"non-facet", a, b});
        ++uses[a];
        ++uses[b];
    }
    for (const auto& [cell, n] : uses)
        if (n > 1) out.push_back({"cell-reused", cell, cell});
    return out;
}

namespace detail {

// partner[i] = index of the matched cell, -1 if critical; tail[i] set when
// the cell is the facet side of its pair.
struct matching_index {
    std::vector<int> partner;
    std::vector<char> tail;
};

inline matching_index index_matching(const vector_field& v) {
    matching_index m;
    m.partner.assign(static_cast<size_t>(v.domain.size()), -1);
    m.tail.assign(static_cast<size_t>(v.domain.size()), 0);
    for (const auto& [a, b] : v.pairs) {
        int ia = v.domain.index_of(a), ib = v.domain.index_of(b);
        if (ia < 0 || ib < 0) fail(errc::not_in_complex, "field pair outside its domain");
        m.partner[static_cast<size_t>(ia)] = ib;
        m.partner[static_cast<size_t>(ib)] = ia;
        m.tail[static_cast<size_t>(ia)] = 1;
    }
    return m;
}

// Facet adjacency within the cell set, computed once.
inline std::vector<std::vector<int>> facet_lists(const cell_set& cs) {
    std::vector<std::vector<int>> down(static_cast<size_t>(cs.size()));
    for (int i = 0; i < cs.size(); ++i)
        for (const auto& f : cs.cells[static_cast<size_t>(i)].facets()) {
            int j = cs.index_of(f);
            if (j >= 0) down[static_cast<size_t>(i)].push_back(j);
        }
    return down;
}

inline bool digraph_has_cycle(int n, const std::function<void(int, std::vector<int>&)>& succ) {
    std::vector<int> color(static_cast<size_t>(n), 0);
    std::vector<int> stack, next;
    for (int s = 0; s < n; ++s) {
        if (color[static_cast<size_t>(s)]) continue;
        // iterative DFS with explicit phase tracking
        std::vector<std::pair<int, size_t>> frames;
        std::vector<std::vector<int>> succs;
        frames.emplace_back(s, 0);
        succs.emplace_back();
        succ(s, succs.back());
        color[static_cast<size_t>(s)] = 1;
        while (!frames.empty()) {
            auto& [u, i] = frames.back();
            if (i < succs.back().size()) {
                int w = succs.back()[i++];
                if (color[static_cast<size_t>(w)] == 1) return true;
                if (color[static_cast<size_t>(w)] == 0) {
                    color[static_cast<size_t>(w)] = 1;
                    frames.emplace_back(w, 0);
                    succs.emplace_back();
                    succ(w, succs.back());
                }
            } else {
                color[static_cast<size_t>(u)] = 2;
                frames.pop_back();
                succs.pop_back();
            }
        }
    }
    return false;
}

// Route 1: the facet digraph with matched edges reversed must be acyclic.
inline bool modified_hasse_acyclic(const vector_field& v) {
    auto m = index_matching(v);
    auto down = facet_lists(v.domain);
    auto succ = [&](int u, std::vector<int>& out) {
        size_t uu = static_cast<size_t>(u);
        if (m.tail[uu]) out.push_back(m.partner[uu]); // reversed edge
        for (int w : down[uu])
            if (!(m.tail[static_cast<size_t>(w)] && m.partner[static_cast<size_t>(w)] == u))
                out.push_back(w);
    };
    return !digraph_has_cycle(v.domain.size(), succ);
}

// Route 2: no closed V-path. Tail-to-tail step graph: a -> a' when a' is a
// facet of partner(a) other than a and a' is itself a tail.
inline bool no_closed_vpath(const vector_field& v) {
    auto m = index_matching(v);
    auto down = facet_lists(v.domain);
    auto succ = [&](int u, std::vector<int>& out) {
        size_t uu = static_cast<size_t>(u);
        if (!m.tail[uu]) return;
        int b = m.partner[uu];
        for (int w : down[static_cast<size_t>(b)])
            if (w != u && m.tail[static_cast<size_t>(w)]) out.push_back(w);
    };
    return !digraph_has_cycle(v.domain.size(), succ);
}

} // namespace detail

inline bool is_acyclic(const vector_field& v) {
    bool a = detail::modified_hasse_acyclic(v);
    bool b = detail::no_closed_vpath(v);
    if (a != b) fail(errc::global_cycle, "acyclicity characterizations disagree");
    return a;
}

// Facet graph of the field's domain with the matched edges marked reversed.
inline hasse_diagram modified_hasse(const vector_field& v) {
    hasse_diagram h = hasse(v.domain);
    auto m = detail::index_matching(v);
    for (size_t e = 0; e < h.edges.size(); ++e) {
        auto [up, down] = h.edges[e];
        if (m.tail[static_cast<size_t>(down)] && m.partner[static_cast<size_t>(down)] == up)
            h.reversed[e] = 1;
    }
    return h;
}

// A vector field whose acyclicity has been verified.
struct gradient_field {
    vector_field field;

    static gradient_field checked(vector_field v) {
        v.normalize();
        auto bad = validate_field(v);
        if (!bad.empty())
            fail(errc::not_in_complex, "malformed field: " + bad.front().kind + " at " + bad.front().a.str());
        if (!is_acyclic(v)) fail(errc::cyclic_field, "field has a closed path");
        return gradient_field{std::move(v)};
    }

    const cell_set& domain() const { return field.domain; }
};

// Unpaired cells, grouped by dimension.
inline std::vector<std::vector<simplex>> critical_cells(const gradient_field& g) {
    auto m = detail::index_matching(g.field);
    int d = g.domain().dim();
    std::vector<std::vector<simplex>> out(static_cast<size_t>(std::max(0, d + 1)));
    for (int i = 0; i < g.domain().size(); ++i)
        if (m.partner[static_cast<size_t>(i)] < 0) {
            const simplex& c = g.domain().cells[static_cast<size_t>(i)];
            out[static_cast<size_t>(c.dim())].push_back(c);
        }
    return out;
}

inline std::vector<int> critical_counts(const gradient_field& g) {
    auto cc = critical_cells(g);
    std::vector<int> n;
    n.reserve(cc.size());
    for (const auto& cells : cc) n.push_back(static_cast<int>(cells.size()));
    return n;
}

// An alternating path a_0 < b_0 > a_1 < b_1 > ... > a_r stored as the flat
// cell sequence [a_0, b_0, a_1, ..., a_r].
struct vpath {
    std::vector<simplex> cells;
    int step_count() const { return static_cast<int>(cells.size()) / 2; }
};

// All gradient paths from facets of `from` to `to`, both critical,
// dim(from) = dim(to) + 1. Deterministic order via canonical facet iteration.
inline std::vector<vpath> enumerate_vpaths(const gradient_field& g, const simplex& from,
                                           const simplex& to) {
    if (from.dim() != to.dim() + 1)
        fail(errc::dimension_mismatch, "path endpoints must have consecutive dimensions");
    const cell_set& dom = g.domain();
    auto m = detail::index_matching(g.field);
    std::vector<vpath> out;
    std::vector<simplex> cur;

    std::function<void(int)> walk = [&](int a) {
        size_t sa = static_cast<size_t>(a);
        cur.push_back(dom.cells[sa]);
        if (dom.cells[sa] == to) {
            out.push_back({cur});
        } else if (m.tail[sa]) {
            int b = m.partner[sa];
            cur.push_back(dom.cells[static_cast<size_t>(b)]);
            for (const auto& f : dom.cells[static_cast<size_t>(b)].facets()) {
                int j = dom.index_of(f);
                if (j >= 0 && j != a) walk(j);
            }
            cur.pop_back();
        }
        cur.pop_back();
    };

    for (const auto& f : from.facets()) {
        int j = dom.index_of(f);
        if (j >= 0) walk(j);
    }
    return out;
}

} // namespace openmorse

#endif
