#ifndef OPENMORSE_COMPLEX_HPP
#define OPENMORSE_COMPLEX_HPP

#include <map>
#include <set>
#include <vector>

#include "simplex.hpp"

namespace openmorse {

// Face closure of a generator list. Idempotent: rebuilding from the result's
// maximal cells gives an equal complex.
inline cell_set build_complex(const std::vector<std::vector<vertex_id>>& generators) {
    std::set<simplex> acc;
    for (const auto& g : generators) {
        if (g.empty()) fail(errc::empty_generator, "generator with no vertices");
        std::vector<vertex_id> vs(g);
        for (vertex_id x : vs)
            if (x < 0) fail(errc::parse_error, "negative vertex id");
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            fail(errc::duplicate_vertex, "repeated vertex in generator");
        simplex top(std::move(vs));
        const unsigned n = static_cast<unsigned>(top.v.size());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            simplex f;
            for (unsigned i = 0; i < n; ++i)
                if (mask & (1u << i)) f.v.push_back(top.v[i]);
            acc.insert(std::move(f));
        }
    }
    cell_set out;
    out.cells.assign(acc.begin(), acc.end());
    out.normalize();
    return out;
}

inline std::vector<simplex> maximal_cells(const cell_set& X) {
    std::vector<simplex> out;
    for (const auto& c : X.cells) {
        bool maximal = true;
        for (const auto& d : X.cells)
            if (c.dim() < d.dim() && c.is_face_of(d)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(c);
    }
    return out;
}

// A complex together with a subcomplex; the open complex K = X \ T.
struct complex_pair {
    cell_set x;
    cell_set t;
    cell_set k; // set difference, not face-closed in general

    const cell_set& open_cells() const { return k; }
};

inline complex_pair build_pair(const std::vector<std::vector<vertex_id>>& x_gens,
                               const std::vector<std::vector<vertex_id>>& t_gens) {
    complex_pair p;
    p.x = build_complex(x_gens);
    p.t = t_gens.empty() ? cell_set{} : build_complex(t_gens);
    for (const auto& c : p.t.cells)
        if (!p.x.contains(c)) fail(errc::not_subcomplex, "cell " + c.str() + " of T is not in X");
    for (const auto& c : p.x.cells)
        if (!p.t.contains(c)) p.k.cells.push_back(c);
    return p;
}

// Maximal length of a chain of K-cells ending at s, minus one: a cell with no
// proper faces in K has height 0.
inline int height(const simplex& s, const cell_set& k) {
    int idx = k.index_of(s);
    if (idx < 0) fail(errc::not_in_complex, "cell " + s.str() + " is not in K");
    std::vector<int> h(k.cells.size(), 0);
    for (size_t i = 0; i < k.cells.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
            if (k.cells[j].is_face_of(k.cells[i]) && k.cells[j].dim() < k.cells[i].dim())
                h[i] = std::max(h[i], h[j] + 1);
        if (static_cast<int>(i) == idx) return h[i];
    }
    return h[static_cast<size_t>(idx)];
}

inline std::vector<int> heights(const cell_set& k) {
    std::vector<int> h(k.cells.size(), 0);
    for (size_t i = 0; i < k.cells.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (k.cells[j].dim() < k.cells[i].dim() && k.cells[j].is_face_of(k.cells[i]))
                h[i] = std::max(h[i], h[j] + 1);
    return h;
}

// Directed facet graph: one edge (coface -> facet) per facet relation with
// both endpoints in the cell set. A matching can mark edges reversed; the
// reversed digraph of a gradient is acyclic (checked, never assumed).
struct hasse_diagram {
    cell_set nodes;
    std::vector<std::pair<int, int>> edges; // (coface index, facet index)
    std::vector<char> reversed;             // parallel to edges

    int node_count() const { return nodes.size(); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int reversed_count() const {
        int n = 0;
        for (char r : reversed) n += r;
        return n;
    }
};

inline hasse_diagram hasse(const cell_set& cells) {
    hasse_diagram h;
    h.nodes = cells;
    for (int i = 0; i < cells.size(); ++i) {
        const simplex& c = cells.cells[static_cast<size_t>(i)];
        if (c.dim() == 0) continue;
        for (const auto& f : c.facets()) {
            int j = cells.index_of(f);
            if (j >= 0) h.edges.emplace_back(i, j);
        }
    }
    h.reversed.assign(h.edges.size(), 0);
    return h;
}

} // namespace openmorse

#endif
