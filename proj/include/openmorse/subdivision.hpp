#ifndef OPENMORSE_SUBDIVISION_HPP
#define OPENMORSE_SUBDIVISION_HPP

#include <vector>

#include "complex.hpp"

namespace openmorse {

// Barycentric subdivision as the order complex of the face poset. A cell is
// a chain of base cells, stored as the sorted list of base-cell indices
// (face order refines the canonical cell order, so chains are increasing).
// The carrier of a chain is its maximal element.
struct sd_complex {
    cell_set base;                // cells of X, canonical order
    std::vector<char> base_in_t;  // T membership per base cell
    cell_set cells;               // chains over base indices
    std::vector<char> in_sdt;     // chain lies in sd(T): carrier in T
    std::vector<char> in_sk;      // chain lies entirely in K

    int carrier_index(int cell_idx) const {
        return cells.cells[static_cast<size_t>(cell_idx)].v.back();
    }
    const simplex& carrier(const simplex& chain_cell) const {
        return base.cells[static_cast<size_t>(chain_cell.v.back())];
    }
    bool base_in_k(int base_idx) const { return !base_in_t[static_cast<size_t>(base_idx)]; }
};

inline sd_complex subdivide_pair(const complex_pair& p) {
    sd_complex sd;
    sd.base = p.x;
    sd.base_in_t.resize(static_cast<size_t>(p.x.size()), 0);
    for (int i = 0; i < p.x.size(); ++i)
        if (p.t.contains(p.x.cells[static_cast<size_t>(i)])) sd.base_in_t[static_cast<size_t>(i)] = 1;

    // chains ending at cell c = {[c]} plus every chain ending at a proper
    // face of c, extended by c
    const int n = p.x.size();
    std::vector<std::vector<simplex>> ending(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) {
        ending[static_cast<size_t>(c)].push_back(simplex{c});
        for (const auto& f : p.x.cells[static_cast<size_t>(c)].proper_faces()) {
            int fi = p.x.index_of(f);
            if (fi < 0) fail(errc::not_a_complex, "missing face " + f.str());
            for (const auto& chain : ending[static_cast<size_t>(fi)])
                ending[static_cast<size_t>(c)].push_back(chain.with(c));
        }
    }
    for (int c = 0; c < n; ++c)
        for (auto& chain : ending[static_cast<size_t>(c)]) sd.cells.cells.push_back(std::move(chain));
    sd.cells.normalize();

    sd.in_sdt.resize(static_cast<size_t>(sd.cells.size()), 0);
    sd.in_sk.resize(static_cast<size_t>(sd.cells.size()), 0);
    for (int i = 0; i < sd.cells.size(); ++i) {
        const simplex& ch = sd.cells.cells[static_cast<size_t>(i)];
        sd.in_sdt[static_cast<size_t>(i)] = sd.base_in_t[static_cast<size_t>(ch.v.back())];
        bool all_k = true;
        for (vertex_id e : ch.v)
            if (sd.base_in_t[static_cast<size_t>(e)]) all_k = false;
        sd.in_sk[static_cast<size_t>(i)] = all_k ? 1 : 0;
    }
    return sd;
}

inline sd_complex barycentric_subdivision(const cell_set& x) {
    complex_pair p;
    p.x = x;
    p.k = x;
    return subdivide_pair(p);
}

// The order complex S_K: chains lying entirely in K. A genuine face-closed
// simplicial complex over the barycenter vertices.
inline cell_set order_complex(const sd_complex& sd) {
    cell_set sk;
    for (int i = 0; i < sd.cells.size(); ++i)
        if (sd.in_sk[static_cast<size_t>(i)]) sk.cells.push_back(sd.cells.cells[static_cast<size_t>(i)]);
    return sk;
}

inline cell_set sd_of_t(const sd_complex& sd) {
    cell_set out;
    for (int i = 0; i < sd.cells.size(); ++i)
        if (sd.in_sdt[static_cast<size_t>(i)]) out.cells.push_back(sd.cells.cells[static_cast<size_t>(i)]);
    return out;
}

} // namespace openmorse

#endif
