#ifndef OPENMORSE_CHAIN_COMPLEX_HPP
#define OPENMORSE_CHAIN_COMPLEX_HPP

#include <string>
#include <vector>

#include "complex.hpp"
#include "snf.hpp"

namespace openmorse {

// Integer chain complex: boundary[i] maps dimension-i chains to
// dimension-(i-1) chains (columns = i-cells). boundary[0] has zero rows.
// `mod2` marks complexes whose entries are already reduced mod 2.
struct chain_complex_z {
    std::vector<int_matrix> boundary;
    std::vector<std::vector<std::string>> basis; // labels per dimension
    bool mod2 = false;

    int top_dim() const { return static_cast<int>(boundary.size()) - 1; }
    int rank_of_chains(int i) const {
        if (i < 0 || i > top_dim()) return 0;
        return boundary[static_cast<size_t>(i)].cols;
    }

    bool boundary_squared_zero() const {
        for (size_t i = 0; i + 1 < boundary.size(); ++i)
            if (!multiply(boundary[i], boundary[i + 1]).is_zero()) return false;
        return true;
    }
};

// Standard simplicial boundary over the sorted-vertex orientation. The cell
// family must be face-closed.
inline chain_complex_z simplicial_chain(const cell_set& cells) {
    chain_complex_z cc;
    int d = cells.dim();
    if (d < 0) return cc;
    std::vector<std::vector<int>> by_dim(static_cast<size_t>(d + 1));
    for (int i = 0; i < cells.size(); ++i)
        by_dim[static_cast<size_t>(cells.cells[static_cast<size_t>(i)].dim())].push_back(i);

    cc.boundary.resize(static_cast<size_t>(d + 1));
    cc.basis.resize(static_cast<size_t>(d + 1));
    std::map<int, int> pos; // cell index -> position within its dimension
    for (int i = 0; i <= d; ++i) {
        for (size_t p = 0; p < by_dim[static_cast<size_t>(i)].size(); ++p) {
            pos[by_dim[static_cast<size_t>(i)][p]] = static_cast<int>(p);
            cc.basis[static_cast<size_t>(i)].push_back(
                cells.cells[static_cast<size_t>(by_dim[static_cast<size_t>(i)][p])].str());
        }
    }
    for (int i = 0; i <= d; ++i) {
        int nrows = (i == 0) ? 0 : static_cast<int>(by_dim[static_cast<size_t>(i - 1)].size());
        int_matrix b(nrows, static_cast<int>(by_dim[static_cast<size_t>(i)].size()));
        if (i > 0) {
            for (size_t cpos = 0; cpos < by_dim[static_cast<size_t>(i)].size(); ++cpos) {
                const simplex& c = cells.cells[static_cast<size_t>(by_dim[static_cast<size_t>(i)][cpos])];
                for (const auto& f : c.facets()) {
                    int fi = cells.index_of(f);
                    if (fi < 0) fail(errc::not_a_complex, "missing face " + f.str());
                    b.at(pos[fi], static_cast<int>(cpos)) += incidence_sign(c, f);
                }
            }
        }
        cc.boundary[static_cast<size_t>(i)] = std::move(b);
    }
    return cc;
}

// Quotient complex of the pair: basis is K = X \ T, boundary is the
// simplicial boundary with T-cells deleted. Computes Borel-Moore homology.
inline chain_complex_z relative_chain(const complex_pair& p) {
    chain_complex_z cc;
    const cell_set& k = p.k;
    int d = k.dim();
    if (d < 0) return cc;
    std::vector<std::vector<int>> by_dim(static_cast<size_t>(d + 1));
    for (int i = 0; i < k.size(); ++i)
        by_dim[static_cast<size_t>(k.cells[static_cast<size_t>(i)].dim())].push_back(i);
    cc.boundary.resize(static_cast<size_t>(d + 1));
    cc.basis.resize(static_cast<size_t>(d + 1));
    std::map<int, int> pos;
    for (int i = 0; i <= d; ++i)
        for (size_t ppos = 0; ppos < by_dim[static_cast<size_t>(i)].size(); ++ppos) {
            pos[by_dim[static_cast<size_t>(i)][ppos]] = static_cast<int>(ppos);
            cc.basis[static_cast<size_t>(i)].push_back(
                k.cells[static_cast<size_t>(by_dim[static_cast<size_t>(i)][ppos])].str());
        }
    for (int i = 0; i <= d; ++i) {
        int nrows = (i == 0) ? 0 : static_cast<int>(by_dim[static_cast<size_t>(i - 1)].size());
        int_matrix b(nrows, static_cast<int>(by_dim[static_cast<size_t>(i)].size()));
        if (i > 0) {
            for (size_t cpos = 0; cpos < by_dim[static_cast<size_t>(i)].size(); ++cpos) {
                const simplex& c = k.cells[static_cast<size_t>(by_dim[static_cast<size_t>(i)][cpos])];
                for (const auto& f : c.facets()) {
                    int fi = k.index_of(f);
                    if (fi < 0) continue; // face lies in T
                    b.at(pos[fi], static_cast<int>(cpos)) += incidence_sign(c, f);
                }
            }
        }
        cc.boundary[static_cast<size_t>(i)] = std::move(b);
    }
    return cc;
}

struct homology_result {
    std::vector<int> betti;
    std::vector<std::vector<long long>> torsion; // invariant factors > 1 per dimension

    bool operator==(const homology_result& o) const { return betti == o.betti && torsion == o.torsion; }

    // trims trailing zero degrees so complexes of different top dimension compare sanely
    homology_result trimmed() const {
        homology_result r(*this);
        while (!r.betti.empty() && r.betti.back() == 0 &&
               (r.torsion.size() < r.betti.size() || r.torsion[r.betti.size() - 1].empty()))
            r.betti.pop_back();
        while (r.torsion.size() > r.betti.size() && r.torsion.back().empty()) r.torsion.pop_back();
        r.torsion.resize(r.betti.size());
        return r;
    }
};

inline homology_result homology(const chain_complex_z& cc) {
    if (!cc.boundary_squared_zero()) fail(errc::not_a_complex, "boundary squared is nonzero");
    homology_result h;
    int d = cc.top_dim();
    if (d < 0) return h;
    std::vector<snf_result> snf(static_cast<size_t>(d + 2));
    for (int i = 0; i <= d; ++i) snf[static_cast<size_t>(i)] = smith_normal_form(cc.boundary[static_cast<size_t>(i)]);
    h.betti.resize(static_cast<size_t>(d + 1));
    h.torsion.resize(static_cast<size_t>(d + 1));
    for (int i = 0; i <= d; ++i) {
        int rank_i = snf[static_cast<size_t>(i)].rank;
        int rank_next = (i + 1 <= d) ? snf[static_cast<size_t>(i + 1)].rank : 0;
        h.betti[static_cast<size_t>(i)] = cc.rank_of_chains(i) - rank_i - rank_next;
        if (i + 1 <= d)
            for (long long f : snf[static_cast<size_t>(i + 1)].factors)
                if (f > 1) h.torsion[static_cast<size_t>(i)].push_back(f);
    }
    return h;
}

// Betti numbers over GF(2); no torsion by definition.
inline std::vector<int> homology_z2(const chain_complex_z& cc) {
    std::vector<int> betti;
    int d = cc.top_dim();
    if (d < 0) return betti;
    std::vector<int> rank(static_cast<size_t>(d + 2), 0);
    for (int i = 0; i <= d; ++i) rank[static_cast<size_t>(i)] = rank_z2(cc.boundary[static_cast<size_t>(i)]);
    betti.resize(static_cast<size_t>(d + 1));
    for (int i = 0; i <= d; ++i)
        betti[static_cast<size_t>(i)] = cc.rank_of_chains(i) - rank[static_cast<size_t>(i)] - rank[static_cast<size_t>(i + 1)];
    return betti;
}

} // namespace openmorse

#endif
