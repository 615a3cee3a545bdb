#ifndef OPENMORSE_MORSE_HPP
#define OPENMORSE_MORSE_HPP

#include <vector>

#include "chain_complex.hpp"
#include "field.hpp"

namespace openmorse {

enum class coefficient_ring { z, z2 };

namespace detail {

// Signed sum of gradient-path indices from the cell at `start` to the
// critical cell at `target`, memoized over the tail DAG. A path's index is
// the product of the incidence signs of each step with a -1 per pair
// traversal; with no pairs this reduces to the plain incidence number.
struct path_sum_dp {
    const cell_set& dom;
    const matching_index& m;
    const std::vector<std::vector<int>>& down;
    int target;
    std::vector<long long> memo;
    std::vector<char> known;

    path_sum_dp(const cell_set& d, const matching_index& mi,
                const std::vector<std::vector<int>>& dn, int tgt)
        : dom(d), m(mi), down(dn), target(tgt),
          memo(static_cast<size_t>(d.size()), 0), known(static_cast<size_t>(d.size()), 0) {}

    long long sum_from(int a) {
        size_t sa = static_cast<size_t>(a);
        if (known[sa]) return memo[sa];
        known[sa] = 1;
        long long r = 0;
        if (a == target) {
            r = 1;
        } else if (m.tail[sa]) {
            int b = m.partner[sa];
            const simplex& sb = dom.cells[static_cast<size_t>(b)];
            int sign_in = incidence_sign(sb, dom.cells[sa]);
            for (int w : down[static_cast<size_t>(b)]) {
                if (w == a) continue;
                long long sub = sum_from(w);
                if (sub == 0) continue;
                r += -static_cast<long long>(sign_in) *
                     incidence_sign(sb, dom.cells[static_cast<size_t>(w)]) * sub;
            }
        }
        memo[sa] = r;
        return r;
    }
};

} // namespace detail

// Chain complex on the critical cells, boundary given by signed counts of
// gradient paths (or path-count parity over Z2).
inline chain_complex_z morse_complex(const gradient_field& g,
                                     coefficient_ring ring = coefficient_ring::z) {
    const cell_set& dom = g.domain();
    auto m = detail::index_matching(g.field);
    auto down = detail::facet_lists(dom);

    int d = dom.dim();
    chain_complex_z cc;
    cc.mod2 = ring == coefficient_ring::z2;
    if (d < 0) return cc;
    std::vector<std::vector<int>> crit(static_cast<size_t>(d + 1));
    for (int i = 0; i < dom.size(); ++i)
        if (m.partner[static_cast<size_t>(i)] < 0)
            crit[static_cast<size_t>(dom.cells[static_cast<size_t>(i)].dim())].push_back(i);

    cc.boundary.resize(static_cast<size_t>(d + 1));
    cc.basis.resize(static_cast<size_t>(d + 1));
    for (int i = 0; i <= d; ++i)
        for (int c : crit[static_cast<size_t>(i)])
            cc.basis[static_cast<size_t>(i)].push_back(dom.cells[static_cast<size_t>(c)].str());

    for (int i = 0; i <= d; ++i) {
        int nrows = (i == 0) ? 0 : static_cast<int>(crit[static_cast<size_t>(i - 1)].size());
        int_matrix b(nrows, static_cast<int>(crit[static_cast<size_t>(i)].size()));
        if (i > 0) {
            for (size_t row = 0; row < crit[static_cast<size_t>(i - 1)].size(); ++row) {
                detail::path_sum_dp dp(dom, m, down, crit[static_cast<size_t>(i - 1)][row]);
                for (size_t col = 0; col < crit[static_cast<size_t>(i)].size(); ++col) {
                    int tau = crit[static_cast<size_t>(i)][col];
                    const simplex& stau = dom.cells[static_cast<size_t>(tau)];
                    long long coeff = 0;
                    for (int w : down[static_cast<size_t>(tau)])
                        coeff += static_cast<long long>(
                                     incidence_sign(stau, dom.cells[static_cast<size_t>(w)])) *
                                 dp.sum_from(w);
                    if (ring == coefficient_ring::z2) coeff = ((coeff % 2) + 2) % 2;
                    b.at(static_cast<int>(row), static_cast<int>(col)) = coeff;
                }
            }
        }
        cc.boundary[static_cast<size_t>(i)] = std::move(b);
    }
    return cc;
}

// Extends a gradient on K to the pair's full complex by leaving every cell
// of T unpaired.
inline gradient_field extend_to_pair(const gradient_field& v_k, const complex_pair& p) {
    vector_field v;
    v.domain = p.x;
    v.pairs = v_k.field.pairs;
    for (const auto& [a, b] : v.pairs)
        if (!p.k.contains(a) || !p.k.contains(b))
            fail(errc::not_in_complex, "field pair leaves K");
    return gradient_field::checked(std::move(v));
}

struct bm_dimension_row {
    int dim = 0;
    int critical = 0; // c_i
    int betti_morse = 0;
    int betti_relative = 0;
    std::vector<long long> torsion_morse, torsion_relative;
    bool weak_inequality_ok = false;
};

// Compares the homology of the Morse complex of K against the relative
// homology of the pair, and checks the weak inequalities rank H_i <= c_i.
struct bm_verification {
    std::vector<bm_dimension_row> rows;
    bool equal = true;
    bool inequalities_ok = true;
    bool pass() const { return equal && inequalities_ok; }
};

inline bm_verification bm_report(const complex_pair& p, const gradient_field& v_k) {
    bm_verification rep;
    homology_result hm = homology(morse_complex(v_k)).trimmed();
    homology_result hr = homology(relative_chain(p)).trimmed();
    std::vector<int> c = critical_counts(v_k);
    size_t dims = std::max({hm.betti.size(), hr.betti.size(), c.size()});
    for (size_t i = 0; i < dims; ++i) {
        bm_dimension_row row;
        row.dim = static_cast<int>(i);
        row.critical = i < c.size() ? c[i] : 0;
        row.betti_morse = i < hm.betti.size() ? hm.betti[i] : 0;
        row.betti_relative = i < hr.betti.size() ? hr.betti[i] : 0;
        row.torsion_morse = i < hm.torsion.size() ? hm.torsion[i] : std::vector<long long>{};
        row.torsion_relative = i < hr.torsion.size() ? hr.torsion[i] : std::vector<long long>{};
        row.weak_inequality_ok = row.betti_relative <= row.critical;
        if (row.betti_morse != row.betti_relative || row.torsion_morse != row.torsion_relative)
            rep.equal = false;
        if (!row.weak_inequality_ok) rep.inequalities_ok = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace openmorse

#endif
