#ifndef OPENMORSE_INDUCED_HPP
#define OPENMORSE_INDUCED_HPP

#include <optional>
#include <vector>

#include "function.hpp"
#include "morse.hpp"
#include "subdivision.hpp"

namespace openmorse {

// Gradient on the barycentric subdivision assembled from per-simplex
// matchings: one unmatched cell per critical base cell (inside its carrier),
// perfect matchings over regular pairs, with the barycenter-to-steepest-facet
// rerouting that lifts gradient paths into the 1-skeleton of the order
// complex.
struct induced_gradient {
    vector_field field; // on the subdivision cells
    std::vector<int> partner;
    std::vector<char> tail;
    // per base-cell index: the unmatched subdivision cell of equal dimension
    // (critical base cells only), and the designated order-complex critical
    // cell of dimension height (critical K-cells only); -1 otherwise
    std::vector<int> vprime_of_base;
    std::vector<int> tracked_of_base;
};

namespace detail {

struct local_matching {
    std::vector<std::pair<int, int>> pairs; // (lower sd idx, upper sd idx)
    int critical = -1;
};

// facet relations restricted to a small cell family, by position
struct local_poset {
    std::vector<int> ids; // ascending sd indices
    std::vector<std::vector<int>> fac, cof;
};

inline local_poset make_local_poset(const sd_complex& sd, std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    local_poset p;
    p.ids = std::move(ids);
    const size_t n = p.ids.size();
    p.fac.resize(n);
    p.cof.resize(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j) {
            const simplex& lo = sd.cells.cells[static_cast<size_t>(p.ids[j])];
            const simplex& hi = sd.cells.cells[static_cast<size_t>(p.ids[i])];
            if (lo.is_facet_of(hi)) {
                p.fac[i].push_back(static_cast<int>(j));
                p.cof[j].push_back(static_cast<int>(i));
            }
        }
    return p;
}

// Matches every alive cell with a facet/coface partner by repeated free-face
// steps, backtracking through non-free choices when stuck. `accept` may
// reject a complete matching (acyclicity), which resumes the search.
inline bool match_all(const local_poset& p, std::vector<char>& alive,
                      std::vector<std::pair<int, int>>& out,
                      const std::function<bool(const std::vector<std::pair<int, int>>&)>& accept) {
    const size_t n = p.ids.size();
    auto alive_cofaces = [&](size_t i) {
        std::vector<int> cs;
        for (int c : p.cof[i])
            if (alive[static_cast<size_t>(c)]) cs.push_back(c);
        return cs;
    };

    std::vector<std::pair<int, int>> trail;
    // free-face propagation
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            auto cs = alive_cofaces(i);
            if (cs.size() == 1) {
                alive[i] = 0;
                alive[static_cast<size_t>(cs[0])] = 0;
                trail.emplace_back(static_cast<int>(i), cs[0]);
                progress = true;
            }
        }
    }

    int first_alive = -1;
    for (size_t i = 0; i < n; ++i)
        if (alive[i]) {
            first_alive = static_cast<int>(i);
            break;
        }

    bool ok = false;
    if (first_alive < 0) {
        for (auto& pr : trail) out.push_back(pr);
        ok = accept(out);
        if (!ok)
            out.resize(out.size() - trail.size());
    } else {
        // choice point: the first alive cell that still has cofaces
        int pivot = -1;
        for (size_t i = 0; i < n && pivot < 0; ++i)
            if (alive[i] && !alive_cofaces(i).empty()) pivot = static_cast<int>(i);
        if (pivot >= 0) {
            for (int c : alive_cofaces(static_cast<size_t>(pivot))) {
                alive[static_cast<size_t>(pivot)] = 0;
                alive[static_cast<size_t>(c)] = 0;
                out.emplace_back(pivot, c);
                std::vector<char> saved = alive;
                if (match_all(p, alive, out, accept)) {
                    ok = true;
                    break;
                }
                alive = saved;
                alive[static_cast<size_t>(pivot)] = 1;
                alive[static_cast<size_t>(c)] = 1;
                out.pop_back();
            }
        }
    }
    if (!ok)
        for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
            alive[static_cast<size_t>(it->first)] = 1;
            alive[static_cast<size_t>(it->second)] = 1;
        }
    return ok;
}

inline bool local_field_acyclic(const sd_complex& sd, const std::vector<int>& ids,
                                const std::vector<std::pair<int, int>>& pairs) {
    cell_set cs;
    for (int i : ids) cs.cells.push_back(sd.cells.cells[static_cast<size_t>(i)]);
    cs.normalize();
    vector_field v;
    v.domain = cs;
    for (auto [a, b] : pairs)
        v.pairs.emplace_back(sd.cells.cells[static_cast<size_t>(a)],
                             sd.cells.cells[static_cast<size_t>(b)]);
    return is_acyclic(v);
}

// Completes a local matching from mandated seed pairs by constrained
// collapse over the remaining cells. Returns nothing when the seeds admit no
// acyclic completion; the callers then retry with their next admissible
// seed choice.
inline std::optional<local_matching> try_complete_matching(
    const sd_complex& sd, const std::vector<int>& ids,
    const std::vector<std::pair<int, int>>& mandated, int critical_cell) {
    local_poset p = make_local_poset(sd, ids);
    auto pos_of = [&](int sd_idx) {
        auto it = std::lower_bound(p.ids.begin(), p.ids.end(), sd_idx);
        if (it == p.ids.end() || *it != sd_idx)
            fail(errc::infeasible_constraint, "mandated cell outside the local set");
        return static_cast<int>(it - p.ids.begin());
    };

    std::vector<char> alive(p.ids.size(), 1);
    std::vector<std::pair<int, int>> pairs_pos;
    for (auto [a, b] : mandated) {
        int pa = pos_of(a), pb = pos_of(b);
        if (!alive[static_cast<size_t>(pa)] || !alive[static_cast<size_t>(pb)]) return std::nullopt;
        alive[static_cast<size_t>(pa)] = 0;
        alive[static_cast<size_t>(pb)] = 0;
        pairs_pos.emplace_back(pa, pb);
    }
    if (critical_cell >= 0) alive[static_cast<size_t>(pos_of(critical_cell))] = 0;

    auto accept = [&](const std::vector<std::pair<int, int>>& complete) {
        std::vector<std::pair<int, int>> sd_pairs;
        for (auto [a, b] : complete)
            sd_pairs.emplace_back(p.ids[static_cast<size_t>(a)], p.ids[static_cast<size_t>(b)]);
        return local_field_acyclic(sd, p.ids, sd_pairs);
    };
    if (!match_all(p, alive, pairs_pos, accept)) return std::nullopt;

    local_matching lm;
    lm.critical = critical_cell;
    for (auto [a, b] : pairs_pos)
        lm.pairs.emplace_back(p.ids[static_cast<size_t>(a)], p.ids[static_cast<size_t>(b)]);
    return lm;
}

struct induce_context {
    const complex_pair& pair;
    const sd_complex& sd;
    std::vector<double> f;              // per base index
    std::vector<int> base_partner;      // V_X matching on base cells
    std::vector<char> base_tail;
    std::vector<int> k_height;          // per base index, -1 for T cells
    std::vector<std::vector<int>> carrier_cells; // sd indices per base index

    int chain_index(std::initializer_list<int> elems) const {
        simplex s;
        for (int e : elems) s.v.push_back(e);
        std::sort(s.v.begin(), s.v.end());
        int i = sd.cells.index_of(s);
        if (i < 0) fail(errc::infeasible_constraint, "missing subdivision cell");
        return i;
    }
};

// Matching on the interior of one critical base cell: everything with this
// carrier is matched except one cell of equal dimension. For a critical
// K-cell of height i below its dimension, a designated i-dimensional chain
// inside the order complex is matched upward (it loses its partner under
// restriction and survives as the order-complex critical cell); the exit
// face is the shallowest descent and the barycenter follows the steepest.
// Later choices of the unmatched cell, the exit chain's partner, and the
// barycenter pairing are retried in order when a seed admits no acyclic
// completion.
inline local_matching subdivide_critical(const induce_context& cx, int y, int* tracked_out) {
    const std::vector<int>& ids = cx.carrier_cells[static_cast<size_t>(y)];
    const simplex& ycell = cx.sd.base.cells[static_cast<size_t>(y)];
    const int k = ycell.dim();
    *tracked_out = -1;

    if (!cx.sd.base_in_k(y)) {
        for (int id : ids)
            if (cx.sd.cells.cells[static_cast<size_t>(id)].dim() == k)
                if (auto lm = try_complete_matching(cx.sd, ids, {}, id)) return *lm;
        fail(errc::infeasible_constraint, "critical cell " + ycell.str() + ": no completion");
    }

    // preferred partner for the barycenter: the steepest descending K-facet
    // that continues or ends a gradient path
    int b = cx.chain_index({y});
    int b_edge = -1;
    {
        std::vector<int> tails, crits;
        for (const auto& fc : ycell.facets()) {
            int fb = cx.pair.x.index_of(fc);
            if (fb < 0 || !cx.sd.base_in_k(fb)) continue;
            if (cx.base_tail[static_cast<size_t>(fb)])
                tails.push_back(fb);
            else if (cx.base_partner[static_cast<size_t>(fb)] < 0)
                crits.push_back(fb);
        }
        const std::vector<int>& cand = tails.empty() ? crits : tails;
        if (!cand.empty()) {
            int xstar = cand[0];
            for (int c : cand)
                if (cx.f[static_cast<size_t>(c)] < cx.f[static_cast<size_t>(xstar)]) xstar = c;
            b_edge = cx.chain_index({xstar, y});
        }
    }

    const int h = cx.k_height[static_cast<size_t>(y)];
    if (h == k) {
        // a full flag inside K exists; it stays critical in the order complex
        for (int with_b = 1; with_b >= 0; --with_b) {
            if (with_b && b_edge < 0) continue;
            for (int id : ids) {
                const simplex& ch = cx.sd.cells.cells[static_cast<size_t>(id)];
                if (ch.dim() != k || !cx.sd.in_sk[static_cast<size_t>(id)]) continue;
                std::vector<std::pair<int, int>> mandated;
                if (with_b && b != id && b_edge != id) mandated.emplace_back(b, b_edge);
                if (auto lm = try_complete_matching(cx.sd, ids, mandated, id)) {
                    *tracked_out = id;
                    return *lm;
                }
            }
        }
        fail(errc::infeasible_constraint, "critical cell " + ycell.str() + ": no completion");
    }

    // exit chain: K-chain of length h+1 ending here, shallowest descent first
    std::vector<int> candidates;
    for (int id : ids)
        if (cx.sd.in_sk[static_cast<size_t>(id)] &&
            cx.sd.cells.cells[static_cast<size_t>(id)].dim() == h)
            candidates.push_back(id);
    if (candidates.empty())
        fail(errc::infeasible_constraint, "no exit chain inside the order complex");
    auto key = [&](int id) {
        std::vector<double> ks;
        const auto& ch = cx.sd.cells.cells[static_cast<size_t>(id)].v;
        for (int j = static_cast<int>(ch.size()) - 2; j >= 0; --j)
            ks.push_back(cx.f[static_cast<size_t>(ch[static_cast<size_t>(j)])]);
        return ks;
    };
    int c_exit = candidates[0];
    for (int id : candidates)
        if (key(id) > key(c_exit)) c_exit = id; // ties: canonical-least wins (first seen)
    *tracked_out = c_exit;
    const simplex& exit_chain = cx.sd.cells.cells[static_cast<size_t>(c_exit)];

    std::vector<int> sigma_options, partner_options;
    for (int id : ids) {
        const simplex& ch = cx.sd.cells.cells[static_cast<size_t>(id)];
        if (!exit_chain.is_face_of(ch)) continue;
        if (ch.dim() == k) sigma_options.push_back(id);
        if (ch.dim() == h + 1) partner_options.push_back(id);
    }
    for (int with_b = 1; with_b >= 0; --with_b) {
        if (with_b && b_edge < 0) continue;
        for (int sigma_prime : sigma_options)
            for (int partner : partner_options) {
                if (partner == sigma_prime) continue;
                std::vector<std::pair<int, int>> mandated{{c_exit, partner}};
                bool b_taken = b == c_exit || b_edge == c_exit || b_edge == sigma_prime ||
                               b_edge == partner;
                if (with_b) {
                    if (b_taken) continue; // identical to the without-b attempt
                    mandated.emplace_back(b, b_edge);
                }
                if (auto lm = try_complete_matching(cx.sd, ids, mandated, sigma_prime))
                    return *lm;
            }
    }
    fail(errc::infeasible_constraint, "critical cell " + ycell.str() + ": no completion");
}

// Perfect matching over the interiors of a regular pair: everything in the
// lower cell's interior is matched through it (chain -> chain + top cell),
// and the top barycenter is matched toward the steepest descending facet
// that can continue or end a gradient path, or to the apex vertex when none
// can. Alternatives are retried in order of descent when a seed admits no
// acyclic completion.
inline local_matching subdivide_regular(const induce_context& cx, int alpha, int beta) {
    std::vector<int> ids = cx.carrier_cells[static_cast<size_t>(alpha)];
    for (int id : cx.carrier_cells[static_cast<size_t>(beta)]) ids.push_back(id);

    const simplex& acell = cx.sd.base.cells[static_cast<size_t>(alpha)];
    const simplex& bcell = cx.sd.base.cells[static_cast<size_t>(beta)];

    std::vector<std::pair<int, int>> through;
    for (int id : cx.carrier_cells[static_cast<size_t>(alpha)]) {
        simplex up = cx.sd.cells.cells[static_cast<size_t>(id)].with(beta);
        int partner = cx.sd.cells.index_of(up);
        if (partner < 0) fail(errc::infeasible_constraint, "missing through-chain");
        through.emplace_back(id, partner);
    }

    vertex_id apex_vertex = -1;
    for (vertex_id v : bcell.v)
        if (!acell.contains(v)) apex_vertex = v;
    int apex = cx.pair.x.index_of(simplex{apex_vertex});

    std::vector<int> tails, crits;
    for (const auto& fc : bcell.facets()) {
        int fb = cx.pair.x.index_of(fc);
        if (fb == alpha || fb < 0 || !cx.sd.base_in_k(fb)) continue;
        if (cx.base_tail[static_cast<size_t>(fb)])
            tails.push_back(fb);
        else if (cx.base_partner[static_cast<size_t>(fb)] < 0)
            crits.push_back(fb);
    }
    auto by_descent = [&](std::vector<int>& v) {
        std::sort(v.begin(), v.end(), [&](int a, int b2) {
            return cx.f[static_cast<size_t>(a)] < cx.f[static_cast<size_t>(b2)];
        });
    };
    by_descent(tails);
    by_descent(crits);
    std::vector<int> reroutes = tails;
    for (int c : crits) reroutes.push_back(c);

    int b = cx.chain_index({beta});
    // rerouting options in preference order, then the plain apex pairing,
    // then an unconstrained barycenter
    for (int aprime : reroutes) {
        std::vector<std::pair<int, int>> mandated = through;
        mandated.emplace_back(b, cx.chain_index({aprime, beta}));
        if (cx.sd.base.cells[static_cast<size_t>(aprime)].dim() >= 1)
            mandated.emplace_back(cx.chain_index({apex, beta}),
                                  cx.chain_index({apex, aprime, beta}));
        if (auto lm = try_complete_matching(cx.sd, ids, mandated, -1)) return *lm;
    }
    {
        std::vector<std::pair<int, int>> mandated = through;
        mandated.emplace_back(b, cx.chain_index({apex, beta}));
        if (auto lm = try_complete_matching(cx.sd, ids, mandated, -1)) return *lm;
    }
    if (auto lm = try_complete_matching(cx.sd, ids, through, -1)) return *lm;
    fail(errc::infeasible_constraint,
         "regular pair " + acell.str() + " < " + bcell.str() + ": no completion");
}

} // namespace detail

inline induced_gradient induce(const complex_pair& p, const gradient_field& v_k,
                               const morse_function& f_on_x, const sd_complex& sd) {
    if (!(f_on_x.domain.cells == p.x.cells))
        fail(errc::not_in_complex, "function domain is not the pair's complex");
    gradient_field v_x = extend_to_pair(v_k, p);
    {
        gradient_field from_f = gradient_from_function(f_on_x);
        if (!(from_f.field.pairs == v_x.field.pairs))
            fail(errc::not_morse, "function gradient differs from the given field");
    }

    detail::induce_context cx{p, sd, {}, {}, {}, {}, {}};
    cx.f = f_on_x.values;
    auto m = detail::index_matching(v_x.field);
    cx.base_partner = m.partner;
    cx.base_tail.assign(m.tail.begin(), m.tail.end());
    cx.k_height.assign(static_cast<size_t>(p.x.size()), -1);
    {
        auto hk = heights(p.k);
        for (int i = 0; i < p.k.size(); ++i)
            cx.k_height[static_cast<size_t>(p.x.index_of(p.k.cells[static_cast<size_t>(i)]))] =
                hk[static_cast<size_t>(i)];
    }
    cx.carrier_cells.resize(static_cast<size_t>(p.x.size()));
    for (int i = 0; i < sd.cells.size(); ++i)
        cx.carrier_cells[static_cast<size_t>(sd.carrier_index(i))].push_back(i);

    induced_gradient out;
    out.vprime_of_base.assign(static_cast<size_t>(p.x.size()), -1);
    out.tracked_of_base.assign(static_cast<size_t>(p.x.size()), -1);
    std::vector<std::pair<int, int>> all_pairs;
    for (int y = 0; y < p.x.size(); ++y) {
        size_t yy = static_cast<size_t>(y);
        if (cx.base_partner[yy] < 0) {
            int tracked = -1;
            auto lm = detail::subdivide_critical(cx, y, &tracked);
            out.vprime_of_base[yy] = lm.critical;
            if (sd.base_in_k(y)) out.tracked_of_base[yy] = tracked;
            for (auto pr : lm.pairs) all_pairs.push_back(pr);
        } else if (!cx.base_tail[yy]) {
            auto lm = detail::subdivide_regular(cx, cx.base_partner[yy], y);
            for (auto pr : lm.pairs) all_pairs.push_back(pr);
        }
    }

    out.partner.assign(static_cast<size_t>(sd.cells.size()), -1);
    out.tail.assign(static_cast<size_t>(sd.cells.size()), 0);
    out.field.domain = sd.cells;
    for (auto [a, b] : all_pairs) {
        if (out.partner[static_cast<size_t>(a)] >= 0 || out.partner[static_cast<size_t>(b)] >= 0)
            fail(errc::infeasible_constraint, "cell matched twice across local constructions");
        out.partner[static_cast<size_t>(a)] = b;
        out.partner[static_cast<size_t>(b)] = a;
        out.tail[static_cast<size_t>(a)] = 1;
        out.field.pairs.emplace_back(sd.cells.cells[static_cast<size_t>(a)],
                                     sd.cells.cells[static_cast<size_t>(b)]);
    }
    out.field.normalize();
    if (!is_acyclic(out.field)) fail(errc::global_cycle, "induced field has a closed path");
    return out;
}

// Restriction of the induced gradient to the order complex: pairs survive
// only when both cells are chains inside K. Criticality is tagged either
// inherited (critical upstairs) or orphaned (partner fell outside).
struct restricted_gradient {
    gradient_field field; // on the order complex
    std::vector<simplex> inherited;
    std::vector<simplex> orphaned;

    std::vector<int> critical_counts_by_dim() const {
        int d = field.domain().dim();
        std::vector<int> n(static_cast<size_t>(std::max(0, d + 1)), 0);
        for (const auto& c : inherited) ++n[static_cast<size_t>(c.dim())];
        for (const auto& c : orphaned) ++n[static_cast<size_t>(c.dim())];
        return n;
    }
};

inline restricted_gradient restrict_to_order_complex(const induced_gradient& ind,
                                                     const sd_complex& sd) {
    restricted_gradient out;
    vector_field w;
    w.domain = order_complex(sd);
    for (int i = 0; i < sd.cells.size(); ++i) {
        if (!sd.in_sk[static_cast<size_t>(i)]) continue;
        int pr = ind.partner[static_cast<size_t>(i)];
        if (pr < 0) {
            out.inherited.push_back(sd.cells.cells[static_cast<size_t>(i)]);
        } else if (!sd.in_sk[static_cast<size_t>(pr)]) {
            out.orphaned.push_back(sd.cells.cells[static_cast<size_t>(i)]);
        } else if (ind.tail[static_cast<size_t>(i)]) {
            w.pairs.emplace_back(sd.cells.cells[static_cast<size_t>(i)],
                                 sd.cells.cells[static_cast<size_t>(pr)]);
        }
    }
    out.field = gradient_field::checked(std::move(w));
    return out;
}

// Morse function on the subdivision with the induced gradient, agreeing with
// f at the barycenters of the regular cells of the K-gradient and at the
// designated critical cells.
inline morse_function extend_function(const morse_function& f_on_x, const induced_gradient& ind,
                                      const gradient_field& v_k, const complex_pair& p,
                                      const sd_complex& sd) {
    std::map<simplex, double> presets;
    for (int y = 0; y < p.x.size(); ++y) {
        size_t yy = static_cast<size_t>(y);
        if (ind.tracked_of_base[yy] >= 0)
            presets[sd.cells.cells[static_cast<size_t>(ind.tracked_of_base[yy])]] =
                f_on_x.values[yy];
    }
    for (const auto& [a, b] : v_k.field.pairs) {
        presets[simplex{p.x.index_of(a)}] = f_on_x.at(a);
        presets[simplex{p.x.index_of(b)}] = f_on_x.at(b);
    }
    return function_from_gradient(gradient_field{ind.field}, presets);
}

} // namespace openmorse

#endif
