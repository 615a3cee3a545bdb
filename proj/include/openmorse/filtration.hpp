#ifndef OPENMORSE_FILTRATION_HPP
#define OPENMORSE_FILTRATION_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "chain_complex.hpp"
#include "induced.hpp"

namespace openmorse {

// Sublevel flags: the union of closed cells with value <= a, inside the given
// family. Faces enter with their cofaces regardless of their own value.
inline std::vector<char> level_flags(const cell_set& cells, const std::vector<double>& values,
                                     double a) {
    std::vector<char> in(static_cast<size_t>(cells.size()), 0);
    for (int i = 0; i < cells.size(); ++i)
        if (values[static_cast<size_t>(i)] <= a) in[static_cast<size_t>(i)] = 1;
    for (int i = cells.size() - 1; i >= 0; --i) {
        if (!in[static_cast<size_t>(i)]) continue;
        for (const auto& f : cells.cells[static_cast<size_t>(i)].facets()) {
            int j = cells.index_of(f);
            if (j >= 0) in[static_cast<size_t>(j)] = 1;
        }
    }
    return in;
}

inline cell_set level_subcomplex(const cell_set& cells, const std::vector<double>& values,
                                 double a) {
    auto in = level_flags(cells, values, a);
    cell_set out;
    for (int i = 0; i < cells.size(); ++i)
        if (in[static_cast<size_t>(i)]) out.cells.push_back(cells.cells[static_cast<size_t>(i)]);
    return out;
}

// Sublevel structures of the subdivision at threshold a: the order-complex
// sublevel, the full sublevel, and the open part K(a) = sd(K) n sd(X)(a).
struct level_set {
    double threshold = 0;
    std::vector<char> in_sdxa; // over sd cells
    std::vector<char> in_ska;
    std::vector<char> in_ka;
};

inline level_set open_level(const sd_complex& sd, const std::vector<double>& f_sd, double a) {
    level_set ls;
    ls.threshold = a;
    ls.in_sdxa = level_flags(sd.cells, f_sd, a);

    // the order-complex sublevel is a closure within S_K
    ls.in_ska.assign(static_cast<size_t>(sd.cells.size()), 0);
    for (int i = 0; i < sd.cells.size(); ++i)
        if (sd.in_sk[static_cast<size_t>(i)] && f_sd[static_cast<size_t>(i)] <= a)
            ls.in_ska[static_cast<size_t>(i)] = 1;
    for (int i = sd.cells.size() - 1; i >= 0; --i) {
        if (!ls.in_ska[static_cast<size_t>(i)]) continue;
        for (const auto& f : sd.cells.cells[static_cast<size_t>(i)].facets()) {
            int j = sd.cells.index_of(f);
            if (j >= 0) ls.in_ska[static_cast<size_t>(j)] = 1;
        }
    }
    ls.in_ka.assign(static_cast<size_t>(sd.cells.size()), 0);
    for (int i = 0; i < sd.cells.size(); ++i)
        ls.in_ka[static_cast<size_t>(i)] =
            (!sd.in_sdt[static_cast<size_t>(i)] && ls.in_sdxa[static_cast<size_t>(i)]) ? 1 : 0;
    return ls;
}

// Elimination of K(a) \ S_K(a) by decreasing dimension. Every processed cell
// must be a removable open cell (value reached, some face outside sd(K)) or
// the free face of its matched coface already inside the sublevel.
struct retract_step {
    int cell = -1;
    int partner = -1; // set for free-pair collapses
    bool removable = false;
};

struct retract_report {
    bool ok = true;
    int stuck_cell = -1;
    std::vector<retract_step> steps;
};

inline retract_report retract_check(const sd_complex& sd, const induced_gradient& ind,
                                    const std::vector<double>& f_sd, const level_set& ls) {
    retract_report rep;
    std::vector<int> todo;
    for (int i = 0; i < sd.cells.size(); ++i)
        if (ls.in_ka[static_cast<size_t>(i)] && !ls.in_ska[static_cast<size_t>(i)])
            todo.push_back(i);
    std::stable_sort(todo.begin(), todo.end(), [&](int a, int b) {
        int da = sd.cells.cells[static_cast<size_t>(a)].dim();
        int db = sd.cells.cells[static_cast<size_t>(b)].dim();
        if (da != db) return da > db;
        return a < b;
    });
    for (int c : todo) {
        size_t cc = static_cast<size_t>(c);
        retract_step st;
        st.cell = c;
        if (f_sd[cc] <= ls.threshold) {
            bool face_outside = false;
            for (vertex_id e : sd.cells.cells[cc].v)
                if (sd.base_in_t[static_cast<size_t>(e)]) face_outside = true;
            if (!face_outside) {
                rep.ok = false;
                rep.stuck_cell = c;
                return rep;
            }
            st.removable = true;
        } else {
            int pr = ind.partner[cc];
            bool collapses = ind.tail[cc] && pr >= 0 &&
                             f_sd[static_cast<size_t>(pr)] <= ls.threshold;
            if (!collapses) {
                rep.ok = false;
                rep.stuck_cell = c;
                return rep;
            }
            st.partner = pr;
        }
        rep.steps.push_back(st);
    }
    return rep;
}

// One step of the sublevel scan: crossing a single function value.
struct scan_event {
    double value = 0;
    std::string kind; // "attach" | "collapse" | "noop"
    int cell = -1;    // sd index
    int partner = -1;
    int dim = -1;
    std::vector<int> betti_before, betti_after;
};

struct filtration_report {
    std::vector<double> critical_values;
    std::vector<scan_event> events;
    std::vector<int> attach_per_dim;
    bool ok = true;
    std::string failure;
};

namespace detail {

inline std::vector<int> padded_betti(const cell_set& cells, int dims) {
    std::vector<int> b(static_cast<size_t>(dims), 0);
    if (cells.size() == 0) return b;
    auto h = homology(simplicial_chain(cells));
    for (size_t i = 0; i < h.betti.size() && i < b.size(); ++i) b[i] = h.betti[i];
    return b;
}

} // namespace detail

// Walks the function values of the order complex one at a time and verifies
// the discrete structure of the filtration: between critical values only
// matched pairs enter (each an elementary collapse witness, homology fixed),
// and at each critical value exactly one cell is attached along its entire
// boundary with an elementary change of homology.
inline filtration_report structure_scan(const sd_complex& sd, const induced_gradient& ind,
                                        const std::vector<double>& f_sd) {
    filtration_report rep;
    cell_set sk = order_complex(sd);
    const int dims = std::max(0, sk.dim() + 1);

    // order-complex view of the induced matching
    std::vector<int> sk_ids;
    for (int i = 0; i < sd.cells.size(); ++i)
        if (sd.in_sk[static_cast<size_t>(i)]) sk_ids.push_back(i);

    auto is_w_critical = [&](int i) {
        int pr = ind.partner[static_cast<size_t>(i)];
        return pr < 0 || !sd.in_sk[static_cast<size_t>(pr)];
    };

    std::vector<std::pair<double, int>> by_value;
    for (int i : sk_ids) by_value.emplace_back(f_sd[static_cast<size_t>(i)], i);
    std::sort(by_value.begin(), by_value.end());

    for (auto [val, i] : by_value)
        if (is_w_critical(i)) rep.critical_values.push_back(val);
    rep.attach_per_dim.assign(static_cast<size_t>(dims), 0);

    auto present_at = [&](double a) {
        level_set ls = open_level(sd, f_sd, a);
        std::vector<int> present;
        for (int i : sk_ids)
            if (ls.in_ska[static_cast<size_t>(i)]) present.push_back(i);
        return present;
    };
    auto betti_of = [&](const std::vector<int>& present) {
        cell_set cs;
        for (int i : present) cs.cells.push_back(sd.cells.cells[static_cast<size_t>(i)]);
        return detail::padded_betti(cs, dims);
    };

    double below = by_value.empty() ? 0.0 : by_value.front().first - 1.0;
    std::vector<int> cur = present_at(below);
    std::vector<int> cur_betti = betti_of(cur);
    if (!cur.empty()) {
        rep.ok = false;
        rep.failure = "sublevel below the minimum is nonempty";
        return rep;
    }

    for (size_t step = 0; step < by_value.size(); ++step) {
        double val = by_value[step].first;
        int cell = by_value[step].second;
        double next_threshold = (step + 1 < by_value.size())
                                    ? (val + by_value[step + 1].first) / 2.0
                                    : val + 1.0;
        std::vector<int> nxt = present_at(next_threshold);
        std::vector<int> nxt_betti = betti_of(nxt);

        std::vector<int> diff;
        std::set_difference(nxt.begin(), nxt.end(), cur.begin(), cur.end(),
                            std::back_inserter(diff));

        scan_event ev;
        ev.value = val;
        ev.cell = cell;
        ev.dim = sd.cells.cells[static_cast<size_t>(cell)].dim();
        ev.betti_before = cur_betti;
        ev.betti_after = nxt_betti;

        int pr = ind.partner[static_cast<size_t>(cell)];
        if (is_w_critical(cell)) {
            ev.kind = "attach";
            bool single = diff.size() == 1 && diff[0] == cell;
            bool boundary_present = true;
            for (const auto& f : sd.cells.cells[static_cast<size_t>(cell)].facets()) {
                int j = sd.cells.index_of(f);
                if (j >= 0 && sd.in_sk[static_cast<size_t>(j)] &&
                    !std::binary_search(cur.begin(), cur.end(), j))
                    boundary_present = false;
            }
            int changed = 0, delta_ok = 0;
            for (int d = 0; d < dims; ++d)
                if (cur_betti[static_cast<size_t>(d)] != nxt_betti[static_cast<size_t>(d)]) {
                    ++changed;
                    int delta = nxt_betti[static_cast<size_t>(d)] - cur_betti[static_cast<size_t>(d)];
                    if ((d == ev.dim && delta == 1) || (d == ev.dim - 1 && delta == -1)) ++delta_ok;
                }
            if (!single || !boundary_present || changed != 1 || delta_ok != 1) {
                rep.ok = false;
                rep.failure = "attach at value " + std::to_string(val) + " is not elementary";
            }
            ++rep.attach_per_dim[static_cast<size_t>(ev.dim)];
        } else if (ind.tail[static_cast<size_t>(cell)] && pr >= 0 &&
                   sd.in_sk[static_cast<size_t>(pr)]) {
            // the lower cell of a surviving pair enters with its coface earlier
            ev.kind = "noop";
            if (!diff.empty() || nxt_betti != cur_betti) {
                rep.ok = false;
                rep.failure = "value " + std::to_string(val) + " of a matched face changed the complex";
            }
        } else {
            // upper cell of a surviving pair: elementary expansion, no change
            ev.kind = "collapse";
            int tail_cell = pr;
            ev.partner = tail_cell;
            bool pair_only = diff.size() == 2 &&
                             ((diff[0] == cell && diff[1] == tail_cell) ||
                              (diff[1] == cell && diff[0] == tail_cell));
            // collapse witness: the tail's only coface in the new sublevel is this cell
            int free_cofaces = 0;
            if (tail_cell >= 0)
                for (int j : nxt) {
                    if (sd.cells.cells[static_cast<size_t>(tail_cell)].is_facet_of(
                            sd.cells.cells[static_cast<size_t>(j)]))
                        ++free_cofaces;
                }
            if (!pair_only || free_cofaces != 1 || nxt_betti != cur_betti) {
                rep.ok = false;
                rep.failure = "non-critical value " + std::to_string(val) +
                              " is not an elementary expansion";
                if (nxt_betti != cur_betti) rep.failure += " (homology changed)";
            }
        }
        rep.events.push_back(std::move(ev));
        cur = std::move(nxt);
        cur_betti = std::move(nxt_betti);
    }
    return rep;
}

} // namespace openmorse

#endif
