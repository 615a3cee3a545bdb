#ifndef OPENMORSE_GENERATE_HPP
#define OPENMORSE_GENERATE_HPP

#include <random>
#include <vector>

#include "field.hpp"

namespace openmorse {

struct gen_params {
    std::uint64_t seed = 0;
    int vmax = 8;
    int dim = 3;
    bool closed = false; // force T empty
};

namespace detail {

// bounded draw avoiding std::uniform_int_distribution (not reproducible
// across standard libraries)
inline int draw(std::mt19937_64& rng, int n) {
    return n <= 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

} // namespace detail

struct generated_instance {
    std::vector<std::vector<vertex_id>> x_generators;
    std::vector<std::vector<vertex_id>> t_generators;
    std::vector<std::pair<std::vector<vertex_id>, std::vector<vertex_id>>> field_pairs;
};

// Random pair (X, T) plus an acyclic matching on K = X \ T. The matching is
// produced by a collapse process (pair a random free face, else discard a
// random top cell), so the removal order certifies acyclicity.
inline generated_instance generate_instance(const gen_params& gp) {
    std::mt19937_64 rng(gp.seed);
    generated_instance out;

    const int nv = std::max(2, gp.vmax - detail::draw(rng, gp.vmax / 2 + 1));
    const int ngen = nv + detail::draw(rng, 2 * nv);
    for (int g = 0; g < ngen; ++g) {
        int size = 1 + detail::draw(rng, std::min(nv, gp.dim + 1));
        std::vector<vertex_id> verts(static_cast<size_t>(nv));
        for (int i = 0; i < nv; ++i) verts[static_cast<size_t>(i)] = i;
        for (int i = 0; i < size; ++i)
            std::swap(verts[static_cast<size_t>(i)],
                      verts[static_cast<size_t>(i + detail::draw(rng, nv - i))]);
        verts.resize(static_cast<size_t>(size));
        std::sort(verts.begin(), verts.end());
        out.x_generators.push_back(std::move(verts));
    }
    cell_set x = build_complex(out.x_generators);

    const int t_picks = gp.closed ? 0 : detail::draw(rng, x.size() / 2 + 1);
    for (int i = 0; i < t_picks; ++i) {
        const simplex& c = x.cells[static_cast<size_t>(detail::draw(rng, x.size()))];
        out.t_generators.push_back(c.v);
    }
    complex_pair p = build_pair(out.x_generators, out.t_generators);

    // collapse process on the open complex
    std::vector<char> alive(static_cast<size_t>(p.k.size()), 1);
    auto down = detail::facet_lists(p.k);
    std::vector<std::vector<int>> up(static_cast<size_t>(p.k.size()));
    for (int i = 0; i < p.k.size(); ++i)
        for (int j : down[static_cast<size_t>(i)]) up[static_cast<size_t>(j)].push_back(i);

    int remaining = p.k.size();
    while (remaining > 0) {
        std::vector<std::pair<int, int>> free_pairs;
        for (int i = 0; i < p.k.size(); ++i) {
            if (!alive[static_cast<size_t>(i)]) continue;
            int coface = -1, count = 0;
            for (int j : up[static_cast<size_t>(i)])
                if (alive[static_cast<size_t>(j)]) {
                    coface = j;
                    ++count;
                }
            if (count == 1) free_pairs.emplace_back(i, coface);
        }
        if (!free_pairs.empty()) {
            auto [a, b] = free_pairs[static_cast<size_t>(
                detail::draw(rng, static_cast<int>(free_pairs.size())))];
            alive[static_cast<size_t>(a)] = 0;
            alive[static_cast<size_t>(b)] = 0;
            remaining -= 2;
            out.field_pairs.emplace_back(p.k.cells[static_cast<size_t>(a)].v,
                                         p.k.cells[static_cast<size_t>(b)].v);
        } else {
            // discard a random maximal remaining cell
            std::vector<int> tops;
            for (int i = 0; i < p.k.size(); ++i) {
                if (!alive[static_cast<size_t>(i)]) continue;
                bool top = true;
                for (int j : up[static_cast<size_t>(i)])
                    if (alive[static_cast<size_t>(j)]) top = false;
                if (top) tops.push_back(i);
            }
            int c = tops[static_cast<size_t>(detail::draw(rng, static_cast<int>(tops.size())))];
            alive[static_cast<size_t>(c)] = 0;
            --remaining;
        }
    }
    return out;
}

inline complex_pair instance_pair(const generated_instance& gi) {
    return build_pair(gi.x_generators, gi.t_generators);
}

inline gradient_field instance_field(const generated_instance& gi, const complex_pair& p) {
    vector_field v;
    v.domain = p.k;
    for (const auto& [a, b] : gi.field_pairs)
        v.pairs.emplace_back(simplex(a), simplex(b));
    return gradient_field::checked(std::move(v));
}

} // namespace openmorse

#endif
