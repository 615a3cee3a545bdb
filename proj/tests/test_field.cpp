#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace omt;

namespace {

complex_pair triangle_minus_vertex() { return build_pair({{0, 1, 2}}, {{0}}); }

vector_field pathological_field(const complex_pair& p) {
    vector_field v;
    v.domain = p.k;
    v.pairs = {{simplex{1}, simplex{0, 1}},
               {simplex{2}, simplex{0, 2}},
               {simplex{1, 2}, simplex{0, 1, 2}}};
    return v;
}

} // namespace

TEST_CASE("field validation") {
    auto p = triangle_minus_vertex();
    REQUIRE(validate_field(pathological_field(p)).empty());

    vector_field reused;
    reused.domain = p.k;
    reused.pairs = {{simplex{1}, simplex{0, 1}}, {simplex{1}, simplex{1, 2}}};
    auto rep = validate_field(reused);
    REQUIRE(rep.size() == 1);
    REQUIRE(rep[0].kind == "cell-reused");
    REQUIRE(rep[0].a == simplex{1});

    vector_field nonfacet;
    nonfacet.domain = p.k;
    nonfacet.pairs = {{simplex{1}, simplex{0, 1, 2}}};
    auto rep2 = validate_field(nonfacet);
    REQUIRE(rep2.size() == 1);
    REQUIRE(rep2[0].kind == "non-facet");
}

TEST_CASE("acyclicity") {
    auto p = triangle_minus_vertex();
    REQUIRE(is_acyclic(pathological_field(p)));

    // boundary of a triangle with a rotating matching has a closed path
    auto circle = build_complex({{0, 1}, {1, 2}, {0, 2}});
    vector_field rot;
    rot.domain = circle;
    rot.pairs = {{simplex{0}, simplex{0, 1}},
                 {simplex{1}, simplex{1, 2}},
                 {simplex{2}, simplex{0, 2}}};
    REQUIRE_FALSE(is_acyclic(rot));
    REQUIRE(closed_vpath_bruteforce(rot));

    vector_field empty;
    empty.domain = circle;
    REQUIRE(is_acyclic(empty));
}

TEST_CASE("acyclicity agrees with explicit path enumeration") {
    // every matching on small domains, from seeded generation plus a few
    // deliberately cyclic ones
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto gi = generate_instance({seed, 4, 2});
        auto p = instance_pair(gi);
        if (p.k.size() > 12) continue;
        auto g = instance_field(gi, p);
        REQUIRE(is_acyclic(g.field) == !closed_vpath_bruteforce(g.field));
        ++checked;
    }
    REQUIRE(checked >= 30);

    // hand-made cyclic fields on the 2-sphere boundary and the triangle ring
    auto ring = build_complex({{0, 1}, {1, 2}, {0, 2}});
    vector_field rot;
    rot.domain = ring;
    rot.pairs = {{simplex{0}, simplex{0, 1}},
                 {simplex{1}, simplex{1, 2}},
                 {simplex{2}, simplex{0, 2}}};
    REQUIRE(is_acyclic(rot) == !closed_vpath_bruteforce(rot));
}

TEST_CASE("modified facet graph marks the matching reversed") {
    auto p = triangle_minus_vertex();
    auto v = pathological_field(p);
    auto h = modified_hasse(v);
    REQUIRE(h.node_count() == 6);
    REQUIRE(h.edge_count() == 7);
    REQUIRE(h.reversed_count() == 3);
    for (size_t e = 0; e < h.edges.size(); ++e)
        if (h.reversed[e]) {
            auto [up, down] = h.edges[e];
            bool is_pair = false;
            for (const auto& [a, b] : v.pairs)
                if (a == h.nodes.cells[static_cast<size_t>(down)] &&
                    b == h.nodes.cells[static_cast<size_t>(up)])
                    is_pair = true;
            REQUIRE(is_pair);
        }
}

TEST_CASE("critical cells") {
    auto docs = running_docs();
    auto g = docs.field();
    auto crit = critical_cells(g);
    REQUIRE(critical_counts(g) == std::vector<int>{0, 2, 1});
    REQUIRE(crit[1].size() == 2);
    REQUIRE(crit[2].size() == 1);

    auto p = triangle_minus_vertex();
    auto gp = gradient_field::checked(pathological_field(p));
    for (int n : critical_counts(gp)) REQUIRE(n == 0);

    auto full = build_complex({{0, 1, 2}});
    auto ge = empty_field(full);
    REQUIRE(critical_counts(ge) == std::vector<int>{3, 3, 1});
}

TEST_CASE("gradient path enumeration") {
    auto docs = running_docs();
    auto g = docs.field();
    auto dense = [&](std::vector<long long> orig) {
        std::vector<vertex_id> out;
        for (long long v : orig)
            out.push_back(static_cast<vertex_id>(
                std::lower_bound(docs.names.begin(), docs.names.end(), v) - docs.names.begin()));
        return simplex(std::move(out));
    };
    simplex sigma = dense({7, 8, 16}), e1 = dense({7, 8}), e2 = dense({17, 18});
    auto to_e1 = enumerate_vpaths(g, sigma, e1);
    auto to_e2 = enumerate_vpaths(g, sigma, e2);
    REQUIRE(to_e1.size() == 2);
    REQUIRE(to_e2.size() == 2);
    for (const auto& path : to_e1) {
        REQUIRE(path.cells.front().is_facet_of(sigma));
        REQUIRE(path.cells.back() == e1);
        REQUIRE(path.cells.size() % 2 == 1);
    }

    // a single direct path when the facet relation holds and nothing is paired
    auto full = build_complex({{0, 1}});
    auto ge = empty_field(full);
    auto direct = enumerate_vpaths(ge, simplex{0, 1}, simplex{0});
    REQUIRE(direct.size() == 1);

    REQUIRE_THROWS_MATCHES(enumerate_vpaths(ge, simplex{0, 1}, simplex{0, 1}), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("DimensionMismatch")));
}

TEST_CASE("function round trip recovers the field") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto gi = generate_instance({seed, 7, 3});
        auto p = instance_pair(gi);
        auto g = instance_field(gi, p);
        auto f = function_from_gradient(g);
        auto back = gradient_from_function(f);
        REQUIRE(back.field.pairs == g.field.pairs);
    }
}

TEST_CASE("critical zero-cells of a function gradient are local minima") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto gi = generate_instance({seed, 6, 3, true});
        auto p = instance_pair(gi);
        auto g = instance_field(gi, p); // lives on K = X
        auto f = function_from_gradient(g);
        auto [rep, vf] = validate_function(f);
        REQUIRE(rep.ok());
        REQUIRE(vf.field.pairs == g.field.pairs);
        auto crit = critical_cells(vf);
        if (crit.empty()) continue;
        for (const auto& c : crit[0])
            for (int i = 0; i < p.x.size(); ++i)
                if (c.is_facet_of(p.x.cells[static_cast<size_t>(i)]))
                    REQUIRE(f.at(c) < f.values[static_cast<size_t>(i)]);
    }
}
