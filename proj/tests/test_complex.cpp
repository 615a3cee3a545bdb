#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace omt;

TEST_CASE("closure of a single triangle") {
    auto x = build_complex({{0, 1, 2}});
    REQUIRE(x.size() == 7);
    REQUIRE(x.contains(simplex{0}));
    REQUIRE(x.contains(simplex{0, 1}));
    REQUIRE(x.contains(simplex{0, 1, 2}));
    REQUIRE(x.face_closed());
}

TEST_CASE("closure of two points") {
    auto x = build_complex({{0}, {1}});
    REQUIRE(x.size() == 2);
    REQUIRE(x.dim() == 0);
}

TEST_CASE("closure is idempotent") {
    auto x = build_complex({{0, 1, 2}, {2, 3}, {4}});
    std::vector<std::vector<vertex_id>> gens;
    for (const auto& c : maximal_cells(x)) gens.push_back(c.v);
    auto again = build_complex(gens);
    REQUIRE(x.cells == again.cells);
}

TEST_CASE("generator errors") {
    REQUIRE_THROWS_MATCHES(build_complex({{}}), error, Catch::Matchers::MessageMatches(
                                                           Catch::Matchers::ContainsSubstring("EmptyGenerator")));
    REQUIRE_THROWS_MATCHES(build_complex({{1, 1}}), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("DuplicateVertex")));
}

TEST_CASE("hollow triangle has a circle's homology") {
    auto x = build_complex({{0, 1}, {1, 2}, {0, 2}});
    REQUIRE(x.size() == 6);
    auto cc = simplicial_chain(x);
    auto h = homology(cc);
    // oracle: rank-based betti, independent of the Smith reduction
    REQUIRE(betti_rank_oracle(cc) == std::vector<int>{1, 1});
    REQUIRE(h.betti == std::vector<int>{1, 1});
}

TEST_CASE("pair construction and the open complex") {
    auto p = build_pair({{0, 1, 2}}, {{0}});
    REQUIRE(p.k.size() == 6);
    for (const auto& c : {simplex{1}, simplex{2}, simplex{0, 1}, simplex{0, 2}, simplex{1, 2},
                          simplex{0, 1, 2}})
        REQUIRE(p.k.contains(c));

    auto closed = build_pair({{0, 1, 2}}, {});
    REQUIRE(closed.k.cells == closed.x.cells);

    REQUIRE_THROWS_MATCHES(build_pair({{0, 1}}, {{0, 2}}), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("NotSubcomplex")));
}

TEST_CASE("open cells of the fixtures") {
    auto p = build_pair({{0, 1, 2}}, {{0}});
    REQUIRE(p.k.size() == p.x.size() - p.t.size());

    auto all = build_pair({{0, 1, 2}}, {{0, 1, 2}});
    REQUIRE(all.k.size() == 0);

    auto docs = running_docs();
    REQUIRE(docs.pair.k.size() == docs.pair.x.size() - docs.pair.t.size());
    REQUIRE(docs.pair.k.count_by_dim() == std::vector<int>{0, 27, 26});
}

TEST_CASE("height follows usage, not raw chain length") {
    auto p = build_pair({{0, 1, 2}}, {{0}});
    REQUIRE(height(simplex{0, 1, 2}, p.k) == 2);
    REQUIRE(height(simplex{0, 1, 2}, p.k) == height_oracle(simplex{0, 1, 2}, p.k));
    REQUIRE(height(simplex{0, 1}, p.k) == 1);
    REQUIRE(height(simplex{1}, p.k) == 0);
    REQUIRE_THROWS_MATCHES(height(simplex{0}, p.k), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("NotInComplex")));

    auto docs = running_docs();
    // e1 = {7,8}, e2 = {17,18}, sigma = {7,8,16} in the fixture's labels
    auto dense = [&](std::vector<long long> orig) {
        std::vector<vertex_id> out;
        for (long long v : orig)
            out.push_back(static_cast<vertex_id>(
                std::lower_bound(docs.names.begin(), docs.names.end(), v) - docs.names.begin()));
        return simplex(std::move(out));
    };
    REQUIRE(height(dense({7, 8}), docs.pair.k) == 0);
    REQUIRE(height(dense({17, 18}), docs.pair.k) == 0);
    REQUIRE(height(dense({7, 8, 16}), docs.pair.k) == 1);
}

TEST_CASE("height is monotone along chains in K") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto gi = generate_instance({seed, 6, 3});
        auto p = instance_pair(gi);
        auto h = heights(p.k);
        for (int i = 0; i < p.k.size(); ++i)
            for (int j = 0; j < p.k.size(); ++j)
                if (i != j && p.k.cells[static_cast<size_t>(i)].dim() < p.k.cells[static_cast<size_t>(j)].dim() &&
                    p.k.cells[static_cast<size_t>(i)].is_face_of(p.k.cells[static_cast<size_t>(j)]))
                    REQUIRE(h[static_cast<size_t>(i)] < h[static_cast<size_t>(j)]);
    }
}

TEST_CASE("facet graphs") {
    auto full = build_complex({{0, 1, 2}});
    auto hf = hasse(full);
    REQUIRE(hf.node_count() == 7);
    REQUIRE(hf.edge_count() == 9);

    auto p = build_pair({{0, 1, 2}}, {{0}});
    auto hk = hasse(p.k);
    REQUIRE(hk.node_count() == 6);
    REQUIRE(hk.edge_count() == 7);
    // exact edge set from hand enumeration
    std::set<std::pair<std::string, std::string>> expect = {
        {"{0,1}", "{1}"},       {"{1,2}", "{1}"},       {"{0,2}", "{2}"},
        {"{1,2}", "{2}"},       {"{0,1,2}", "{0,1}"},   {"{0,1,2}", "{0,2}"},
        {"{0,1,2}", "{1,2}"}};
    std::set<std::pair<std::string, std::string>> got;
    for (auto [i, j] : hk.edges)
        got.insert({hk.nodes.cells[static_cast<size_t>(i)].str(),
                    hk.nodes.cells[static_cast<size_t>(j)].str()});
    REQUIRE(got == expect);

    auto pt = build_complex({{0}});
    auto hp = hasse(pt);
    REQUIRE(hp.node_count() == 1);
    REQUIRE(hp.edge_count() == 0);
}

TEST_CASE("hasse edges join consecutive dimensions") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto gi = generate_instance({seed, 7, 3});
        auto p = instance_pair(gi);
        for (const auto* cs : {&p.x, &p.k}) {
            auto h = hasse(*cs);
            for (auto [i, j] : h.edges)
                REQUIRE(h.nodes.cells[static_cast<size_t>(i)].dim() ==
                        h.nodes.cells[static_cast<size_t>(j)].dim() + 1);
        }
    }
}

TEST_CASE("random complexes are face-closed and pairs partition") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto gi = generate_instance({seed, 8, 3});
        auto p = instance_pair(gi);
        REQUIRE(p.x.face_closed());
        REQUIRE((p.t.cells.empty() || p.t.face_closed()));
        REQUIRE(p.k.size() + p.t.size() == p.x.size());
        for (const auto& c : p.k.cells) REQUIRE(!p.t.contains(c));
    }
}
