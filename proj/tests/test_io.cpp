#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace omt;

TEST_CASE("fixture documents parse to the expected objects") {
    auto run = running_docs();
    REQUIRE(run.pair.x.count_by_dim() == std::vector<int>{24, 51, 26});
    REQUIRE(run.pair.t.count_by_dim() == std::vector<int>{24, 24});
    REQUIRE(run.field_raw->pairs.size() == 25);
    REQUIRE(run.values_raw->size() == 53);

    auto path = pathological_docs();
    REQUIRE(path.pair.x.size() == 7);
    REQUIRE(path.pair.t.size() == 1);
    REQUIRE(path.field().field.pairs.size() == 3);
}

TEST_CASE("parse errors carry a locus") {
    REQUIRE_THROWS_MATCHES(parse_inputs({json{{"X", json::array({json::array({"a"})})}}}), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("ParseError")));
    REQUIRE_THROWS_MATCHES(parse_inputs({json{{"T", json::array()}}}), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("missing key X")));
    // unknown vertex in a field cell
    json doc = {{"X", json::array({json::array({0, 1})})},
                {"pairs", json::array({json::array({json::array({7}), json::array({0, 1})})})}};
    REQUIRE_THROWS_MATCHES(parse_inputs({doc}), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("unknown vertex")));
    REQUIRE_THROWS_MATCHES(parse_inputs({json{{"X", json::array({json::array({-1, 2})})}}}), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("non-negative")));
}

TEST_CASE("serialization round-trips") {
    auto run = running_docs();
    auto again = parse_inputs({serialize_pair(run)});
    REQUIRE(again.pair.x.cells == run.pair.x.cells);
    REQUIRE(again.pair.t.cells == run.pair.t.cells);
    REQUIRE(again.field_raw->pairs == run.field_raw->pairs);
    REQUIRE(*again.values_raw == *run.values_raw);
}

TEST_CASE("sparse vertex ids map through the symbol table") {
    json doc = {{"X", json::array({json::array({10, 500, 1000})})},
                {"T", json::array({json::array({10})})},
                {"labels", {{"10", "a"}, {"500", "b"}}}};
    auto in = parse_inputs({doc});
    REQUIRE(in.pair.x.size() == 7);
    REQUIRE(in.names == std::vector<long long>{10, 500, 1000});
    REQUIRE(display_vertex(in, 0) == "a");
    REQUIRE(display_vertex(in, 2) == "1000");
    auto out = serialize_pair(in);
    REQUIRE(out["X"][0] == json::array({10, 500, 1000}));
}

TEST_CASE("generated instances are deterministic and acyclic") {
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        auto a = generate_instance({seed, 6, 2});
        if (seed <= 100) {
            auto b = generate_instance({seed, 6, 2});
            REQUIRE(a.x_generators == b.x_generators);
            REQUIRE(a.t_generators == b.t_generators);
            REQUIRE(a.field_pairs == b.field_pairs);
        }
        auto p = instance_pair(a);
        auto g = instance_field(a, p); // checked() verifies acyclicity
        REQUIRE(is_acyclic(g.field));
    }
}

TEST_CASE("graph export flags pairs and critical cells") {
    auto path = pathological_docs();
    auto g = path.field();
    auto dot = export_dot(path.pair.k, &g, [&](const simplex& c) { return c.str(); });
    int nodes = 0, edges = 0, reversed = 0, critical = 0;
    std::istringstream is(dot);
    std::string line;
    while (std::getline(is, line)) {
        bool edge = line.find("->") != std::string::npos;
        if (edge) {
            ++edges;
            if (line.find("color=blue") != std::string::npos) ++reversed;
        } else if (line.find('"') != std::string::npos) {
            ++nodes;
            if (line.find("color=red") != std::string::npos) ++critical;
        }
    }
    REQUIRE(nodes == 6);
    REQUIRE(edges == 7);
    REQUIRE(reversed == 3);
    REQUIRE(critical == 0);

    cell_set empty;
    auto dot_empty = export_dot(empty, nullptr, [](const simplex& c) { return c.str(); });
    REQUIRE(dot_empty.find("->") == std::string::npos);
}

TEST_CASE("order complex export shows the restricted gradient") {
    auto docs = running_docs();
    auto g = docs.field();
    auto f = function_on_x(docs);
    auto sd = subdivide_pair(docs.pair);
    auto ind = induce(docs.pair, g, f, sd);
    auto w = restrict_to_order_complex(ind, sd);
    auto sk = order_complex(sd);
    auto dot = export_dot(sk, &w.field, [&](const simplex& c) { return c.str(); });
    int critical = 0;
    std::istringstream is(dot);
    std::string line;
    while (std::getline(is, line))
        if (line.find("->") == std::string::npos && line.find("color=red") != std::string::npos)
            ++critical;
    REQUIRE(critical == 5);
}

TEST_CASE("function completion fills the subcomplex below the minimum") {
    auto docs = running_docs();
    auto f = function_on_x(docs);
    double min_k = 1e300;
    for (const auto& [cell, val] : *docs.values_raw) min_k = std::min(min_k, val);
    for (const auto& c : docs.pair.t.cells) REQUIRE(f.at(c) < min_k);
    // missing K-cells are an error
    std::map<simplex, double> partial = {{docs.pair.k.cells[0], 1.0}};
    REQUIRE_THROWS_MATCHES(complete_function_on_pair(docs.pair, partial), error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("misses K-cell")));
}
