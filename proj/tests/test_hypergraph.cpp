#include <set>

#include <catch_amalgamated.hpp>

#include "bispec/hypergraph.hpp"
#include "bispec/walks.hpp"
#include "oracles.hpp"

using namespace bispec;

namespace {

RegularHypergraph triangle_pair() {
  // six vertices, every vertex in two 3-element hyperedges
  return new_hypergraph(6, 2, 3, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}, {1, 3, 5}});
}

}  // namespace

TEST_CASE("hypergraph construction", "[hypergraph]") {
  const auto h = triangle_pair();
  CHECK(h.hyperedges().size() == 4);
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind([] { new_hypergraph(4, 2, 2, {{0, 1}, {0, 1}, {2, 3}, {2, 3}}); }) == ErrorKind::DuplicateHyperedge);
  CHECK(kind([] { new_hypergraph(3, 1, 3, {{0, 1}}); }) == ErrorKind::InvalidHypergraph);
  CHECK(kind([] { new_hypergraph(3, 1, 3, {{0, 1, 1}}); }) == ErrorKind::InvalidHypergraph);
  CHECK(kind([] { new_hypergraph(3, 2, 3, {{0, 1, 2}}); }) == ErrorKind::InvalidHypergraph);
  CHECK(kind([] { new_hypergraph(3, 1, 3, {{0, 1, 7}}); }) == ErrorKind::InvalidHypergraph);
}

TEST_CASE("incidence graph correspondence", "[hypergraph]") {
  const auto h = triangle_pair();
  const auto g = to_bipartite(h);
  CHECK(g.n() == 6);
  CHECK(g.m() == 4);
  CHECK(distinct_neighborhoods(g));
  CHECK(from_bipartite(g) == h);
  const auto a = hypergraph_adjacency(h);
  CHECK(a == shifted_gram(g));
  CHECK(a(0, 1) == 1);
  CHECK(a(0, 3) == 0);

  // K_{2,2} has two V2 vertices with the same neighbourhood
  const auto k22 = complete_bipartite(2, 2);
  CHECK_FALSE(distinct_neighborhoods(k22));
  CHECK_THROWS_AS(from_bipartite(k22), Error);
  CHECK(hypergraph_from_json(hypergraph_to_json(h)) == h);
  CHECK_THROWS_AS(hypergraph_from_json(nlohmann::json{{"n", 3}}), Error);
}

TEST_CASE("hypergraph cycles match incidence cycles", "[hypergraph]") {
  const auto h = triangle_pair();
  for (int k = 2; k <= 4; ++k) CHECK(hypergraph_cycle_count(h, k) == oracles::native_cycles(h, k));
  CHECK(oracles::native_cycles(h, 3) > 0);
  Rng rng = make_rng(12);
  for (int t = 0; t < 5; ++t) {
    const auto s = sample_regular_hypergraph(12, 3, 3, rng);
    for (int k = 2; k <= 4; ++k) CHECK(hypergraph_cycle_count(s, k) == oracles::native_cycles(s, k));
  }
}

TEST_CASE("hypergraph sampling", "[hypergraph]") {
  Rng rng = make_rng(4);
  HypergraphSampleStats st;
  for (int t = 0; t < 20; ++t) {
    const auto h = sample_regular_hypergraph(60, 3, 3, rng, {}, 1000, &st);
    CHECK(hypergraph_adjacency(h) == shifted_gram(to_bipartite(h)));
  }
  CHECK(st.accepted == 20);
  CHECK(st.attempts >= 20);
  // (2,2) on two vertices forces two identical hyperedges
  CHECK_THROWS_AS(sample_regular_hypergraph(2, 2, 2, rng, {}, 10), Error);
  CHECK_THROWS_AS(sample_regular_hypergraph(5, 2, 3, rng), Error);
}
