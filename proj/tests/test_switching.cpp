#include <algorithm>
#include <optional>
#include <set>

#include <catch_amalgamated.hpp>

#include "bispec/switching.hpp"
#include "fixtures.hpp"

using namespace bispec;

namespace {

std::set<Cycle> cycle_set(const BiregularGraph& g, int r) {
  const auto v = short_cycles(g, r);
  return {v.begin(), v.end()};
}

// A graph with a short cycle of length 2k whose edges lie on no other short cycle and
// which admits at least one valid forward switching.
std::pair<BiregularGraph, Cycle> isolated_cycle(int n, int d, int k, int r, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    const auto g = fixtures::random_graph(n, n, d, d, s);
    const auto cycles = short_cycles(g, r);
    for (const Cycle& c : cycles) {
      if (c.k() != k) continue;
      const auto ce = c.edges();
      bool alone = true;
      for (const Cycle& o : cycles) {
        if (o == c) continue;
        for (auto e : o.edges()) alone &= std::find(ce.begin(), ce.end(), e) == ce.end();
      }
      if (alone && count_valid_switchings(g, c, r, Direction::Forward) > 0) return {g, c};
    }
  }
}

}  // namespace

TEST_CASE("forward switchings remove exactly the chosen cycle", "[switching]") {
  const auto [g, alpha] = isolated_cycle(10, 3, 2, 2, 1000);
  const auto before = cycle_set(g, 2);
  int checked = 0;
  std::optional<std::pair<SwitchingSpec, BiregularGraph>> first;
  const auto res = enumerate_valid_switchings(g, alpha, 2, Direction::Forward,
                                              [&](const SwitchingSpec& s, const BiregularGraph& h) {
                                                if (!first) first.emplace(s, h);
                                                if (checked++ > 300) return;
                                                auto expect = before;
                                                expect.erase(alpha);
                                                CHECK(cycle_set(h, 2) == expect);
                                                CHECK(apply_forward(g, s) == h);
                                                CHECK(apply_backward(h, s) == g);
                                              });
  CHECK(res.count > 0);
  CHECK(res.candidates >= res.count);
  CHECK(static_cast<double>(res.count) <= forward_switching_bound(g, 2));
  REQUIRE(first);

  // the inverse move is among the backward switchings of the image
  const auto& [spec, h] = *first;
  bool found = false;
  int back_checked = 0;
  const auto back = enumerate_valid_switchings(h, alpha, 2, Direction::Backward,
                                               [&](const SwitchingSpec& s, const BiregularGraph& g2) {
                                                 found |= s.e == spec.e && s.e_prime == spec.e_prime;
                                                 if (back_checked++ > 300) return;
                                                 auto expect = cycle_set(h, 2);
                                                 expect.insert(alpha);
                                                 CHECK(cycle_set(g2, 2) == expect);
                                                 CHECK(apply_forward(g2, s) == h);
                                               });
  CHECK(found);
  CHECK(back.count > 0);
  CHECK(static_cast<double>(back.count) <= backward_switching_bound(h, 2));
}

TEST_CASE("switchings at a longer horizon", "[switching]") {
  const auto [g, alpha] = isolated_cycle(12, 2, 3, 3, 2000);
  const auto before = cycle_set(g, 3);
  int checked = 0;
  const auto res = enumerate_valid_switchings(g, alpha, 3, Direction::Forward,
                                              [&](const SwitchingSpec&, const BiregularGraph& h) {
                                                if (checked++ > 300) return;
                                                auto expect = before;
                                                expect.erase(alpha);
                                                CHECK(cycle_set(h, 3) == expect);
                                              });
  CHECK(res.count > 0);
}

TEST_CASE("no forward switchings when the cycle shares an edge with another", "[switching]") {
  const auto g = fixtures::k33();
  const auto alpha = short_cycles(g, 2).front();
  CHECK(count_valid_switchings(g, alpha, 2, Direction::Forward) == 0);
  // absent cycle: nothing to delete
  const auto hex = fixtures::hexagon();
  CHECK(count_valid_switchings(hex, canonical_cycle({0, 1}, {0, 2}), 2, Direction::Forward) == 0);
}

TEST_CASE("explicit switchings and their errors", "[switching]") {
  const auto [g, alpha] = isolated_cycle(10, 3, 2, 2, 1000);
  std::optional<SwitchingSpec> valid;
  enumerate_valid_switchings(g, alpha, 2, Direction::Forward, [&](const SwitchingSpec& s, const BiregularGraph&) {
    if (!valid) valid = s;
  });
  REQUIRE(valid);
  const auto h = apply_forward(g, *valid);
  for (const auto& e : alpha.edges()) CHECK_FALSE(h.has_edge(e.first, e.second));

  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;  // sentinel: nothing thrown
  };
  CHECK(kind([&] { apply_forward(h, *valid); }) == ErrorKind::EdgeMissing);
  CHECK(kind([&] { apply_backward(g, *valid); }) == ErrorKind::EdgeMissing);

  // u_0 replaced by a V1 neighbour of y_0 (other than the cycle's own vertices)
  SwitchingSpec bad = *valid;
  for (int u : g.right(alpha.y[0])) {
    if (u == alpha.x[0] || u == alpha.x[1]) continue;
    for (int v : g.left(u))
      if (!g.has_edge(alpha.x[0], v)) {
        bad.e[0] = {u, v};
        goto picked;
      }
  }
picked:
  if (bad.e[0] != valid->e[0]) CHECK(kind([&] { apply_forward(g, bad); }) == ErrorKind::PreconditionViolated);

  SwitchingSpec shape = *valid;
  shape.e.pop_back();
  CHECK(kind([&] { apply_forward(g, shape); }) == ErrorKind::InvalidArgument);
  CHECK_THROWS_AS(enumerate_valid_switchings(g, alpha, 1, Direction::Forward), Error);
  CHECK(kind([&] { enumerate_valid_switchings(g, alpha, 2, Direction::Forward, {}, 5); }) == ErrorKind::TooLarge);
}
