#include <algorithm>
#include <numeric>

#include <catch_amalgamated.hpp>

#include "bispec/cycles.hpp"
#include "bispec/walks.hpp"
#include "fixtures.hpp"

using namespace bispec;

namespace {

// Ordered sequences of distinct x and y closing into a 2k-cycle, divided by 2k.
std::int64_t cycles_by_sequences(const BiregularGraph& g, int k) {
  std::int64_t ordered = 0;
  std::vector<int> xs, ys;
  std::vector<char> ux(g.n(), 0), uy(g.m(), 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(ys.size()) == k) {
      if (g.has_edge(xs.front(), ys.back())) ++ordered;
      return;
    }
    if (xs.size() == ys.size()) {
      for (int x = 0; x < g.n(); ++x) {
        if (ux[x] || !g.has_edge(x, ys.back())) continue;
        ux[x] = 1;
        xs.push_back(x);
        self(self);
        xs.pop_back();
        ux[x] = 0;
      }
    } else {
      for (int y = 0; y < g.m(); ++y) {
        if (uy[y] || !g.has_edge(xs.back(), y)) continue;
        uy[y] = 1;
        ys.push_back(y);
        self(self);
        ys.pop_back();
        uy[y] = 0;
      }
    }
  };
  for (int x = 0; x < g.n(); ++x) {
    ux[x] = 1;
    xs = {x};
    ys.clear();
    rec(rec);
    ux[x] = 0;
  }
  return ordered / (2 * k);
}

std::int64_t falling(int n, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

using IntMat = std::vector<std::vector<Count>>;

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  const std::size_t n = a.size();
  IntMat c(n, std::vector<Count>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

// Non-backtracking closed-walk traces from the two-step operator on V1, with the
// correction for consecutive distinct V1 vertices sharing a V2 vertex of degree d2 >= 3.
std::vector<Count> nbw_oracle(const BiregularGraph& g, int kmax) {
  const int n = g.n();
  const auto base = shifted_gram(g);
  IntMat a1(n, std::vector<Count>(n, 0)), id(n, std::vector<Count>(n, 0));
  for (int i = 0; i < n; ++i) {
    id[i][i] = 1;
    for (int j = 0; j < n; ++j) a1[i][j] = base(i, j);
  }
  const Count shift = g.d2() - 2, q = g.q(), two = static_cast<long long>(g.d1()) * (g.d2() - 1);
  IntMat shifted = a1;
  for (int i = 0; i < n; ++i) shifted[i][i] -= shift;
  std::vector<IntMat> nk(kmax + 1);
  nk[1] = a1;
  if (kmax >= 2) {
    nk[2] = mat_mul(a1, shifted);
    for (int i = 0; i < n; ++i) nk[2][i][i] -= two;
  }
  for (int k = 2; k < kmax; ++k) {
    nk[k + 1] = mat_mul(shifted, nk[k]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) nk[k + 1][i][j] -= q * nk[k - 1][i][j];
  }
  std::vector<Count> t(kmax + 1, 0);
  for (int k = 1; k <= kmax; ++k)
    for (int i = 0; i < n; ++i) t[k] += nk[k][i][i];
  return t;
}

}  // namespace

TEST_CASE("short cycles on small graphs", "[walks]") {
  const auto c4 = short_cycles(fixtures::k22(), 2);
  REQUIRE(c4.size() == 1);
  CHECK(c4[0].x == std::vector<int>{0, 1});
  CHECK(c4[0].y == std::vector<int>{0, 1});

  const auto hex = short_cycles(fixtures::hexagon(), 3);
  REQUIRE(hex.size() == 1);
  CHECK(hex[0].k() == 3);
  CHECK(short_cycles(fixtures::hexagon(), 2).empty());

  const auto k33 = short_cycles(fixtures::k33(), 3);
  CHECK(std::count_if(k33.begin(), k33.end(), [](const Cycle& c) { return c.k() == 2; }) == 9);
  CHECK(std::count_if(k33.begin(), k33.end(), [](const Cycle& c) { return c.k() == 3; }) == 6);
  CHECK(std::is_sorted(k33.begin(), k33.end(), [](const Cycle& a, const Cycle& b) {
    return a.k() != b.k() ? a.k() < b.k() : a < b;
  }));
  CHECK_THROWS_AS(short_cycles(fixtures::k22(), 1), Error);
}

TEST_CASE("canonical cycle form", "[walks]") {
  const Cycle c = canonical_cycle({2, 0, 1}, {5, 3, 4});
  CHECK(c.x.front() == 0);
  // every rotation and reflection maps to the same representative
  const std::vector<int> x{2, 0, 1}, y{5, 3, 4};
  for (int r = 0; r < 3; ++r) {
    std::vector<int> rx(3), ry(3), fx(3), fy(3);
    for (int t = 0; t < 3; ++t) {
      rx[t] = x[(t + r) % 3];
      ry[t] = y[(t + r) % 3];
      // reversed traversal: x[r], y[r-1], x[r-1], ...
      fx[t] = x[(r - t + 3) % 3];
      fy[t] = y[(r - t - 1 + 6) % 3];
    }
    CHECK(canonical_cycle(rx, ry) == c);
    CHECK(canonical_cycle(fx, fy) == c);
  }
  CHECK_THROWS_AS(canonical_cycle({0, 0}, {1, 2}), Error);
  CHECK_THROWS_AS(canonical_cycle({0}, {1}), Error);
}

TEST_CASE("cycle counts match sequence enumeration", "[walks]") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto g = fixtures::random_graph(6, 6, 3, 3, 100 + s);
    const auto c = cycle_counts(g, 4);
    for (int k = 2; k <= 4; ++k) CHECK(c[k] == cycles_by_sequences(g, k));
    for (const auto& cyc : short_cycles(g, 4)) CHECK(cycle_in_graph(g, cyc));
  }
  for (const auto& g : fixtures::corpus(1, 200))
    for (int k = 2; k <= 3; ++k) CHECK(count_cycles(g, k) == cycles_by_sequences(g, k));
}

TEST_CASE("complete bipartite cycle counts", "[walks]") {
  for (auto [n, m] : {std::pair{3, 3}, {3, 4}, {4, 4}, {4, 5}}) {
    const auto g = complete_bipartite(n, m);
    const auto c = cycle_counts(g, std::min(n, m));
    for (int k = 2; k <= std::min(n, m); ++k) CHECK(c[k] == falling(n, k) * falling(m, k) / (2 * k));
  }
}

TEST_CASE("cycles through an edge", "[walks]") {
  const auto g = fixtures::k33();
  const auto through = cycles_through_edge(g, 0, 0, 3);
  std::size_t expected = 0;
  for (const auto& c : short_cycles(g, 3)) {
    const auto e = c.edges();
    expected += std::find(e.begin(), e.end(), Edge{0, 0}) != e.end();
    if (std::find(e.begin(), e.end(), Edge{0, 0}) != e.end()) CHECK(through.count(c) == 1);
  }
  CHECK(through.size() == expected);
  CHECK(cycles_through_edge(fixtures::hexagon(), 0, 1, 3).empty());
}

TEST_CASE("walk counts on small examples", "[walks]") {
  const auto hex = fixtures::hexagon();
  CHECK(nbw_count(hex, 1) == 0);
  CHECK(nbw_count(hex, 2) == 0);
  CHECK(nbw_count(hex, 3) == 6);
  CHECK(cnbw_count(hex, 3) == 6);
  CHECK(brute_force_walks(hex, 3, WalkKind::NBW) == 6);

  const auto k22 = fixtures::k22();
  // (d2 = 2) the walk around the 4-cycle, from both starts in both directions, repeated
  for (int k = 1; k <= 6; ++k) {
    CHECK(nbw_count(k22, k) == brute_force_walks(k22, k, WalkKind::NBW));
    CHECK(cnbw_count(k22, k) == brute_force_walks(k22, k, WalkKind::CNBW));
  }
  CHECK(nbw_count(k22, 2) == 4);
  CHECK_THROWS_AS(nbw_count(k22, 0), Error);
}

TEST_CASE("recurrence agrees with enumeration when d2 = 2 or k <= 2", "[walks]") {
  for (const auto& g : fixtures::corpus(1, 300)) {
    const int kmax = g.d2() == 2 ? 6 : 2;
    const auto nbw = nbw_traces(g, kmax);
    const auto cnbw = cnbw_counts(g, kmax);
    for (int k = 1; k <= kmax; ++k) {
      CHECK(nbw[k] == brute_force_walks(g, k, WalkKind::NBW));
      CHECK(cnbw[k] == brute_force_walks(g, k, WalkKind::CNBW));
    }
  }
}

TEST_CASE("three-step recurrence overcounts once d2 >= 3", "[walks]") {
  // Known divergence: the closed form recurrence treats two consecutive two-step moves
  // through the same V2 vertex as non-backtracking. Enumeration matches the corrected
  // operator used in nbw_oracle.
  const auto g = fixtures::k33();
  CHECK(brute_force_walks(g, 3, WalkKind::NBW) == 72);
  CHECK(nbw_count(g, 3) == 162);
  CHECK(brute_force_walks(g, 4, WalkKind::NBW) == 432);
  CHECK(brute_force_walks(g, 4, WalkKind::CNBW) == 360);
  CHECK(nbw_count(g, 4) == 774);
  CHECK(cnbw_count(g, 4) == 702);
  for (const auto& h : {fixtures::k33(), fixtures::random_graph(6, 6, 3, 3, 7),
                        fixtures::random_graph(8, 6, 3, 4, 8)}) {
    const auto oracle = nbw_oracle(h, 4);
    for (int k = 1; k <= 4; ++k) CHECK(oracle[k] == brute_force_walks(h, k, WalkKind::NBW));
  }
}

TEST_CASE("walk table", "[walks]") {
  const auto t = walk_table(fixtures::hexagon(), 4);
  CHECK(t.cycles[3] == 1);
  CHECK(t.cnbw[3] == 6);
  CHECK(t.bad[3] == 0);
  for (const auto& g : fixtures::corpus(1, 400)) {
    const auto w = walk_table(g, 4);
    for (int k = 1; k <= 4; ++k) CHECK(w.bad[k] >= 0);
    CHECK(w.bad[2] == 0);
  }
}

TEST_CASE("recurrence matrices stay nonnegative", "[walks]") {
  for (const auto& g : fixtures::corpus(1, 500))
    for (int k = 1; k <= 6; ++k) {
      const auto a = nbw_matrix(g, k);
      CHECK(std::all_of(a.data.begin(), a.data.end(), [](const Count& c) { return c >= 0; }));
    }
}

TEST_CASE("arbitrary precision takes over on overflow", "[walks]") {
  // K_{6,6}: A^(1) = 6J - 6I has eigenvalues 30 (once) and -6 (five times).
  const auto g = complete_bipartite(6, 6);
  const int kmax = 40;
  auto scalar = [&](Count lambda) {
    std::vector<Count> p(kmax + 1);
    p[1] = lambda;
    p[2] = lambda * lambda - Count(6 * 5);
    for (int k = 2; k < kmax; ++k) p[k + 1] = lambda * p[k] - Count(25) * p[k - 1];
    return p;
  };
  const auto top = scalar(30), rest = scalar(-6);
  const auto tr = nbw_traces(g, kmax);
  for (int k = 1; k <= kmax; ++k) CHECK(tr[k] == top[k] + 5 * rest[k]);
  CHECK(tr[kmax] > Count(std::numeric_limits<std::int64_t>::max()));
  try {
    nbw_traces(g, kmax, false);
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}
