#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bispec/error.hpp"
#include "bispec/graph.hpp"

namespace bispec {

// A 2k-cycle x[0] y[0] x[1] y[1] ... x[k-1] y[k-1] (back to x[0]); x in V1, y in V2.
// Canonical form starts at the smallest V1 vertex and picks the direction whose second
// vertex is smaller.
struct Cycle {
  std::vector<int> x;
  std::vector<int> y;

  int k() const { return static_cast<int>(x.size()); }

  std::vector<Edge> edges() const {
    std::vector<Edge> e;
    const int k = this->k();
    for (int t = 0; t < k; ++t) {
      e.emplace_back(x[t], y[t]);
      e.emplace_back(x[(t + 1) % k], y[t]);
    }
    return e;
  }

  std::string to_string() const {
    std::string s;
    for (int t = 0; t < k(); ++t) {
      if (t) s += ' ';
      s += "x" + std::to_string(x[t]) + " y" + std::to_string(y[t]);
    }
    return s;
  }

  auto operator<=>(const Cycle&) const = default;
};

inline Cycle canonical_cycle(const std::vector<int>& x, const std::vector<int>& y) {
  const int k = static_cast<int>(x.size());
  if (k < 2 || static_cast<int>(y.size()) != k)
    throw Error(ErrorKind::InvalidArgument, "a cycle needs k >= 2 vertices on each side");
  std::vector<int> sx(x), sy(y);
  std::sort(sx.begin(), sx.end());
  std::sort(sy.begin(), sy.end());
  if (std::adjacent_find(sx.begin(), sx.end()) != sx.end() ||
      std::adjacent_find(sy.begin(), sy.end()) != sy.end())
    throw Error(ErrorKind::InvalidArgument, "cycle vertices must be distinct");
  const int s = static_cast<int>(std::min_element(x.begin(), x.end()) - x.begin());
  Cycle c;
  c.x.resize(k);
  c.y.resize(k);
  if (y[s] < y[(s + k - 1) % k]) {
    for (int t = 0; t < k; ++t) {
      c.x[t] = x[(s + t) % k];
      c.y[t] = y[(s + t) % k];
    }
  } else {
    for (int t = 0; t < k; ++t) {
      c.x[t] = x[(s - t + k) % k];
      c.y[t] = y[(s - t - 1 + 2 * k) % k];
    }
  }
  return c;
}

inline bool cycle_in_graph(const BiregularGraph& g, const Cycle& c) {
  for (auto [i, j] : c.edges())
    if (i < 0 || i >= g.n() || j < 0 || j >= g.m() || !g.has_edge(i, j)) return false;
  return true;
}

namespace detail {

// Visits each simple cycle with kmin <= k <= kmax exactly once, already canonical.
template <class Visit>
void for_each_cycle(const BiregularGraph& g, int kmin, int kmax, std::int64_t budget,
                    ErrorKind over_budget, Visit&& visit) {
  std::vector<int> xs, ys;
  std::vector<char> used_x(g.n(), 0), used_y(g.m(), 0);
  std::int64_t steps = 0;
  auto tick = [&] {
    if (++steps > budget)
      throw Error(over_budget, "cycle enumeration exceeded budget of " + std::to_string(budget));
  };
  auto grow = [&](auto&& self, int depth) -> void {
    // xs has depth+1 entries, ys has depth entries; extend with a V2 vertex
    const int s = xs.front();
    const int cur = xs.back();
    for (int yv : g.left(cur)) {
      if (used_y[yv]) continue;
      tick();
      ys.push_back(yv);
      used_y[yv] = 1;
      const int k = depth + 1;
      if (k >= kmin && k >= 2 && ys.front() < yv && g.has_edge(s, yv)) {
        Cycle c{xs, ys};
        visit(c);
      }
      if (k < kmax) {
        for (int xv : g.right(yv)) {
          if (xv <= s || used_x[xv]) continue;
          xs.push_back(xv);
          used_x[xv] = 1;
          self(self, depth + 1);
          used_x[xv] = 0;
          xs.pop_back();
        }
      }
      used_y[yv] = 0;
      ys.pop_back();
    }
  };
  for (int s = 0; s < g.n(); ++s) {
    xs.assign(1, s);
    used_x[s] = 1;
    grow(grow, 0);
    used_x[s] = 0;
  }
}

}  // namespace detail

inline constexpr std::int64_t kDefaultCycleBudget = 200'000'000;

inline std::vector<Cycle> short_cycles(const BiregularGraph& g, int r,
                                       std::int64_t budget = kDefaultCycleBudget) {
  if (r < 2) throw Error(ErrorKind::InvalidArgument, "short cycles need r >= 2");
  std::vector<Cycle> out;
  detail::for_each_cycle(g, 2, r, budget, ErrorKind::HorizonTooLarge,
                         [&](const Cycle& c) { out.push_back(c); });
  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    return a.k() != b.k() ? a.k() < b.k() : a < b;
  });
  return out;
}

// Counts of cycles of length 2k for k = 0..kmax (entries 0 and 1 are zero).
inline std::vector<std::int64_t> cycle_counts(const BiregularGraph& g, int kmax,
                                              std::int64_t budget = kDefaultCycleBudget) {
  std::vector<std::int64_t> c(std::max(kmax, 1) + 1, 0);
  if (kmax >= 2)
    detail::for_each_cycle(g, 2, kmax, budget, ErrorKind::TooLarge,
                           [&](const Cycle& cyc) { ++c[cyc.k()]; });
  return c;
}

inline std::int64_t count_cycles(const BiregularGraph& g, int k,
                                 std::int64_t budget = kDefaultCycleBudget) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "count_cycles needs k >= 2");
  std::int64_t c = 0;
  detail::for_each_cycle(g, k, k, budget, ErrorKind::TooLarge,
                         [&](const Cycle& cyc) { c += cyc.k() == k; });
  return c;
}

// Short cycles (2 <= k <= r) of g that use the edge (a,b).
inline std::set<Cycle> cycles_through_edge(const BiregularGraph& g, int a, int b, int r) {
  std::set<Cycle> out;
  if (!g.has_edge(a, b)) return out;
  std::vector<int> xs{a}, ys{b};
  std::vector<char> used_x(g.n(), 0), used_y(g.m(), 0);
  used_x[a] = 1;
  used_y[b] = 1;
  // path a - b - x1 - y1 - ... - y_t, closed when a is adjacent to y_t
  auto grow = [&](auto&& self) -> void {
    const int k = static_cast<int>(ys.size());
    if (k >= r) return;
    for (int xv : g.right(ys.back())) {
      if (used_x[xv]) continue;
      xs.push_back(xv);
      used_x[xv] = 1;
      for (int yv : g.left(xv)) {
        if (used_y[yv]) continue;
        ys.push_back(yv);
        used_y[yv] = 1;
        if (g.has_edge(a, yv)) out.insert(canonical_cycle(xs, ys));
        self(self);
        used_y[yv] = 0;
        ys.pop_back();
      }
      used_x[xv] = 0;
      xs.pop_back();
    }
  };
  grow(grow);
  return out;
}

}  // namespace bispec
