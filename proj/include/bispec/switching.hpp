#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bispec/cycles.hpp"
#include "bispec/error.hpp"
#include "bispec/graph.hpp"

namespace bispec {

// Forward: delete alpha, e_i = (u_i, v_i), e'_i = (u'_i, v'_i);
//          add (x_i, v_i), (x_i, v'_i), (u_i, y_i), (u'_i, y_i).
// Backward with the same spec is the exact inverse.
struct SwitchingSpec {
  Cycle alpha;
  std::vector<Edge> e;
  std::vector<Edge> e_prime;
};
using ForwardSwitchingSpec = SwitchingSpec;

enum class Direction { Forward, Backward };

namespace detail {

inline std::string edge_str(Edge e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

inline std::vector<Edge> cycle_side(const SwitchingSpec& s) {
  std::vector<Edge> out = s.alpha.edges();
  out.insert(out.end(), s.e.begin(), s.e.end());
  out.insert(out.end(), s.e_prime.begin(), s.e_prime.end());
  return out;
}

inline std::vector<Edge> path_side(const SwitchingSpec& s) {
  std::vector<Edge> out;
  for (int i = 0; i < s.alpha.k(); ++i) {
    out.emplace_back(s.alpha.x[i], s.e[i].second);
    out.emplace_back(s.alpha.x[i], s.e_prime[i].second);
    out.emplace_back(s.e[i].first, s.alpha.y[i]);
    out.emplace_back(s.e_prime[i].first, s.alpha.y[i]);
  }
  return out;
}

inline bool all_distinct(std::vector<Edge> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

inline void check_shape(const BiregularGraph& g, const SwitchingSpec& s) {
  const int k = s.alpha.k();
  if (k < 2 || static_cast<int>(s.alpha.y.size()) != k || static_cast<int>(s.e.size()) != k ||
      static_cast<int>(s.e_prime.size()) != k)
    throw Error(ErrorKind::InvalidArgument, "switching spec needs k >= 2 and k edges in e and e'");
  for (auto [i, j] : cycle_side(s))
    if (i < 0 || i >= g.n() || j < 0 || j >= g.m())
      throw Error(ErrorKind::InvalidArgument, "vertex out of range in " + edge_str({i, j}));
}

inline BiregularGraph rewire(const BiregularGraph& g, const std::vector<Edge>& removed,
                             const std::vector<Edge>& added) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  std::vector<Edge> rm(removed);
  std::sort(rm.begin(), rm.end());
  for (const Edge& e : g.edges())
    if (!std::binary_search(rm.begin(), rm.end(), e)) edges.push_back(e);
  edges.insert(edges.end(), added.begin(), added.end());
  return new_biregular(g.n(), g.m(), g.d1(), g.d2(), std::move(edges));
}

}  // namespace detail

inline BiregularGraph apply_forward(const BiregularGraph& g, const SwitchingSpec& s) {
  detail::check_shape(g, s);
  const Cycle& a = s.alpha;
  for (auto ed : a.edges())
    if (!g.has_edge(ed.first, ed.second))
      throw Error(ErrorKind::EdgeMissing, "cycle edge " + detail::edge_str(ed) + " not in graph");
  for (int i = 0; i < a.k(); ++i) {
    if (!g.has_edge(s.e[i].first, s.e[i].second))
      throw Error(ErrorKind::EdgeMissing, "e_" + std::to_string(i) + " = " + detail::edge_str(s.e[i]));
    if (!g.has_edge(s.e_prime[i].first, s.e_prime[i].second))
      throw Error(ErrorKind::EdgeMissing,
                  "e'_" + std::to_string(i) + " = " + detail::edge_str(s.e_prime[i]));
  }
  for (int i = 0; i < a.k(); ++i) {
    const std::string idx = std::to_string(i);
    if (g.has_edge(s.e[i].first, a.y[i]))
      throw Error(ErrorKind::PreconditionViolated, "u_" + idx + " is adjacent to y_" + idx);
    if (g.has_edge(s.e_prime[i].first, a.y[i]))
      throw Error(ErrorKind::PreconditionViolated, "u'_" + idx + " is adjacent to y_" + idx);
    if (g.has_edge(a.x[i], s.e[i].second))
      throw Error(ErrorKind::PreconditionViolated, "v_" + idx + " is adjacent to x_" + idx);
    if (g.has_edge(a.x[i], s.e_prime[i].second))
      throw Error(ErrorKind::PreconditionViolated, "v'_" + idx + " is adjacent to x_" + idx);
  }
  const auto removed = detail::cycle_side(s);
  const auto added = detail::path_side(s);
  if (!detail::all_distinct(removed))
    throw Error(ErrorKind::PreconditionViolated, "the 4k deleted edges are not distinct");
  if (!detail::all_distinct(added))
    throw Error(ErrorKind::PreconditionViolated, "the 4k created edges are not distinct");
  return detail::rewire(g, removed, added);
}

inline BiregularGraph apply_backward(const BiregularGraph& g, const SwitchingSpec& s) {
  detail::check_shape(g, s);
  const Cycle& a = s.alpha;
  for (int i = 0; i < a.k(); ++i) {
    const std::string idx = std::to_string(i);
    const Edge paths[4] = {{a.x[i], s.e[i].second},
                           {a.x[i], s.e_prime[i].second},
                           {s.e[i].first, a.y[i]},
                           {s.e_prime[i].first, a.y[i]}};
    for (const Edge& p : paths)
      if (!g.has_edge(p.first, p.second))
        throw Error(ErrorKind::EdgeMissing, "path edge " + detail::edge_str(p) + " at index " + idx);
  }
  for (int i = 0; i < a.k(); ++i) {
    const std::string idx = std::to_string(i);
    if (g.has_edge(a.x[i], a.y[i]))
      throw Error(ErrorKind::PreconditionViolated, "created edge x_" + idx + " y_" + idx + " already exists");
    const int nx = a.x[(i + 1) % a.k()];
    if (g.has_edge(nx, a.y[i]))
      throw Error(ErrorKind::PreconditionViolated,
                  "created edge y_" + idx + " x_" + std::to_string((i + 1) % a.k()) + " already exists");
    if (g.has_edge(s.e[i].first, s.e[i].second))
      throw Error(ErrorKind::PreconditionViolated, "created edge u_" + idx + " v_" + idx + " already exists");
    if (g.has_edge(s.e_prime[i].first, s.e_prime[i].second))
      throw Error(ErrorKind::PreconditionViolated,
                  "created edge u'_" + idx + " v'_" + idx + " already exists");
  }
  const auto removed = detail::path_side(s);
  const auto added = detail::cycle_side(s);
  if (!detail::all_distinct(removed))
    throw Error(ErrorKind::PreconditionViolated, "the 4k deleted edges are not distinct");
  if (!detail::all_distinct(added))
    throw Error(ErrorKind::PreconditionViolated, "the 4k created edges are not distinct");
  return detail::rewire(g, removed, added);
}

inline constexpr std::int64_t kDefaultSwitchingBudget = 10'000'000;

struct SwitchingCount {
  std::int64_t count = 0;
  std::int64_t candidates = 0;  // well-formed specs examined
};

// Visits every valid switching for the fixed representation of alpha. A switching is valid
// when the short cycles (length <= 2r) of the result differ from those of g by alpha alone.
// Forward switchings follow the counting convention of pairwise distinct u_i and pairwise
// distinct v'_i; backward switchings range over all ordered path choices.
inline SwitchingCount enumerate_valid_switchings(
    const BiregularGraph& g, const Cycle& alpha, int r, Direction dir,
    const std::function<void(const SwitchingSpec&, const BiregularGraph&)>& visit = {},
    std::int64_t budget = kDefaultSwitchingBudget) {
  if (r < 2) throw Error(ErrorKind::InvalidArgument, "switchings need r >= 2");
  const int k = alpha.k();
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "alpha needs k >= 2");
  SwitchingCount out;

  // Edges of g lying on some short cycle of g.
  std::set<Edge> on_short;
  const auto cycles = short_cycles(g, r);
  const Cycle canon = canonical_cycle(alpha.x, alpha.y);
  for (const Cycle& c : cycles)
    if (!(c == canon))
      for (auto ed : c.edges()) on_short.insert(ed);

  const auto alpha_edges = alpha.edges();
  const std::set<Edge> alpha_set(alpha_edges.begin(), alpha_edges.end());
  const bool alpha_short = k <= r;

  auto tick = [&] {
    if (++out.candidates > budget)
      throw Error(ErrorKind::TooLarge, "switching enumeration exceeded " + std::to_string(budget) +
                                           " candidates");
  };

  // Short cycles of h through any of the given edges.
  auto created = [&](const BiregularGraph& h, const std::vector<Edge>& added) {
    std::set<Cycle> found;
    for (auto [a, b] : added) {
      auto s = cycles_through_edge(h, a, b, r);
      found.insert(s.begin(), s.end());
    }
    return found;
  };

  SwitchingSpec spec;
  spec.alpha = alpha;
  spec.e.resize(k);
  spec.e_prime.resize(k);

  if (dir == Direction::Forward) {
    for (auto ed : alpha_edges)
      if (!g.has_edge(ed.first, ed.second)) return out;
    for (auto ed : alpha_edges)
      if (on_short.count(ed)) return out;  // deleting alpha would destroy another short cycle
    std::vector<std::vector<Edge>> cand(k);
    for (int i = 0; i < k; ++i)
      for (const Edge& ed : g.edges())
        if (!alpha_set.count(ed) && !on_short.count(ed) && !g.has_edge(ed.first, alpha.y[i]) &&
            !g.has_edge(alpha.x[i], ed.second))
          cand[i].push_back(ed);

    std::vector<Edge> used;
    std::vector<int> us, vps;
    auto rec = [&](auto&& self, int i) -> void {
      if (i == k) {
        tick();
        const auto added = detail::path_side(spec);
        if (!detail::all_distinct(added)) return;
        const auto removed = detail::cycle_side(spec);
        BiregularGraph h = detail::rewire(g, removed, added);
        if (!created(h, added).empty()) return;
        ++out.count;
        if (visit) visit(spec, h);
        return;
      }
      for (const Edge& a : cand[i]) {
        if (std::find(used.begin(), used.end(), a) != used.end()) continue;
        if (std::find(us.begin(), us.end(), a.first) != us.end()) continue;
        for (const Edge& b : cand[i]) {
          if (b == a || b.first == a.first || b.second == a.second) continue;
          if (std::find(used.begin(), used.end(), b) != used.end()) continue;
          if (std::find(vps.begin(), vps.end(), b.second) != vps.end()) continue;
          spec.e[i] = a;
          spec.e_prime[i] = b;
          used.push_back(a);
          used.push_back(b);
          us.push_back(a.first);
          vps.push_back(b.second);
          self(self, i + 1);
          used.resize(used.size() - 2);
          us.pop_back();
          vps.pop_back();
        }
      }
    };
    rec(rec, 0);
    return out;
  }

  for (auto ed : alpha_edges)
    if (g.has_edge(ed.first, ed.second)) return out;
  std::set<Cycle> expect;
  if (alpha_short) expect.insert(canon);
  std::vector<Edge> removed_so_far;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      tick();
      const auto removed = detail::path_side(spec);
      const auto added = detail::cycle_side(spec);
      if (!detail::all_distinct(removed) || !detail::all_distinct(added)) return;
      BiregularGraph h = detail::rewire(g, removed, added);
      if (created(h, added) != expect) return;
      ++out.count;
      if (visit) visit(spec, h);
      return;
    }
    const int x = alpha.x[i], y = alpha.y[i];
    for (int v : g.left(x))
      for (int vp : g.left(x)) {
        if (v == vp || on_short.count({x, v}) || on_short.count({x, vp})) continue;
        for (int u : g.right(y))
          for (int up : g.right(y)) {
            if (u == up || on_short.count({u, y}) || on_short.count({up, y})) continue;
            if (g.has_edge(u, v) || g.has_edge(up, vp)) continue;
            spec.e[i] = {u, v};
            spec.e_prime[i] = {up, vp};
            self(self, i + 1);
          }
      }
  };
  rec(rec, 0);
  return out;
}

inline std::int64_t count_valid_switchings(const BiregularGraph& g, const Cycle& alpha, int r,
                                           Direction dir,
                                           std::int64_t budget = kDefaultSwitchingBudget) {
  return enumerate_valid_switchings(g, alpha, r, dir, {}, budget).count;
}

// [n]_k [m]_k d1^k d2^k and (d1(d1-1) d2(d2-1))^k, as doubles (they overflow quickly).
inline double forward_switching_bound(const BiregularGraph& g, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= static_cast<double>(g.n() - i) * (g.m() - i) * g.d1() * g.d2();
  return b;
}

inline double backward_switching_bound(const BiregularGraph& g, int k) {
  return std::pow(static_cast<double>(g.d1()) * (g.d1() - 1) * g.d2() * (g.d2() - 1), k);
}

}  // namespace bispec
