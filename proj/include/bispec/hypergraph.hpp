#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "bispec/cycles.hpp"
#include "bispec/error.hpp"
#include "bispec/graph.hpp"
#include "bispec/matrix.hpp"
#include "bispec/rng.hpp"
#include "bispec/sampler.hpp"

namespace bispec {

// d2-uniform hypergraph on n vertices in which every vertex lies in d1 hyperedges.
class RegularHypergraph {
 public:
  RegularHypergraph() = default;
  int n() const { return n_; }
  int d1() const { return d1_; }
  int d2() const { return d2_; }
  const std::vector<std::vector<int>>& hyperedges() const { return edges_; }
  bool operator==(const RegularHypergraph&) const = default;

  friend RegularHypergraph new_hypergraph(int n, int d1, int d2, std::vector<std::vector<int>> edges);

 private:
  int n_ = 0, d1_ = 0, d2_ = 0;
  std::vector<std::vector<int>> edges_;  // each sorted; order is the V2 labelling
};

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int x : v) h = (h ^ static_cast<std::uint32_t>(x)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

// Index of the first hyperedge that repeats an earlier one, or -1.
inline int first_duplicate(const std::vector<std::vector<int>>& edges) {
  std::unordered_set<std::vector<int>, VecHash> seen;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!seen.insert(edges[e]).second) return static_cast<int>(e);
  return -1;
}

}  // namespace detail

inline RegularHypergraph new_hypergraph(int n, int d1, int d2, std::vector<std::vector<int>> edges) {
  if (n < 1 || d1 < 1 || d2 < 1) throw Error(ErrorKind::InvalidHypergraph, "n, d1, d2 must be positive");
  std::vector<int> deg(n, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& h = edges[e];
    std::sort(h.begin(), h.end());
    if (static_cast<int>(h.size()) != d2)
      throw Error(ErrorKind::InvalidHypergraph, "hyperedge " + std::to_string(e) + " has " +
                                                    std::to_string(h.size()) + " vertices, expected " +
                                                    std::to_string(d2));
    if (std::adjacent_find(h.begin(), h.end()) != h.end())
      throw Error(ErrorKind::InvalidHypergraph, "hyperedge " + std::to_string(e) + " repeats a vertex");
    for (int v : h) {
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidHypergraph, "vertex out of range");
      ++deg[v];
    }
  }
  for (int v = 0; v < n; ++v)
    if (deg[v] != d1)
      throw Error(ErrorKind::InvalidHypergraph, "vertex " + std::to_string(v) + " has degree " +
                                                    std::to_string(deg[v]) + ", expected " +
                                                    std::to_string(d1));
  const int dup = detail::first_duplicate(edges);
  if (dup >= 0) throw Error(ErrorKind::DuplicateHyperedge, "hyperedge " + std::to_string(dup) + " repeats");
  RegularHypergraph h;
  h.n_ = n;
  h.d1_ = d1;
  h.d2_ = d2;
  h.edges_ = std::move(edges);
  return h;
}

// Incidence graph: V1 = vertices, V2 = hyperedges in stored order.
inline BiregularGraph to_bipartite(const RegularHypergraph& h) {
  std::vector<Edge> e;
  for (std::size_t j = 0; j < h.hyperedges().size(); ++j)
    for (int v : h.hyperedges()[j]) e.emplace_back(v, static_cast<int>(j));
  return new_biregular(h.n(), static_cast<int>(h.hyperedges().size()), h.d1(), h.d2(), std::move(e));
}

inline bool distinct_neighborhoods(const BiregularGraph& g) {
  std::vector<std::vector<int>> nb;
  for (int j = 0; j < g.m(); ++j) nb.emplace_back(g.right(j).begin(), g.right(j).end());
  return detail::first_duplicate(nb) < 0;
}

inline RegularHypergraph from_bipartite(const BiregularGraph& g) {
  std::vector<std::vector<int>> edges;
  for (int j = 0; j < g.m(); ++j) edges.emplace_back(g.right(j).begin(), g.right(j).end());
  const int dup = detail::first_duplicate(edges);
  if (dup >= 0)
    throw Error(ErrorKind::DuplicateHyperedge,
                "V2 vertex " + std::to_string(dup) + " repeats an earlier neighborhood");
  return new_hypergraph(g.n(), g.d1(), g.d2(), std::move(edges));
}

// (i,j) entry counts hyperedges containing both i and j; zero diagonal.
inline DenseMatrix<std::int64_t> hypergraph_adjacency(const RegularHypergraph& h) {
  DenseMatrix<std::int64_t> a(h.n(), h.n());
  for (const auto& e : h.hyperedges())
    for (int s : e)
      for (int t : e)
        if (s != t) a(s, t) += 1;
  return a;
}

struct HypergraphSampleStats {
  long long attempts = 0;
  long long accepted = 0;
};

inline RegularHypergraph sample_regular_hypergraph(int n, int d1, int d2, Rng& rng,
                                                   const SamplerConfig& cfg = {},
                                                   long long max_tries = 1000,
                                                   HypergraphSampleStats* stats = nullptr) {
  if ((static_cast<long long>(n) * d1) % d2)
    throw Error(ErrorKind::BalanceViolation, "n*d1 must be divisible by d2");
  const int m = static_cast<int>(static_cast<long long>(n) * d1 / d2);
  for (long long t = 0; t < max_tries; ++t) {
    BiregularGraph g = sample(n, m, d1, d2, cfg, rng);
    if (stats) ++stats->attempts;
    if (distinct_neighborhoods(g)) {
      if (stats) ++stats->accepted;
      return from_bipartite(g);
    }
  }
  throw Error(ErrorKind::RejectionBudgetExceeded,
              "no simple hypergraph after " + std::to_string(max_tries) + " bipartite samples");
}

// Cycles of length k in H, i.e. 2k-cycles of the incidence graph.
inline std::int64_t hypergraph_cycle_count(const RegularHypergraph& h, int k) {
  return count_cycles(to_bipartite(h), k);
}

inline nlohmann::json hypergraph_to_json(const RegularHypergraph& h) {
  return {{"n", h.n()}, {"d1", h.d1()}, {"d2", h.d2()}, {"hyperedges", h.hyperedges()}};
}

inline RegularHypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    return new_hypergraph(j.at("n").get<int>(), j.at("d1").get<int>(), j.at("d2").get<int>(),
                          j.at("hyperedges").get<std::vector<std::vector<int>>>());
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Io, std::string("malformed hypergraph document: ") + ex.what());
  }
}

}  // namespace bispec
