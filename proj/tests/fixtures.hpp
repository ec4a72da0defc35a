#pragma once

#include <cstdint>
#include <vector>

#include "bispec/graph.hpp"
#include "bispec/rng.hpp"
#include "bispec/sampler.hpp"

namespace fixtures {

using bispec::BiregularGraph;
using bispec::Edge;

inline BiregularGraph k22() { return bispec::complete_bipartite(2, 2); }

inline BiregularGraph hexagon() {
  return bispec::new_biregular(3, 3, 2, 2, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}});
}

inline BiregularGraph k33() { return bispec::complete_bipartite(3, 3); }

inline BiregularGraph random_graph(int n, int m, int d1, int d2, std::uint64_t seed) {
  bispec::Rng rng = bispec::derive_stream(seed, 0);
  bispec::SamplerConfig cfg;
  return bispec::sample(n, m, d1, d2, cfg, rng);
}

// A small mixed corpus used by several property tests.
inline std::vector<BiregularGraph> corpus(int per_shape, std::uint64_t seed) {
  std::vector<BiregularGraph> out;
  struct Shape {
    int n, m, d1, d2;
  };
  const Shape shapes[] = {{12, 12, 3, 3}, {10, 10, 3, 3}, {12, 9, 3, 4}, {8, 16, 4, 2}, {12, 8, 2, 3}};
  std::uint64_t s = seed;
  for (const auto& sh : shapes)
    for (int i = 0; i < per_shape; ++i) out.push_back(random_graph(sh.n, sh.m, sh.d1, sh.d2, s++));
  return out;
}

}  // namespace fixtures
