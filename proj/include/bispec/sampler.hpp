#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "bispec/error.hpp"
#include "bispec/graph.hpp"
#include "bispec/rng.hpp"

namespace bispec {

enum class SamplerMethod { Auto, ExactRejection, SwitchChain };

inline const char* method_name(SamplerMethod m) {
  switch (m) {
    case SamplerMethod::Auto: return "auto";
    case SamplerMethod::ExactRejection: return "exact-rejection";
    case SamplerMethod::SwitchChain: return "switch-chain";
  }
  return "auto";
}

inline SamplerMethod parse_method(const std::string& s) {
  if (s == "auto") return SamplerMethod::Auto;
  if (s == "exact-rejection" || s == "rejection") return SamplerMethod::ExactRejection;
  if (s == "switch-chain" || s == "switch") return SamplerMethod::SwitchChain;
  throw Error(ErrorKind::InvalidArgument, "unknown sampler method '" + s + "'");
}

struct SamplerConfig {
  SamplerMethod method = SamplerMethod::Auto;
  // Swap proposals for the switch chain; 0 means 100|E|. The count is fixed in advance:
  // stopping after a set number of accepted swaps would sample the jump chain instead.
  long long mcmc_steps = 0;
  std::uint64_t seed = 0;
  long long max_rejections = 100000;
  // Auto mode uses the switch chain when d1*d2 > density_threshold * n ...
  double density_threshold = 0.25;
  // ... or when the expected number of rejection attempts, exp(q/2), exceeds this.
  double max_expected_attempts = 1000.0;
};

inline void check_sampler_shape(int n, int m, int d1, int d2) {
  if (n < 1 || m < 1 || d1 < 1 || d2 < 1)
    throw Error(ErrorKind::InvalidArgument, "n, m, d1, d2 must be positive");
  if (static_cast<long long>(n) * d1 != static_cast<long long>(m) * d2)
    throw Error(ErrorKind::BalanceViolation, "n*d1 != m*d2");
}

// Uniform over simple graphs: random stub matching, restarted on the first repeated pair.
inline BiregularGraph sample_configuration(int n, int m, int d1, int d2, Rng& rng,
                                           long long max_rejections = 100000) {
  check_sampler_shape(n, m, d1, d2);
  if (d1 > m || d2 > n) throw Error(ErrorKind::InvalidArgument, "degrees exceed part sizes");
  const std::size_t e = static_cast<std::size_t>(n) * d1;
  std::vector<int> stubs(e);
  std::vector<int> stamp(m, -1);
  std::vector<Edge> edges(e);
  for (long long attempt = 0; attempt <= max_rejections; ++attempt) {
    for (std::size_t p = 0; p < e; ++p) stubs[p] = static_cast<int>(p / d2);
    std::fill(stamp.begin(), stamp.end(), -1);
    bool simple = true;
    for (std::size_t p = 0; p < e && simple; ++p) {
      std::uniform_int_distribution<std::size_t> pick(p, e - 1);
      std::swap(stubs[p], stubs[pick(rng)]);
      const int i = static_cast<int>(p / d1), j = stubs[p];
      if (stamp[j] == i) simple = false;
      stamp[j] = i;
      edges[p] = {i, j};
    }
    if (simple) return new_biregular(n, m, d1, d2, edges);
  }
  throw Error(ErrorKind::RejectionBudgetExceeded,
              "no simple matching after " + std::to_string(max_rejections) + " rejections");
}

inline std::vector<Edge> circulant_seed(int n, int m, int d1, int d2) {
  check_sampler_shape(n, m, d1, d2);
  if (d1 > m || d2 > n)
    throw Error(ErrorKind::SeedConstructionFailed, "degrees exceed part sizes");
  const std::size_t e = static_cast<std::size_t>(n) * d1;
  std::vector<Edge> edges(e);
  for (std::size_t k = 0; k < e; ++k)
    edges[k] = {static_cast<int>(k / d1), static_cast<int>(k % m)};
  return edges;
}

// Called after every accepted swap with the current edge list.
using SwapObserver = std::function<void(const std::vector<Edge>&)>;

inline BiregularGraph sample_switch_chain(int n, int m, int d1, int d2, const SamplerConfig& cfg,
                                          Rng& rng, const SwapObserver& observer = {}) {
  std::vector<Edge> edges = circulant_seed(n, m, d1, d2);
  std::vector<std::vector<int>> left(n), right(m);
  for (auto [i, j] : edges) {
    left[i].push_back(j);
    right[j].push_back(i);
  }
  auto adjacent = [&](int i, int j) {
    if (left[i].size() <= right[j].size())
      return std::find(left[i].begin(), left[i].end(), j) != left[i].end();
    return std::find(right[j].begin(), right[j].end(), i) != right[j].end();
  };
  auto replace = [](std::vector<int>& v, int from, int to) { *std::find(v.begin(), v.end(), from) = to; };

  const long long e = static_cast<long long>(edges.size());
  const long long proposals = cfg.mcmc_steps > 0 ? cfg.mcmc_steps : 100 * e;
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  for (long long step = 0; step < proposals; ++step) {
    const std::size_t a = pick(rng), b = pick(rng);
    auto [i1, j1] = edges[a];
    auto [i2, j2] = edges[b];
    if (i1 == i2 || j1 == j2) continue;
    if (adjacent(i1, j2) || adjacent(i2, j1)) continue;
    replace(left[i1], j1, j2);
    replace(left[i2], j2, j1);
    replace(right[j1], i1, i2);
    replace(right[j2], i2, i1);
    edges[a] = {i1, j2};
    edges[b] = {i2, j1};
    if (observer) observer(edges);
  }
  return new_biregular(n, m, d1, d2, std::move(edges));
}

inline SamplerMethod choose_method(int n, int d1, int d2, const SamplerConfig& cfg) {
  if (cfg.method != SamplerMethod::Auto) return cfg.method;
  const double q = (d1 - 1.0) * (d2 - 1.0);
  if (static_cast<double>(d1) * d2 > cfg.density_threshold * n) return SamplerMethod::SwitchChain;
  if (std::exp(q / 2.0) > cfg.max_expected_attempts) return SamplerMethod::SwitchChain;
  return SamplerMethod::ExactRejection;
}

inline BiregularGraph sample(int n, int m, int d1, int d2, const SamplerConfig& cfg, Rng& rng) {
  switch (choose_method(n, d1, d2, cfg)) {
    case SamplerMethod::SwitchChain:
      return sample_switch_chain(n, m, d1, d2, cfg, rng);
    case SamplerMethod::ExactRejection:
      if (cfg.method == SamplerMethod::ExactRejection)
        return sample_configuration(n, m, d1, d2, rng, cfg.max_rejections);
      try {
        return sample_configuration(n, m, d1, d2, rng, cfg.max_rejections);
      } catch (const Error& ex) {
        if (ex.kind() != ErrorKind::RejectionBudgetExceeded) throw;
        return sample_switch_chain(n, m, d1, d2, cfg, rng);
      }
    default:
      break;
  }
  return sample_switch_chain(n, m, d1, d2, cfg, rng);
}

// Every simple (n,m,d1,d2) graph exactly once, in lexicographic order of biadjacency rows.
inline std::vector<BiregularGraph> enumerate_all(int n, int m, int d1, int d2) {
  check_sampler_shape(n, m, d1, d2);
  if (n * m > 25) throw Error(ErrorKind::TooLarge, "enumeration needs n*m <= 25");
  std::vector<BiregularGraph> out;
  if (d1 > m || d2 > n) return out;
  std::vector<int> colsum(m, 0);
  std::vector<Edge> edges;
  std::function<void(int)> row;
  std::function<void(int, int, int)> pick = [&](int i, int from, int left) {
    if (left == 0) {
      row(i + 1);
      return;
    }
    for (int j = from; j <= m - left; ++j) {
      if (colsum[j] == d2) continue;
      ++colsum[j];
      edges.emplace_back(i, j);
      pick(i, j + 1, left - 1);
      edges.pop_back();
      --colsum[j];
    }
  };
  row = [&](int i) {
    if (i == n) {
      out.push_back(new_biregular(n, m, d1, d2, edges));
      return;
    }
    pick(i, 0, d1);
  };
  row(0);
  return out;
}

}  // namespace bispec
