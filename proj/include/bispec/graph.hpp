#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bispec/error.hpp"
#include "bispec/matrix.hpp"

namespace bispec {

using Edge = std::pair<int, int>;  // (V1 vertex, V2 vertex)

class BiregularGraph {
 public:
  BiregularGraph() = default;

  int n() const { return n_; }
  int m() const { return m_; }
  int d1() const { return d1_; }
  int d2() const { return d2_; }
  long long q() const { return static_cast<long long>(d1_ - 1) * (d2_ - 1); }

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const int> left(int i) const {
    return {left_.data() + static_cast<std::size_t>(i) * d1_, static_cast<std::size_t>(d1_)};
  }
  std::span<const int> right(int j) const {
    return {right_.data() + static_cast<std::size_t>(j) * d2_, static_cast<std::size_t>(d2_)};
  }

  bool has_edge(int i, int j) const {
    std::size_t bit = static_cast<std::size_t>(i) * stride_ * 64 + j;
    return (bits_[bit >> 6] >> (bit & 63)) & 1ULL;
  }

  bool operator==(const BiregularGraph& o) const {
    return n_ == o.n_ && m_ == o.m_ && d1_ == o.d1_ && d2_ == o.d2_ && edges_ == o.edges_;
  }

  friend BiregularGraph new_biregular(int n, int m, int d1, int d2, std::vector<Edge> edges);

 private:
  int n_ = 0, m_ = 0, d1_ = 0, d2_ = 0;
  std::size_t stride_ = 0;  // 64-bit words per row of the biadjacency bitmap
  std::vector<Edge> edges_;
  std::vector<int> left_, right_;
  std::vector<std::uint64_t> bits_;
};

inline BiregularGraph new_biregular(int n, int m, int d1, int d2, std::vector<Edge> edges) {
  if (n < 1 || m < 1 || d1 < 1 || d2 < 1)
    throw Error(ErrorKind::InvalidArgument, "n, m, d1, d2 must be positive");
  if (static_cast<long long>(n) * d1 != static_cast<long long>(m) * d2)
    throw Error(ErrorKind::BalanceViolation,
                std::to_string(n) + "*" + std::to_string(d1) + " != " + std::to_string(m) + "*" +
                    std::to_string(d2));
  for (auto [i, j] : edges)
    if (i < 0 || i >= n || j < 0 || j >= m)
      throw Error(ErrorKind::InvalidArgument,
                  "edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw Error(ErrorKind::DuplicateEdge,
                "(" + std::to_string(dup->first) + "," + std::to_string(dup->second) + ")");

  std::vector<int> row(n, 0), col(m, 0);
  for (auto [i, j] : edges) {
    ++row[i];
    ++col[j];
  }
  for (int i = 0; i < n; ++i)
    if (row[i] != d1)
      throw Error(ErrorKind::DegreeMismatch, "V1 vertex " + std::to_string(i) + " has degree " +
                                                 std::to_string(row[i]) + ", expected " +
                                                 std::to_string(d1));
  for (int j = 0; j < m; ++j)
    if (col[j] != d2)
      throw Error(ErrorKind::DegreeMismatch, "V2 vertex " + std::to_string(j) + " has degree " +
                                                 std::to_string(col[j]) + ", expected " +
                                                 std::to_string(d2));

  BiregularGraph g;
  g.n_ = n;
  g.m_ = m;
  g.d1_ = d1;
  g.d2_ = d2;
  g.stride_ = (static_cast<std::size_t>(m) + 63) / 64;
  g.bits_.assign(g.stride_ * n, 0);
  g.left_.resize(static_cast<std::size_t>(n) * d1);
  g.right_.resize(static_cast<std::size_t>(m) * d2);
  std::fill(row.begin(), row.end(), 0);
  std::fill(col.begin(), col.end(), 0);
  // edges are sorted by (i,j), so both adjacency lists come out sorted
  for (auto [i, j] : edges) {
    g.left_[static_cast<std::size_t>(i) * d1 + row[i]++] = j;
    g.right_[static_cast<std::size_t>(j) * d2 + col[j]++] = i;
    std::size_t bit = static_cast<std::size_t>(i) * g.stride_ * 64 + j;
    g.bits_[bit >> 6] |= 1ULL << (bit & 63);
  }
  g.edges_ = std::move(edges);
  return g;
}

inline BiregularGraph complete_bipartite(int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorKind::InvalidArgument, "n, m must be positive");
  std::vector<Edge> e;
  e.reserve(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) e.emplace_back(i, j);
  return new_biregular(n, m, m, n, std::move(e));
}

inline Eigen::MatrixXd full_adjacency(const BiregularGraph& g) {
  const int n = g.n(), m = g.m();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + m, n + m);
  for (auto [i, j] : g.edges()) {
    a(i, n + j) = 1.0;
    a(n + j, i) = 1.0;
  }
  return a;
}

// XX^T - d1 I as exact integers.
inline DenseMatrix<std::int64_t> shifted_gram(const BiregularGraph& g) {
  const int n = g.n();
  DenseMatrix<std::int64_t> a(n, n);
  for (int j = 0; j < g.m(); ++j) {
    auto nb = g.right(j);
    for (std::size_t s = 0; s < nb.size(); ++s)
      for (std::size_t t = 0; t < nb.size(); ++t)
        if (s != t) a(nb[s], nb[t]) += 1;
  }
  return a;
}

struct ScaledGramMatrix {
  Eigen::MatrixXd entries;
  long long q = 0;
  int d1 = 0;
  int d2 = 0;
};

inline ScaledGramMatrix scaled_gram(const BiregularGraph& g) {
  if (g.d1() == 1 || g.d2() == 1)
    throw Error(ErrorKind::DegenerateScaling, "scaling needs d1 > 1 and d2 > 1");
  const int n = g.n();
  const double s = 1.0 / std::sqrt(static_cast<double>(g.q()));
  ScaledGramMatrix out;
  out.q = g.q();
  out.d1 = g.d1();
  out.d2 = g.d2();
  out.entries = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < g.m(); ++j) {
    auto nb = g.right(j);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        out.entries(nb[a], nb[b]) += 1.0;
        out.entries(nb[b], nb[a]) += 1.0;
      }
  }
  out.entries *= s;
  return out;
}

inline double top_eigenvalue(int d1, int d2) {
  return d1 * (d2 - 1.0) / std::sqrt((d1 - 1.0) * (d2 - 1.0));
}

}  // namespace bispec
