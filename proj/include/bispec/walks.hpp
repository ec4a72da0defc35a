#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bispec/cycles.hpp"
#include "bispec/error.hpp"
#include "bispec/graph.hpp"
#include "bispec/matrix.hpp"

namespace bispec {

using Count = boost::multiprecision::cpp_int;

inline double to_double(const Count& c) { return c.convert_to<double>(); }

namespace detail {

struct OverflowSignal {};

inline std::int64_t mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t p, s;
  if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(acc, p, &s)) throw OverflowSignal{};
  return s;
}
inline Count mul_add(const Count& acc, const Count& a, const Count& b) { return acc + a * b; }

// A^(1), ..., A^(kmax) (index 0 unused) via
//   A^(1) = XX^T - d1 I,  A^(2) = (A^(1))^2 - d1(d2-1) I,  A^(k+1) = A^(1) A^(k) - q A^(k-1).
template <class T>
std::vector<DenseMatrix<T>> nbw_matrices(const BiregularGraph& g, int kmax) {
  const int n = g.n();
  const auto base = shifted_gram(g);
  std::vector<std::vector<std::pair<int, T>>> sparse(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (base(i, j) != 0) sparse[i].emplace_back(j, T(base(i, j)));

  std::vector<DenseMatrix<T>> a(kmax + 1);
  a[1] = DenseMatrix<T>(n, n);
  for (int i = 0; i < n; ++i)
    for (auto& [j, v] : sparse[i]) a[1](i, j) = v;

  const T q = T(g.q());
  const T two_step = T(static_cast<std::int64_t>(g.d1()) * (g.d2() - 1));
  for (int k = 1; k < kmax; ++k) {
    DenseMatrix<T> next(n, n);
    const DenseMatrix<T>& cur = a[k];
    for (int i = 0; i < n; ++i)
      for (auto& [j, v] : sparse[i]) {
        const T* src = &cur.data[static_cast<std::size_t>(j) * n];
        T* dst = &next.data[static_cast<std::size_t>(i) * n];
        for (int c = 0; c < n; ++c) dst[c] = mul_add(dst[c], v, src[c]);
      }
    if (k == 1) {
      for (int i = 0; i < n; ++i) next(i, i) = mul_add(next(i, i), T(-1), two_step);
    } else {
      const T neg_q = T(-1) * q;
      for (std::size_t p = 0; p < next.data.size(); ++p)
        next.data[p] = mul_add(next.data[p], neg_q, a[k - 1].data[p]);
    }
    a[k + 1] = std::move(next);
  }
  return a;
}

template <class T>
DenseMatrix<Count> widen(const DenseMatrix<T>& m) {
  DenseMatrix<Count> out(m.rows, m.cols);
  for (std::size_t p = 0; p < m.data.size(); ++p) out.data[p] = Count(m.data[p]);
  return out;
}

}  // namespace detail

// A^(k) with 64-bit arithmetic, redone in arbitrary precision if any entry overflows.
inline DenseMatrix<Count> nbw_matrix(const BiregularGraph& g, int k, bool arbitrary_precision = true) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "nbw_matrix needs k >= 1");
  try {
    return detail::widen(detail::nbw_matrices<std::int64_t>(g, k)[k]);
  } catch (const detail::OverflowSignal&) {
    if (!arbitrary_precision) throw Error(ErrorKind::Overflow, "A^(k) entries exceed 64 bits");
  }
  return detail::nbw_matrices<Count>(g, k)[k];
}

// Traces of A^(1..kmax); entry 0 is unused and zero.
inline std::vector<Count> nbw_traces(const BiregularGraph& g, int kmax, bool arbitrary_precision = true) {
  if (kmax < 1) throw Error(ErrorKind::InvalidArgument, "nbw traces need kmax >= 1");
  std::vector<Count> t(kmax + 1, 0);
  try {
    auto a = detail::nbw_matrices<std::int64_t>(g, kmax);
    for (int k = 1; k <= kmax; ++k) t[k] = Count(a[k].trace());
    return t;
  } catch (const detail::OverflowSignal&) {
    if (!arbitrary_precision) throw Error(ErrorKind::Overflow, "A^(k) entries exceed 64 bits");
  }
  auto a = detail::nbw_matrices<Count>(g, kmax);
  for (int k = 1; k <= kmax; ++k) t[k] = a[k].trace();
  return t;
}

inline Count nbw_count(const BiregularGraph& g, int k) { return nbw_traces(g, k)[k]; }

// Tail recursion CNBW_k = NBW_k - q NBW_{k-2} + (d2-1) CNBW_{k-2}, seeded by CNBW_{1,2} = NBW_{1,2}.
inline std::vector<Count> cnbw_from_nbw(const std::vector<Count>& nbw, long long d2, long long q) {
  std::vector<Count> c(nbw.size(), 0);
  for (std::size_t k = 1; k < nbw.size(); ++k)
    c[k] = k <= 2 ? nbw[k] : nbw[k] - Count(q) * nbw[k - 2] + Count(d2 - 1) * c[k - 2];
  return c;
}

inline std::vector<Count> cnbw_counts(const BiregularGraph& g, int kmax) {
  return cnbw_from_nbw(nbw_traces(g, kmax), g.d2(), g.q());
}

inline Count cnbw_count(const BiregularGraph& g, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "cnbw_count needs k >= 1");
  return cnbw_counts(g, k)[k];
}

enum class WalkKind { NBW, CNBW };

// Direct enumeration of closed walks u1 v1 u2 ... uk vk u1 from V1 with
// u_{i+1} != u_i and v_{i+1} != v_i; CNBW additionally rejects (v_k, u_k) == (v_1, u_2).
inline Count brute_force_walks(const BiregularGraph& g, int k, WalkKind kind,
                               double budget = 1e9) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "walk length needs k >= 1");
  const double size = static_cast<double>(g.n()) * g.d1() *
                      std::pow(std::max<double>(1.0, static_cast<double>(g.q())), k - 1);
  if (size > budget) throw Error(ErrorKind::TooLarge, "walk space exceeds enumeration budget");
  std::vector<int> u(k + 1), v(k);
  std::int64_t total = 0;
  auto step = [&](auto&& self, int i) -> void {
    // u[0..i] and v[0..i-1] fixed; choose v[i], then u[i+1]
    for (int vv : g.left(u[i])) {
      if (i > 0 && vv == v[i - 1]) continue;
      v[i] = vv;
      for (int uu : g.right(vv)) {
        if (uu == u[i]) continue;
        u[i + 1] = uu;
        if (i + 1 == k) {
          if (uu != u[0]) continue;
          if (kind == WalkKind::CNBW && k >= 2 && v[k - 1] == v[0] && u[k - 1] == u[1]) continue;
          ++total;
        } else {
          self(self, i + 1);
        }
      }
    }
  };
  for (int s = 0; s < g.n(); ++s) {
    u[0] = s;
    step(step, 0);
  }
  return Count(total);
}

struct WalkCountTable {
  int r = 0;
  long long q = 0;
  // indexed by k = 0..r; entry 0 unused
  std::vector<std::int64_t> cycles;
  std::vector<Count> nbw;
  std::vector<Count> cnbw;
  std::vector<Count> bad;
};

inline WalkCountTable walk_table(const BiregularGraph& g, int r) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "walk_table needs r >= 1");
  WalkCountTable t;
  t.r = r;
  t.q = g.q();
  t.cycles = cycle_counts(g, r);
  t.nbw = nbw_traces(g, r);
  t.cnbw = cnbw_from_nbw(t.nbw, g.d2(), g.q());
  t.bad.assign(r + 1, 0);
  for (int k = 1; k <= r; ++k) {
    Count around = 0;
    for (int j = 1; j <= k; ++j)
      if (k % j == 0) around += Count(2 * j) * t.cycles[j];
    t.bad[k] = t.cnbw[k] - around;
    if (t.bad[k] < 0)
      throw Error(ErrorKind::InvariantViolated,
                  "negative bad-walk count at k=" + std::to_string(k));
  }
  return t;
}

}  // namespace bispec
