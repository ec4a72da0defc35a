#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "bispec/error.hpp"

namespace bispec {

enum class ChebKind { T, U };

// T_k or U_k by the three-term recurrence; U_{-1} = 0 is accepted for convenience.
inline double cheb_eval(ChebKind kind, int k, double x) {
  if (k < 0) return 0.0;
  double prev = 1.0;
  double cur = kind == ChebKind::T ? x : 2.0 * x;
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double p_poly(int k, int d1, double x) {
  if (k < 1 || d1 < 2) throw Error(ErrorKind::InvalidArgument, "p_k needs k >= 1, d1 >= 2");
  return cheb_eval(ChebKind::U, k, x / 2) - cheb_eval(ChebKind::U, k - 2, x / 2) / (d1 - 1.0);
}

inline double phi_poly(int k, double x) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "Phi_k needs k >= 0");
  return k == 0 ? 1.0 : 2.0 * cheb_eval(ChebKind::T, k, x / 2);
}

// Gamma_k - Phi_k: (d1-2)/(d1-1)^{k/2} for even k >= 2, zero otherwise.
inline double gamma_shift(int k, int d1) {
  if (k < 2 || k % 2) return 0.0;
  return (d1 - 2.0) / std::pow(d1 - 1.0, k / 2);
}

inline double gamma_poly(int k, int d1, double x) {
  if (k < 0 || d1 < 2) throw Error(ErrorKind::InvalidArgument, "Gamma_k needs k >= 0, d1 >= 2");
  return phi_poly(k, x) + gamma_shift(k, d1);
}

enum class Basis { Phi, Gamma };

inline const char* basis_name(Basis b) { return b == Basis::Phi ? "phi" : "gamma"; }

struct ChebExpansion {
  Basis basis = Basis::Phi;
  int d1 = 0;                 // needed for the Gamma basis
  std::vector<double> coeffs;  // a_0 .. a_K
  double half_width = 2.0;     // fit interval [-K1, K1]
  double rho = 0.0;            // fitted geometric decay rate of |a_k|
  double tail_bound = 0.0;     // bound on |f - sum| over the fit interval

  int degree() const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
      if (coeffs[k] != 0.0) return k;
    return 0;
  }

  double coeff(int k) const { return k < static_cast<int>(coeffs.size()) ? coeffs[k] : 0.0; }

  double basis_value(int k, double x) const {
    return basis == Basis::Phi ? phi_poly(k, x) : gamma_poly(k, d1, x);
  }

  double operator()(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (coeffs[k] != 0.0) s += coeffs[k] * basis_value(static_cast<int>(k), x);
    return s;
  }
};

inline ChebExpansion convert_basis(const ChebExpansion& e, Basis to, int d1) {
  ChebExpansion out = e;
  if (out.coeffs.empty()) out.coeffs.assign(1, 0.0);
  if (e.basis == Basis::Gamma)
    for (std::size_t k = 2; k < out.coeffs.size(); k += 2)
      out.coeffs[0] += out.coeffs[k] * gamma_shift(static_cast<int>(k), e.d1);
  out.basis = Basis::Phi;
  out.d1 = 0;
  if (to == Basis::Gamma) {
    if (d1 < 2) throw Error(ErrorKind::InvalidArgument, "Gamma basis needs d1 >= 2");
    for (std::size_t k = 2; k < out.coeffs.size(); k += 2)
      out.coeffs[0] -= out.coeffs[k] * gamma_shift(static_cast<int>(k), d1);
    out.basis = Basis::Gamma;
    out.d1 = d1;
  }
  return out;
}

inline ChebExpansion single_term(Basis basis, int k, int d1 = 0, double a = 1.0) {
  ChebExpansion e;
  e.basis = basis;
  e.d1 = basis == Basis::Gamma ? d1 : 0;
  e.coeffs.assign(k + 1, 0.0);
  e.coeffs[k] = a;
  e.rho = INFINITY;
  return e;
}

namespace detail {

// Phi-basis coefficients from N midpoint nodes in theta: f(2 cos t) = a0 + 2 sum a_k cos(k t).
inline std::vector<double> phi_coefficients(const std::function<double(double)>& f, int kmax, int nodes) {
  std::vector<double> fv(nodes), th(nodes);
  for (int j = 0; j < nodes; ++j) {
    th[j] = M_PI * (j + 0.5) / nodes;
    fv[j] = f(2.0 * std::cos(th[j]));
  }
  std::vector<double> a(kmax + 1, 0.0);
  for (int k = 0; k <= kmax; ++k) {
    double s = 0.0;
    for (int j = 0; j < nodes; ++j) s += fv[j] * std::cos(k * th[j]);
    a[k] = s / nodes;
  }
  return a;
}

}  // namespace detail

// Largest value of |Phi_k| on [-K1, K1].
inline double phi_sup(int k, double half_width) {
  if (k == 0) return 1.0;
  if (half_width <= 2.0) return 2.0;
  return std::abs(phi_poly(k, half_width));
}

inline ChebExpansion fit_expansion(const std::function<double(double)>& f, Basis basis, int d1,
                                   double half_width, int max_k, double tol = 1e-12) {
  if (max_k < 1) throw Error(ErrorKind::InvalidArgument, "fit_expansion needs max_k >= 1");
  if (basis == Basis::Gamma && d1 < 2)
    throw Error(ErrorKind::InvalidArgument, "Gamma basis needs d1 >= 2");
  // Work with more coefficients than requested so the tail can be measured.
  const int probe = 2 * max_k + 8;
  int nodes = 4 * (probe + 1);
  std::vector<double> a = detail::phi_coefficients(f, probe, nodes);
  for (int round = 0; round < 6; ++round) {
    std::vector<double> b = detail::phi_coefficients(f, probe, 2 * nodes);
    double change = 0.0;
    for (int k = 0; k <= probe; ++k) change = std::max(change, std::abs(a[k] - b[k]));
    a = std::move(b);
    nodes *= 2;
    if (change < tol) break;
  }
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  scale = std::max(1.0, scale);
  const double cutoff = tol * scale;
  // Coefficients below this level are indistinguishable from quadrature round-off.
  const double noise = 1e-13 * scale;

  int keep = max_k;
  for (int k = 1; k <= max_k; ++k)
    if (std::abs(a[k]) < cutoff) {
      bool rest_small = true;
      for (int j = k; j <= std::min(probe, k + 3); ++j) rest_small &= std::abs(a[j]) < cutoff;
      if (rest_small) {
        keep = k - 1;
        break;
      }
    }

  // Decay rate from a log-linear fit over the resolved coefficients in [from, probe].
  int last = 0;
  auto decay_rate = [&](int from) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = from; k <= probe; ++k)
      if (std::abs(a[k]) > noise) {
        const double y = std::log(std::abs(a[k]));
        sx += k;
        sy += y;
        sxx += static_cast<double>(k) * k;
        sxy += k * y;
        ++cnt;
        last = std::max(last, k);
      }
    if (cnt < 2) return static_cast<double>(INFINITY);
    return std::exp(-(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
  };
  const double rho = decay_rate(1);
  // Algebraic decay shows up as a rate drifting towards 1, so judge on the far half.
  const double rho_tail = std::min(rho, decay_rate(probe / 2));
  const double s = half_width > 2.0 ? half_width / 2 + std::sqrt(half_width * half_width / 4 - 1) : 1.0;
  if (keep == max_k && std::abs(a[max_k]) >= cutoff && !(rho_tail > 1.1 * s))
    throw Error(ErrorKind::NonDecayingCoefficients,
                "coefficients do not decay fast enough on [-K1, K1]; rho estimate " +
                    std::to_string(rho_tail));

  ChebExpansion e;
  e.basis = Basis::Phi;
  e.half_width = half_width;
  e.rho = rho;
  e.coeffs.assign(a.begin(), a.begin() + keep + 1);
  double tail = 0.0;
  for (int k = 0; k <= keep; ++k) {
    if (std::abs(e.coeffs[k]) < noise) {
      e.coeffs[k] = 0.0;
    } else if (std::abs(e.coeffs[k]) < cutoff) {
      tail += std::abs(e.coeffs[k]) * phi_sup(k, half_width);
      e.coeffs[k] = 0.0;
    }
    tail += noise * 1e-2 * phi_sup(k, half_width);  // round-off in the kept coefficients
  }
  // Resolved but dropped coefficients, then a geometric model past the last resolved one.
  for (int k = keep + 1; k <= last; ++k)
    if (std::abs(a[k]) > noise) tail += std::abs(a[k]) * phi_sup(k, half_width);
  if (last > keep) {
    if (!(rho > s)) {
      tail = INFINITY;
    } else {
      const double ratio = s / rho;
      tail += 2.0 * std::abs(a[last]) * std::pow(s, last) * ratio / (1.0 - ratio);
    }
  }
  e.tail_bound = tail;
  return basis == Basis::Phi ? e : convert_basis(e, Basis::Gamma, d1);
}

// Variance 2 sum_{k>=2} k a_k^2 and covariance 2 sum k a_k b_k of Phi-basis expansions.
struct LimitMoment {
  double value = 0.0;
  double truncation_bound = 0.0;
};

inline LimitMoment cov_fg(const ChebExpansion& f, const ChebExpansion& g) {
  const ChebExpansion pf = convert_basis(f, Basis::Phi, f.d1);
  const ChebExpansion pg = convert_basis(g, Basis::Phi, g.d1);
  LimitMoment out;
  const std::size_t kmax = std::min(pf.coeffs.size(), pg.coeffs.size());
  for (std::size_t k = 2; k < kmax; ++k) out.value += 2.0 * k * pf.coeffs[k] * pg.coeffs[k];
  // Beyond the stored orders |a_k| <= |a_K| (rho)^{-(k-K)}; sum_k k r^k in closed form.
  auto tail = [](const ChebExpansion& e) {
    const int K = static_cast<int>(e.coeffs.size()) - 1;
    if (K < 1 || !std::isfinite(e.rho) || e.rho <= 1.0) return 0.0;
    const double r = 1.0 / e.rho;
    const double aK = std::abs(e.coeffs[K]);
    double s = 0.0;
    for (int k = K + 1; k < K + 400; ++k) s += k * std::pow(r, k - K);
    return aK * s;
  };
  const double tf = tail(pf), tg = tail(pg);
  double mf = 0, mg = 0;
  for (double v : pf.coeffs) mf = std::max(mf, std::abs(v));
  for (double v : pg.coeffs) mg = std::max(mg, std::abs(v));
  out.truncation_bound = 2.0 * (tf * mg + tg * mf + tf * tg);
  return out;
}

inline LimitMoment sigma_f(const ChebExpansion& f) { return cov_fg(f, f); }

// Mean of the limiting CNBW_k count: sum over divisors j >= 2 of k of q^j.
inline double mu_cnbw(int k, int d1, int d2) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "mu_cnbw needs k >= 1");
  const double q = (d1 - 1.0) * (d2 - 1.0);
  double s = 0.0;
  for (int j = 2; j <= k; ++j)
    if (k % j == 0) s += std::pow(q, j);
  return s;
}

// Limiting Poisson mean of the number of 2k-cycles.
inline double cycle_mean(int k, int d1, int d2) {
  return std::pow((d1 - 1.0) * (d2 - 1.0), k) / (2.0 * k);
}

inline int default_r_n(long long n, int d1, int d2, double beta = 0.4) {
  const double q = (d1 - 1.0) * (d2 - 1.0);
  if (q <= 1.0) return 1;
  return std::max(1, static_cast<int>(std::floor(beta * std::log(static_cast<double>(n)) / std::log(q))));
}

inline double m_f_n(const ChebExpansion& e, long long n, int d1, int d2, int r_n) {
  if (r_n < 1) throw Error(ErrorKind::InvalidArgument, "r_n must be >= 1");
  const ChebExpansion phi = convert_basis(e, Basis::Phi, e.d1);
  const double q = (d1 - 1.0) * (d2 - 1.0);
  double m = n * phi.coeff(0);
  for (int k = 1; k <= r_n; ++k) {
    const double a = phi.coeff(k);
    if (a == 0.0) continue;
    double inner = mu_cnbw(k, d1, d2);
    if (k % 2 == 0) inner -= n * (d1 - 2.0) * std::pow(d2 - 1.0, k / 2);
    m += a * std::pow(q, -k / 2.0) * inner;
  }
  return m;
}

}  // namespace bispec
