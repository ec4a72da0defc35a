#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bispec/chebyshev.hpp"
#include "bispec/error.hpp"
#include "bispec/graph.hpp"
#include "bispec/stats.hpp"
#include "bispec/walks.hpp"

namespace bispec {

struct SpectrumSample {
  std::vector<double> eigenvalues;  // descending
  int n = 0, m = 0, d1 = 0, d2 = 0;
  double q = 0.0;
  double residual = 0.0;  // |sum lambda^2 - ||M||_F^2| / ||M||_F^2
};

inline SpectrumSample eigenvalues(const BiregularGraph& g) {
  const ScaledGramMatrix sg = scaled_gram(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sg.entries, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SolverFailure, "eigen-solver did not converge");
  SpectrumSample s;
  s.n = g.n();
  s.m = g.m();
  s.d1 = g.d1();
  s.d2 = g.d2();
  s.q = static_cast<double>(g.q());
  const auto& ev = es.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.rbegin(), s.eigenvalues.rend());
  double sq = 0.0;
  for (double l : s.eigenvalues) sq += l * l;
  const double fro = sg.entries.squaredNorm();
  s.residual = fro > 0 ? std::abs(sq - fro) / fro : std::abs(sq);
  return s;
}

inline double linear_statistic(const SpectrumSample& s, const std::function<double(double)>& f) {
  double t = 0.0;
  for (double l : s.eigenvalues) t += f(l);
  return t;
}

// Sum f(lambda_i) - n a_0 with f given in the Gamma basis.
inline double fluctuation_fixed(const SpectrumSample& s, const ChebExpansion& e) {
  const ChebExpansion g = convert_basis(e, Basis::Gamma, s.d1);
  return linear_statistic(s, g) - s.n * g.coeff(0);
}

// Sum f(lambda_i) - m_f^(n).
inline double fluctuation_growing(const SpectrumSample& s, const ChebExpansion& e, int r_n) {
  const ChebExpansion p = convert_basis(e, Basis::Phi, 0);
  return linear_statistic(s, p) - m_f_n(p, s.n, s.d1, s.d2, r_n);
}

struct IdentityRow {
  int k = 0;
  double spectral = 0.0;       // sum over eigenvalues
  double combinatorial = 0.0;  // q^{-k/2} times the walk count
  double residual = 0.0;
  bool within(double rel_tol) const {
    return residual <= rel_tol * std::max(1.0, std::abs(combinatorial));
  }
};

// Rows k = 1..kmax of sum Gamma_k(lambda) = q^{-k/2} CNBW_k (gamma == true)
// or sum p_k(lambda) = q^{-k/2} NBW_k (gamma == false).
inline std::vector<IdentityRow> identity_table(const BiregularGraph& g, const SpectrumSample& s,
                                               int kmax, bool gamma) {
  const auto nbw = nbw_traces(g, kmax);
  const auto counts = gamma ? cnbw_from_nbw(nbw, g.d2(), g.q()) : nbw;
  std::vector<IdentityRow> rows;
  for (int k = 1; k <= kmax; ++k) {
    IdentityRow r;
    r.k = k;
    r.spectral = linear_statistic(
        s, [&](double x) { return gamma ? gamma_poly(k, g.d1(), x) : p_poly(k, g.d1(), x); });
    r.combinatorial = to_double(counts[k]) * std::pow(s.q, -k / 2.0);
    r.residual = std::abs(r.spectral - r.combinatorial);
    rows.push_back(r);
  }
  return rows;
}

inline double gamma_identity_residual(const BiregularGraph& g, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "identity needs k >= 1");
  return identity_table(g, eigenvalues(g), k, true).back().residual;
}

inline double nbw_identity_residual(const BiregularGraph& g, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "identity needs k >= 1");
  return identity_table(g, eigenvalues(g), k, false).back().residual;
}

enum class Model { Semicircle, FixedDegree, ShiftedMP };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::Semicircle: return "semicircle";
    case Model::FixedDegree: return "fixed_degree";
    case Model::ShiftedMP: return "shifted_mp";
  }
  return "semicircle";
}

inline Model parse_model(const std::string& s) {
  if (s == "semicircle") return Model::Semicircle;
  if (s == "fixed_degree" || s == "fixed-degree") return Model::FixedDegree;
  if (s == "shifted_mp" || s == "shifted-mp") return Model::ShiftedMP;
  throw Error(ErrorKind::InvalidArgument, "unknown model '" + s + "'");
}

struct ModelParams {
  int d1 = 0;
  int d2 = 0;
  double alpha = 1.0;
};

inline void check_model(Model model, const ModelParams& p) {
  if (model == Model::FixedDegree && (p.d1 < 2 || p.d2 < 2 || (p.d1 - 1) * (p.d2 - 1) <= 1))
    throw Error(ErrorKind::InvalidArgument, "fixed-degree law needs q > 1");
  if (model == Model::ShiftedMP && !(p.alpha >= 1.0))
    throw Error(ErrorKind::InvalidArgument, "shifted MP law needs alpha >= 1");
}

// Densities on [-2,2]; zero outside the support. For d1 < d2 the fixed-degree density
// carries mass d1/d2 only; the rest is the atom at fixed_degree_atom (rank deficiency of XX^T).
inline double reference_density(Model model, const ModelParams& p, double x) {
  if (!(x > -2.0 && x < 2.0)) return 0.0;
  const double sc = std::sqrt(1.0 - x * x / 4.0) / M_PI;
  switch (model) {
    case Model::Semicircle:
      return sc;
    case Model::FixedDegree: {
      const double q = (p.d1 - 1.0) * (p.d2 - 1.0), rq = std::sqrt(q), b = p.d2 - 1.0;
      return (1.0 + b / q) / ((1.0 + 1.0 / q - x / rq) * (1.0 + b * b / q + b * x / rq)) * sc;
    }
    case Model::ShiftedMP: {
      const double a = p.alpha;
      return a / (1.0 + a + std::sqrt(a) * x) * sc;
    }
  }
  return 0.0;
}

// Position and mass of the point mass of the fixed-degree law (mass 0 when d1 >= d2).
inline std::pair<double, double> fixed_degree_atom(const ModelParams& p) {
  const double q = (p.d1 - 1.0) * (p.d2 - 1.0);
  return {-(p.d1 + p.d2 - 2.0) / std::sqrt(q), p.d1 < p.d2 ? 1.0 - static_cast<double>(p.d1) / p.d2 : 0.0};
}

// Tabulated CDF; integrates in theta (x = 2 cos theta) where the integrands are smooth.
class ModelCdf {
 public:
  ModelCdf(Model model, const ModelParams& p, int cells = 8192) : model_(model) {
    check_model(model, p);
    if (model == Model::Semicircle) return;
    table_.assign(cells + 1, 0.0);
    // table_[c] = mass of [2 cos(theta_c), 2], theta_c = pi c / cells
    const double h = M_PI / cells;
    const double gl[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    const double gw[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
    for (int c = 0; c < cells; ++c) {
      double s = 0.0;
      for (int t = 0; t < 3; ++t) {
        const double th = h * (c + 0.5 + 0.5 * gl[t]);
        s += gw[t] * reference_density(model, p, 2.0 * std::cos(th)) * 2.0 * std::sin(th);
      }
      table_[c + 1] = table_[c] + 0.5 * h * s;
    }
    total_ = table_.back();
    if (model == Model::FixedDegree) std::tie(atom_at_, atom_) = fixed_degree_atom(p);
  }

  double operator()(double x) const {
    if (x <= -2.0) return x >= atom_at_ ? atom_ : 0.0;
    if (x >= 2.0) return 1.0;
    if (model_ == Model::Semicircle)
      return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * M_PI) + std::asin(x / 2.0) / M_PI;
    const double pos = std::acos(x / 2.0) / M_PI * (table_.size() - 1);
    const std::size_t c = std::min(static_cast<std::size_t>(pos), table_.size() - 2);
    const double frac = pos - c;
    const double upper = table_[c] + frac * (table_[c + 1] - table_[c]);
    return std::clamp(1.0 - (1.0 - atom_) * upper / total_, 0.0, 1.0);
  }

  double left_limit(double x) const { return x == atom_at_ ? 0.0 : (*this)(x); }

  // Mass of the absolutely continuous part, from the table (before renormalization).
  double continuous_mass() const { return model_ == Model::Semicircle ? 1.0 : total_; }
  double atom_position() const { return atom_at_; }
  double atom_mass() const { return atom_; }

 private:
  Model model_;
  std::vector<double> table_;
  double total_ = 1.0;
  double atom_at_ = -INFINITY;
  double atom_ = 0.0;
};

struct EsdOptions {
  bool include_top = false;
  // Semicircle only: subtract the finite-n bulk offset (d2-2)/sqrt(q). The other two
  // laws describe the shifted matrix and always apply it.
  bool recenter = false;
};

inline std::vector<double> bulk_values(const SpectrumSample& s, bool include_top, double shift) {
  std::vector<double> xs;
  for (std::size_t i = include_top ? 0 : 1; i < s.eigenvalues.size(); ++i)
    xs.push_back(s.eigenvalues[i] - shift);
  return xs;
}

inline double esd_distance(const SpectrumSample& s, Model model, const ModelParams& p,
                           const EsdOptions& opt = {}) {
  const double offset = (s.d2 - 2.0) / std::sqrt(s.q);
  const double shift = (model != Model::Semicircle || opt.recenter) ? offset : 0.0;
  const ModelCdf cdf(model, p);
  std::vector<double> xs = bulk_values(s, opt.include_top, shift);
  // Eigenvalues sitting on the atom differ from it only by round-off.
  if (cdf.atom_mass() > 0)
    for (double& x : xs)
      if (std::abs(x - cdf.atom_position()) < 1e-8) x = cdf.atom_position();
  return ks_distance(xs, [&](double x) { return cdf(x); }, [&](double x) { return cdf.left_limit(x); });
}

struct EdgeCheck {
  bool passed = false;
  double max_deviation = 0.0;  // max over i >= 2 of |lambda_i - (d2-2)/sqrt(q)|
};

inline EdgeCheck spectral_edge_check(const SpectrumSample& s, double slack) {
  EdgeCheck e;
  const double offset = (s.d2 - 2.0) / std::sqrt(s.q);
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i)
    e.max_deviation = std::max(e.max_deviation, std::abs(s.eigenvalues[i] - offset));
  e.passed = e.max_deviation <= 2.0 + slack;
  return e;
}

}  // namespace bispec
