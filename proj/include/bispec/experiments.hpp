#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bispec/chebyshev.hpp"
#include "bispec/cycles.hpp"
#include "bispec/error.hpp"
#include "bispec/graph.hpp"
#include "bispec/parallel.hpp"
#include "bispec/rng.hpp"
#include "bispec/sampler.hpp"
#include "bispec/spectra.hpp"
#include "bispec/stats.hpp"

namespace bispec {

using json = nlohmann::json;

struct StatSummary {
  std::string name;
  long long count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  double ci_low = 0.0;   // 95% normal interval for the mean
  double ci_high = 0.0;
};

inline StatSummary summarize(const std::string& name, const std::vector<double>& xs) {
  RunningStats rs;
  for (double x : xs) rs.add(x);
  StatSummary s;
  s.name = name;
  s.count = rs.count;
  s.mean = rs.mean;
  s.variance = rs.variance();
  s.stderr_mean = rs.stderr_mean();
  s.ci_low = s.mean - 1.96 * s.stderr_mean;
  s.ci_high = s.mean + 1.96 * s.stderr_mean;
  return s;
}

struct ExperimentReport {
  std::string name;
  json parameters = json::object();  // always includes the seed
  std::vector<StatSummary> statistics;
  std::map<std::string, double> distances;    // TV / KS values, all in [0,1]
  std::map<std::string, double> diagnostics;  // targets, gaps, bias estimates
  std::vector<std::string> warnings;
  std::vector<std::string> columns;           // raw per-trial values
  std::vector<std::vector<double>> rows;

  const StatSummary& stat(const std::string& n) const {
    for (const auto& s : statistics)
      if (s.name == n) return s;
    throw Error(ErrorKind::InvalidArgument, "no statistic named " + n);
  }

  std::vector<double> column(const std::string& n) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == n) {
        std::vector<double> out;
        for (const auto& r : rows) out.push_back(r[c]);
        return out;
      }
    throw Error(ErrorKind::InvalidArgument, "no column named " + n);
  }

  json to_json() const {
    json st = json::array();
    for (const auto& s : statistics)
      st.push_back({{"name", s.name},
                    {"count", s.count},
                    {"mean", s.mean},
                    {"variance", s.variance},
                    {"stderr", s.stderr_mean},
                    {"ci95", {s.ci_low, s.ci_high}}});
    return {{"experiment", name},  {"parameters", parameters}, {"statistics", st},
            {"distances", distances}, {"diagnostics", diagnostics}, {"warnings", warnings}};
  }

  std::string samples_table() const {
    std::ostringstream out;
    out.precision(17);
    out << "# seed=" << parameters.value("seed", std::uint64_t{0}) << "\n";
    out << "trial";
    for (const auto& c : columns) out << "," << c;
    out << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << i;
      for (double v : rows[i]) out << "," << v;
      out << "\n";
    }
    return out.str();
  }
};

struct ExperimentOptions {
  SamplerConfig sampler;
  int threads = 0;
};

namespace detail {

inline std::vector<double> transpose_column(const std::vector<std::vector<double>>& rows, std::size_t c) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

inline json sampler_json(const SamplerConfig& s) {
  return {{"method", method_name(s.method)},
          {"mcmc_steps", s.mcmc_steps},
          {"max_rejections", s.max_rejections},
          {"density_threshold", s.density_threshold},
          {"max_expected_attempts", s.max_expected_attempts}};
}

}  // namespace detail

// ---------------------------------------------------------------- cycle counts

inline ExperimentReport poisson_experiment(int n, int m, int d1, int d2, int r, long long samples,
                                           std::uint64_t seed, const ExperimentOptions& opt = {}) {
  if (r < 2) throw Error(ErrorKind::InvalidArgument, "poisson experiment needs r >= 2");
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  ExperimentReport rep;
  rep.name = "poisson";
  rep.parameters = {{"n", n}, {"m", m}, {"d1", d1}, {"d2", d2}, {"r", r},
                    {"samples", samples}, {"seed", seed}, {"sampler", detail::sampler_json(opt.sampler)}};

  auto counts = parallel_map<std::vector<std::int64_t>>(samples, opt.threads, [&](std::size_t i) {
    Rng rng = derive_stream(seed, i);
    return cycle_counts(sample(n, m, d1, d2, opt.sampler, rng), r);
  });

  for (int k = 2; k <= r; ++k) rep.columns.push_back("C" + std::to_string(k));
  for (const auto& c : counts) {
    std::vector<double> row;
    for (int k = 2; k <= r; ++k) row.push_back(static_cast<double>(c[k]));
    rep.rows.push_back(row);
  }

  // Per-coordinate bins 0..hi_k plus one overflow bin; the product lattice keeps >= 99.9%
  // of the product-Poisson mass inside the regular cells.
  const int dims = r - 1;
  std::vector<long long> hi(dims);
  std::vector<double> mu(dims);
  double cells = 1.0;
  for (int t = 0; t < dims; ++t) {
    mu[t] = cycle_mean(t + 2, d1, d2);
    hi[t] = static_cast<long long>(poisson_quantile(mu[t], 1.0 - 0.001 / dims));
    cells *= static_cast<double>(hi[t] + 2);
  }
  auto bin_prob = [&](int t, long long b) {
    if (b <= hi[t]) return poisson_pmf(mu[t], b);
    double below = 0.0;
    for (long long v = 0; v <= hi[t]; ++v) below += poisson_pmf(mu[t], v);
    return std::max(0.0, 1.0 - below);
  };

  double max_marginal_tv = 0.0;
  for (int t = 0; t < dims; ++t) {
    const int k = t + 2;
    std::vector<double> col = detail::transpose_column(rep.rows, t);
    StatSummary s = summarize(rep.columns[t], col);
    rep.statistics.push_back(s);
    rep.diagnostics["mu_" + std::to_string(k)] = mu[t];
    rep.diagnostics["var_over_mean_" + std::to_string(k)] = s.variance / mu[t];
    rep.diagnostics["z_mean_" + std::to_string(k)] = s.stderr_mean > 0 ? (s.mean - mu[t]) / s.stderr_mean : 0.0;
    std::vector<double> emp(hi[t] + 2, 0.0);
    for (double v : col) emp[std::min<long long>(static_cast<long long>(v), hi[t] + 1)] += 1.0 / samples;
    double tv = 0.0;
    for (long long b = 0; b <= hi[t] + 1; ++b) tv += std::abs(emp[b] - bin_prob(t, b));
    tv = std::min(1.0, 0.5 * tv);
    rep.distances["tv_C" + std::to_string(k)] = tv;
    max_marginal_tv = std::max(max_marginal_tv, tv);
  }

  // Joint TV: observed cells explicitly, unobserved cells contribute their model mass.
  std::map<std::vector<long long>, double> joint;
  for (const auto& c : counts) {
    std::vector<long long> cell(dims);
    for (int t = 0; t < dims; ++t) cell[t] = std::min<long long>(c[t + 2], hi[t] + 1);
    joint[cell] += 1.0 / samples;
  }
  double seen_mass = 0.0, diff = 0.0;
  for (const auto& [cell, p] : joint) {
    double model = 1.0;
    for (int t = 0; t < dims; ++t) model *= bin_prob(t, cell[t]);
    seen_mass += model;
    diff += std::abs(p - model);
  }
  diff += std::max(0.0, 1.0 - seen_mass);
  rep.distances["tv_joint"] = std::min(1.0, 0.5 * diff);
  rep.diagnostics["tv_joint_cells"] = cells;
  rep.diagnostics["tv_joint_bias"] = std::sqrt(cells / samples);
  rep.diagnostics["tv_max_marginal"] = max_marginal_tv;
  const double lead = std::sqrt(static_cast<double>(r)) *
                      std::pow((d1 - 1.0) * (d2 - 1.0), 1.5 * r) / (static_cast<double>(n) * d1);
  rep.diagnostics["rate_leading_term"] = lead;
  return rep;
}

// ---------------------------------------------------------------- fixed degree

// One draw of sum_k a_k q^{-k/2} CNBW_k^inf with independent Poisson cycle counts.
inline double sample_limit_Yf(const ChebExpansion& e, int d1, int d2, int k_max, Rng& rng) {
  if (k_max < 2) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 2");
  const ChebExpansion g = convert_basis(e, Basis::Gamma, d1);
  const double q = (d1 - 1.0) * (d2 - 1.0);
  std::vector<long long> c(k_max + 1, 0);
  for (int j = 2; j <= k_max; ++j) {
    std::poisson_distribution<long long> pois(cycle_mean(j, d1, d2));
    c[j] = pois(rng);
  }
  double y = 0.0;
  for (int k = 2; k <= k_max; ++k) {
    const double a = g.coeff(k);
    if (a == 0.0) continue;
    double cnbw = 0.0;
    for (int j = 2; j <= k; ++j)
      if (k % j == 0) cnbw += 2.0 * j * c[j];
    y += a * std::pow(q, -k / 2.0) * cnbw;
  }
  return y;
}

inline double limit_mean_Yf(const ChebExpansion& e, int d1, int d2, int k_max) {
  const ChebExpansion g = convert_basis(e, Basis::Gamma, d1);
  const double q = (d1 - 1.0) * (d2 - 1.0);
  double m = 0.0;
  for (int k = 2; k <= k_max; ++k) m += g.coeff(k) * std::pow(q, -k / 2.0) * mu_cnbw(k, d1, d2);
  return m;
}

inline double limit_variance_Yf(const ChebExpansion& e, int d1, int d2, int k_max) {
  const ChebExpansion g = convert_basis(e, Basis::Gamma, d1);
  const double q = (d1 - 1.0) * (d2 - 1.0);
  double v = 0.0;
  for (int j = 2; j <= k_max; ++j) {
    double w = 0.0;  // weight of C_j in Y
    for (int k = j; k <= k_max; k += j) w += g.coeff(k) * std::pow(q, -k / 2.0) * 2.0 * j;
    v += w * w * cycle_mean(j, d1, d2);
  }
  return v;
}

struct FixedOptions {
  ExperimentOptions base;
  long long limit_samples = 0;  // 0 means as many as graph samples
  int k_max = 0;                // 0 means max(2, expansion degree)
  double bin_width = 0.0;       // 0 means automatic
};

inline bool is_prime(int k) {
  if (k < 2) return false;
  for (int d = 2; d * d <= k; ++d)
    if (k % d == 0) return false;
  return true;
}

inline ExperimentReport fluctuation_experiment_fixed(int n, int d1, int d2, const ChebExpansion& expansion,
                                                     long long samples, std::uint64_t seed,
                                                     const FixedOptions& opt = {}) {
  if (d1 == 2 && d2 == 2) throw Error(ErrorKind::InvalidArgument, "(d1,d2) = (2,2) is excluded");
  if ((static_cast<long long>(n) * d1) % d2)
    throw Error(ErrorKind::BalanceViolation, "n*d1 must be divisible by d2");
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  const int m = static_cast<int>(static_cast<long long>(n) * d1 / d2);
  const ChebExpansion g = convert_basis(expansion, Basis::Gamma, d1);
  const int k_max = opt.k_max > 0 ? opt.k_max : std::max(2, g.degree());
  const double q = (d1 - 1.0) * (d2 - 1.0);
  const double k1 = expansion.half_width > 2.0 ? expansion.half_width : top_eigenvalue(d1, d2);

  ExperimentReport rep;
  rep.name = "fluctuation_fixed";
  rep.parameters = {{"n", n},          {"m", m},         {"d1", d1},
                    {"d2", d2},        {"samples", samples}, {"seed", seed},
                    {"k_max", k_max},  {"basis", "gamma"}, {"coefficients", g.coeffs},
                    {"sampler", detail::sampler_json(opt.base.sampler)}};

  struct Trial {
    double y = 0.0;
    int outside = 0;
  };
  auto trials = parallel_map<Trial>(samples, opt.base.threads, [&](std::size_t i) {
    Rng rng = derive_stream(seed, i);
    const SpectrumSample s = eigenvalues(sample(n, m, d1, d2, opt.base.sampler, rng));
    Trial t;
    t.y = fluctuation_fixed(s, g);
    for (double l : s.eigenvalues) t.outside += std::abs(l) > k1 + 1e-9;
    return t;
  });
  const long long lim_n = opt.limit_samples > 0 ? opt.limit_samples : samples;
  auto limit = parallel_map<double>(lim_n, opt.base.threads, [&](std::size_t i) {
    Rng rng = derive_stream(seed ^ 0x6C696D6974ULL, i);
    return sample_limit_Yf(g, d1, d2, k_max, rng);
  });

  std::vector<double> ys;
  long long outside = 0;
  for (const auto& t : trials) {
    ys.push_back(t.y);
    outside += t.outside;
  }
  rep.columns = {"Y"};
  for (double y : ys) rep.rows.push_back({y});
  rep.statistics.push_back(summarize("Y", ys));
  rep.statistics.push_back(summarize("Y_limit_mc", limit));
  const double lm = limit_mean_Yf(g, d1, d2, k_max), lv = limit_variance_Yf(g, d1, d2, k_max);
  rep.diagnostics["limit_mean"] = lm;
  rep.diagnostics["limit_variance"] = lv;
  rep.diagnostics["mean_gap"] = rep.stat("Y").mean - lm;
  rep.diagnostics["variance_gap"] = rep.stat("Y").variance - lv;
  rep.diagnostics["eigenvalues_outside_fit_interval"] = static_cast<double>(outside);
  if (outside > 0) rep.warnings.push_back("sampled eigenvalues left the fit interval [-K1, K1]");

  // Shared discretization: the exact lattice for single-term expansions, else a quarter sd.
  int terms = 0, only = 0;
  for (int k = 2; k <= g.degree(); ++k)
    if (g.coeff(k) != 0.0) {
      ++terms;
      only = k;
    }
  double h = opt.bin_width;
  if (h <= 0.0) {
    if (terms == 1)
      h = std::abs(g.coeff(only)) * std::pow(q, -only / 2.0);
    else
      h = lv > 0 ? 0.25 * std::sqrt(lv) : 1.0;
  }
  rep.diagnostics["bin_width"] = h;
  rep.distances["tv_vs_limit_mc"] =
      tv_between(ys, limit, [h](double x) { return static_cast<long long>(std::llround(x / h)); });
  if (terms == 1 && is_prime(only)) {
    // Y = a_k q^{-k/2} 2k C_k with C_k ~ Poisson(q^k/(2k)) exactly in the limit.
    const double step = g.coeff(only) * std::pow(q, -only / 2.0) * 2.0 * only;
    std::vector<long long> cs;
    for (double y : ys) cs.push_back(std::llround(y / step));
    const double mu = cycle_mean(only, d1, d2);
    rep.distances["tv_vs_limit_exact"] = tv_to_pmf(cs, [mu](long long c) { return poisson_pmf(mu, c); });
  }
  return rep;
}

// ---------------------------------------------------------------- growing degree

struct GrowingOptions {
  ExperimentOptions base;
  double beta = 0.4;
  int r_n = 0;  // 0 means max(formula value, highest expansion order)
};

inline ExperimentReport fluctuation_experiment_growing(int n, int d1, int d2,
                                                       const std::vector<ChebExpansion>& expansions,
                                                       long long samples, std::uint64_t seed,
                                                       const GrowingOptions& opt = {}) {
  if (expansions.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one test function");
  if ((static_cast<long long>(n) * d1) % d2)
    throw Error(ErrorKind::BalanceViolation, "n*d1 must be divisible by d2");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  const int m = static_cast<int>(static_cast<long long>(n) * d1 / d2);
  std::vector<ChebExpansion> phis;
  int top = 1;
  for (const auto& e : expansions) {
    phis.push_back(convert_basis(e, Basis::Phi, 0));
    top = std::max(top, phis.back().degree());
  }
  const int formula = default_r_n(n, d1, d2, opt.beta);
  const int r_n = opt.r_n > 0 ? opt.r_n : std::max(formula, top);

  ExperimentReport rep;
  rep.name = "fluctuation_growing";
  json fs = json::array();
  for (const auto& p : phis) fs.push_back(p.coeffs);
  rep.parameters = {{"n", n},          {"m", m},         {"d1", d1},
                    {"d2", d2},        {"samples", samples}, {"seed", seed},
                    {"beta", opt.beta}, {"r_n_formula", formula}, {"r_n", r_n},
                    {"basis", "phi"},  {"coefficients", fs},
                    {"sampler", detail::sampler_json(opt.base.sampler)}};
  if (d2 >= 10 && d1 >= 10 * d2)
    rep.warnings.push_back("d1/d2 and d2 both large: outside the stated CLT hypotheses");

  double k1 = 0.0;
  for (const auto& p : phis) k1 = std::max(k1, p.half_width);
  struct Trial {
    std::vector<double> y;
    int outside = 0;
  };
  auto trials = parallel_map<Trial>(samples, opt.base.threads, [&](std::size_t i) {
    Rng rng = derive_stream(seed, i);
    const SpectrumSample s = eigenvalues(sample(n, m, d1, d2, opt.base.sampler, rng));
    Trial t;
    for (const auto& p : phis) t.y.push_back(fluctuation_growing(s, p, r_n));
    for (std::size_t j = 1; j < s.eigenvalues.size(); ++j) t.outside += std::abs(s.eigenvalues[j]) > k1;
    return t;
  });

  long long outside = 0;
  for (std::size_t f = 0; f < phis.size(); ++f) rep.columns.push_back("Y" + std::to_string(f));
  for (const auto& t : trials) {
    rep.rows.push_back(t.y);
    outside += t.outside;
  }
  rep.diagnostics["eigenvalues_outside_fit_interval"] = static_cast<double>(outside);
  if (outside > 0) rep.warnings.push_back("nontrivial eigenvalues left the fit interval [-K1, K1]");
  std::vector<std::vector<double>> cols;
  for (std::size_t f = 0; f < phis.size(); ++f) cols.push_back(detail::transpose_column(rep.rows, f));
  for (std::size_t f = 0; f < phis.size(); ++f) {
    const std::string tag = std::to_string(f);
    rep.statistics.push_back(summarize("Y" + tag, cols[f]));
    const double target = sigma_f(phis[f]).value;
    rep.diagnostics["sigma_target_" + tag] = target;
    rep.diagnostics["m_f_n_" + tag] = m_f_n(phis[f], n, d1, d2, r_n);
    if (target > 0)
      rep.distances["ks_gaussian_" + tag] =
          ks_distance(cols[f], [target](double x) { return normal_cdf(x, target); });
    for (std::size_t g = f + 1; g < phis.size(); ++g) {
      const std::string pair = tag + "_" + std::to_string(g);
      rep.diagnostics["cov_empirical_" + pair] = sample_covariance(cols[f], cols[g]);
      rep.diagnostics["cov_target_" + pair] = cov_fg(phis[f], phis[g]).value;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- global law

struct GlobalOptions {
  ExperimentOptions base;
  double alpha = 1.0;
  bool recenter = false;
  bool include_top = false;
  double edge_slack = 0.3;
};

inline ExperimentReport globallaw_experiment(int n, int d1, int d2, long long samples, Model model,
                                             std::uint64_t seed, const GlobalOptions& opt = {}) {
  if ((static_cast<long long>(n) * d1) % d2)
    throw Error(ErrorKind::BalanceViolation, "n*d1 must be divisible by d2");
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  const int m = static_cast<int>(static_cast<long long>(n) * d1 / d2);
  const ModelParams params{d1, d2, opt.alpha};
  check_model(model, params);
  ExperimentReport rep;
  rep.name = "globallaw";
  rep.parameters = {{"n", n},
                    {"m", m},
                    {"d1", d1},
                    {"d2", d2},
                    {"samples", samples},
                    {"seed", seed},
                    {"model", model_name(model)},
                    {"alpha", opt.alpha},
                    {"recenter", opt.recenter},
                    {"include_top", opt.include_top},
                    {"sampler", detail::sampler_json(opt.base.sampler)}};
  const EsdOptions eo{opt.include_top, opt.recenter};
  auto rows = parallel_map<std::vector<double>>(samples, opt.base.threads, [&](std::size_t i) {
    Rng rng = derive_stream(seed, i);
    const SpectrumSample s = eigenvalues(sample(n, m, d1, d2, opt.base.sampler, rng));
    const EdgeCheck e = spectral_edge_check(s, opt.edge_slack);
    return std::vector<double>{esd_distance(s, model, params, eo), e.max_deviation, e.passed ? 1.0 : 0.0};
  });
  rep.columns = {"ks", "edge_max_deviation", "edge_passed"};
  rep.rows = rows;
  const auto ks = detail::transpose_column(rows, 0);
  rep.statistics.push_back(summarize("ks", ks));
  rep.statistics.push_back(summarize("edge_max_deviation", detail::transpose_column(rows, 1)));
  rep.distances["ks_mean"] = rep.stat("ks").mean;
  rep.distances["ks_max"] = *std::max_element(ks.begin(), ks.end());
  rep.diagnostics["edge_pass_fraction"] = summarize("p", detail::transpose_column(rows, 2)).mean;
  return rep;
}

}  // namespace bispec
