#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "bispec/chebyshev.hpp"
#include "bispec/error.hpp"
#include "bispec/experiments.hpp"
#include "bispec/io.hpp"
#include "bispec/sampler.hpp"
#include "bispec/spectra.hpp"

namespace bispec {

inline SamplerConfig sampler_from_json(const json& j, std::uint64_t seed) {
  SamplerConfig c;
  c.seed = seed;
  if (j.is_null()) return c;
  c.method = parse_method(j.value("method", std::string("auto")));
  c.mcmc_steps = j.value("mcmc_steps", c.mcmc_steps);
  c.max_rejections = j.value("max_rejections", c.max_rejections);
  c.density_threshold = j.value("density_threshold", c.density_threshold);
  c.max_expected_attempts = j.value("max_expected_attempts", c.max_expected_attempts);
  if (c.method == SamplerMethod::SwitchChain && c.mcmc_steps < 0)
    throw Error(ErrorKind::InvalidArgument, "mcmc_steps must be positive");
  return c;
}

inline json expansion_to_json(const ChebExpansion& e) {
  json j = {{"basis", basis_name(e.basis)}, {"coefficients", e.coeffs}, {"K1", e.half_width}};
  if (e.basis == Basis::Gamma) j["d1"] = e.d1;
  return j;
}

inline ChebExpansion expansion_from_json(const json& j) {
  ChebExpansion e;
  const std::string b = j.value("basis", std::string("phi"));
  if (b != "phi" && b != "gamma") throw Error(ErrorKind::InvalidArgument, "basis must be phi or gamma");
  e.basis = b == "phi" ? Basis::Phi : Basis::Gamma;
  e.d1 = j.value("d1", 0);
  if (e.basis == Basis::Gamma && e.d1 < 2) throw Error(ErrorKind::InvalidArgument, "gamma basis needs d1");
  e.coeffs = j.at("coefficients").get<std::vector<double>>();
  e.half_width = j.value("K1", 2.0);
  e.rho = INFINITY;
  return e;
}

// Builtin test functions: {"name": "phi"|"gamma", "k": k}, {"name": "exp"},
// {"name": "poly", "coefficients": [c0, c1, ...]} (monomial basis), or {"expansion": {...}}.
inline ChebExpansion test_function(const json& j, Basis basis, int d1, double half_width, int max_k = 40) {
  if (j.contains("expansion")) return convert_basis(expansion_from_json(j.at("expansion")), basis, d1);
  const std::string name = j.at("name").get<std::string>();
  ChebExpansion e;
  if (name == "phi" || name == "gamma") {
    const int k = j.at("k").get<int>();
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "k must be >= 0");
    e = single_term(name == "phi" ? Basis::Phi : Basis::Gamma, k, d1);
  } else if (name == "exp") {
    e = fit_expansion([](double x) { return std::exp(x); }, Basis::Phi, d1, half_width, max_k);
  } else if (name == "poly") {
    const auto c = j.at("coefficients").get<std::vector<double>>();
    if (c.empty()) throw Error(ErrorKind::InvalidArgument, "poly needs coefficients");
    auto f = [c](double x) {
      double s = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
      return s;
    };
    e = fit_expansion(f, Basis::Phi, d1, half_width, std::max<int>(1, static_cast<int>(c.size()) + 1));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown test function '" + name + "'");
  }
  e.half_width = half_width;
  return convert_basis(e, basis, d1);
}

struct ExperimentRun {
  ExperimentReport report;
  std::string output;  // prefix for <prefix>.json and <prefix>.csv; empty for none
};

inline ExperimentRun run_experiment(const json& cfg, int threads_override = 0) {
  try {
    const std::string kind = cfg.at("experiment").get<std::string>();
    const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
    const int n = cfg.at("n").get<int>();
    const int d1 = cfg.at("d1").get<int>();
    const int d2 = cfg.at("d2").get<int>();
    const long long samples = cfg.at("samples").get<long long>();
    ExperimentOptions base;
    base.sampler = sampler_from_json(cfg.value("sampler", json()), seed);
    base.threads = threads_override > 0 ? threads_override : cfg.value("threads", 0);
    ExperimentRun run;
    run.output = cfg.value("output", std::string());

    if (kind == "poisson") {
      const int m = cfg.value("m", static_cast<int>(static_cast<long long>(n) * d1 / d2));
      run.report = poisson_experiment(n, m, d1, d2, cfg.value("r", 3), samples, seed, base);
    } else if (kind == "fluctuation_fixed") {
      FixedOptions o;
      o.base = base;
      o.limit_samples = cfg.value("limit_samples", 0LL);
      o.k_max = cfg.value("k_max", 0);
      o.bin_width = cfg.value("bin_width", 0.0);
      const double k1 = cfg.value("K1", top_eigenvalue(d1, d2));
      const ChebExpansion e = test_function(cfg.at("function"), Basis::Gamma, d1, k1);
      run.report = fluctuation_experiment_fixed(n, d1, d2, e, samples, seed, o);
    } else if (kind == "fluctuation_growing") {
      GrowingOptions o;
      o.base = base;
      o.beta = cfg.value("beta", 0.4);
      o.r_n = cfg.value("r_n", 0);
      const double k1 = cfg.value("K1", 3.0);
      std::vector<ChebExpansion> fs;
      for (const auto& f : cfg.at("functions")) fs.push_back(test_function(f, Basis::Phi, d1, k1));
      run.report = fluctuation_experiment_growing(n, d1, d2, fs, samples, seed, o);
    } else if (kind == "globallaw") {
      GlobalOptions o;
      o.base = base;
      o.alpha = cfg.value("alpha", 1.0);
      o.recenter = cfg.value("recenter", false);
      o.include_top = cfg.value("include_top", false);
      o.edge_slack = cfg.value("edge_slack", 0.3);
      run.report = globallaw_experiment(n, d1, d2, samples, parse_model(cfg.value("model", std::string("semicircle"))),
                                        seed, o);
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown experiment '" + kind + "'");
    }
    return run;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad experiment config: ") + ex.what());
  }
}

inline void write_report(const ExperimentRun& run) {
  if (run.output.empty()) return;
  write_text_file(run.output + ".json", run.report.to_json().dump(2) + "\n");
  write_text_file(run.output + ".csv", run.report.samples_table());
}

}  // namespace bispec
