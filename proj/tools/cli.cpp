#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bispec/bispec.hpp"

namespace bispec::cli {
namespace {

struct Table {
  std::string seed = "none";
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::ostringstream o;
    o << "# seed=" << seed << "\n";
    for (std::size_t c = 0; c < header.size(); ++c) o << (c ? "," : "") << header[c];
    o << "\n";
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) o << (c ? "," : "") << r[c];
      o << "\n";
    }
    return o.str();
  }
};

std::string num(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

template <class T>
std::string str(const T& v) {
  std::ostringstream o;
  o << v;
  return o.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

struct Loaded {
  BiregularGraph graph;
  std::string seed = "none";
};

Loaded load(const std::string& path) {
  const json j = read_json_file(path);
  Loaded l;
  l.graph = graph_from_json(j);
  if (j.contains("seed")) l.seed = str(j.at("seed").get<std::uint64_t>());
  return l;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra, walks and cycles of random biregular bipartite graphs"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: available cores)");

  // sample
  int n = 0, m = 0, d1 = 0, d2 = 0;
  std::uint64_t seed = 0;
  std::string method = "auto", out_path, in_path;
  long long mcmc_steps = 0, max_rejections = 100000;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a random biregular bipartite graph");
  sample_cmd->add_option("--n", n, "V1 size")->required();
  sample_cmd->add_option("--m", m, "V2 size")->required();
  sample_cmd->add_option("--d1", d1, "V1 degree")->required();
  sample_cmd->add_option("--d2", d2, "V2 degree")->required();
  sample_cmd->add_option("--seed", seed, "RNG seed")->required();
  sample_cmd->add_option("--method", method, "auto | exact-rejection | switch-chain");
  sample_cmd->add_option("--mcmc-steps", mcmc_steps, "Swap proposals for the switch chain");
  sample_cmd->add_option("--max-rejections", max_rejections, "Rejection budget");
  sample_cmd->add_option("--out", out_path, "Graph file to write (default: stdout)");

  auto* enum_cmd = app.add_subcommand("enumerate", "List every graph with the given parameters");
  enum_cmd->add_option("--n", n)->required();
  enum_cmd->add_option("--m", m)->required();
  enum_cmd->add_option("--d1", d1)->required();
  enum_cmd->add_option("--d2", d2)->required();
  enum_cmd->add_option("--out", out_path, "File for the JSON list (default: stdout)");

  int r = 3;
  auto* walks_cmd = app.add_subcommand("walks", "Cycle, NBW, CNBW and bad-walk counts");
  walks_cmd->add_option("--in", in_path, "Graph file")->required();
  walks_cmd->add_option("--r", r, "Horizon")->check(CLI::PositiveNumber);
  walks_cmd->add_option("--out", out_path);

  int bins = 50, points = 201;
  std::string model;
  double alpha = 1.0;
  auto* spec_cmd = app.add_subcommand("spectrum", "Eigenvalues, histogram and reference density");
  spec_cmd->add_option("--in", in_path, "Graph file")->required();
  spec_cmd->add_option("--bins", bins)->check(CLI::PositiveNumber);
  spec_cmd->add_option("--model", model, "semicircle | fixed_degree | shifted_mp");
  spec_cmd->add_option("--alpha", alpha, "Parameter of the shifted MP law");
  spec_cmd->add_option("--points", points)->check(CLI::Range(2, 1000000));
  spec_cmd->add_option("--out", out_path, "Prefix for <prefix>.eigenvalues.csv etc.");

  int kmax = 6;
  auto* id_cmd = app.add_subcommand("identity", "Spectral vs combinatorial walk identities");
  id_cmd->add_option("--in", in_path, "Graph file")->required();
  id_cmd->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
  id_cmd->add_option("--out", out_path);

  long long budget = kDefaultSwitchingBudget;
  auto* sw_cmd = app.add_subcommand("switchings", "Audit forward/backward switching counts");
  sw_cmd->add_option("--in", in_path, "Graph file")->required();
  sw_cmd->add_option("--r", r)->check(CLI::Range(2, 100));
  sw_cmd->add_option("--budget", budget)->check(CLI::PositiveNumber);
  sw_cmd->add_option("--out", out_path);

  std::string config;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte-Carlo experiment from a config file");
  exp_cmd->add_option("--config", config, "Experiment config (JSON)")->required();

  auto* hyp_cmd = app.add_subcommand("hypergraph", "Sample or check a regular hypergraph");
  hyp_cmd->add_option("--in", in_path, "Hypergraph file to check");
  hyp_cmd->add_option("--n", n);
  hyp_cmd->add_option("--d1", d1);
  hyp_cmd->add_option("--d2", d2);
  hyp_cmd->add_option("--seed", seed);
  hyp_cmd->add_option("--r", r, "Cycle horizon for the check table");
  hyp_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sample_cmd) {
      SamplerConfig cfg;
      cfg.method = parse_method(method);
      cfg.mcmc_steps = mcmc_steps;
      cfg.max_rejections = max_rejections;
      cfg.seed = seed;
      Rng rng = make_rng(seed);
      const BiregularGraph g = sample(n, m, d1, d2, cfg, rng);
      json j = graph_to_json(g);
      j["seed"] = seed;
      emit(j.dump() + "\n", out_path, out);
    } else if (*enum_cmd) {
      json list = json::array();
      for (const auto& g : enumerate_all(n, m, d1, d2)) list.push_back(graph_to_json(g));
      emit(list.dump() + "\n", out_path, out);
    } else if (*walks_cmd) {
      const Loaded l = load(in_path);
      const WalkCountTable t = walk_table(l.graph, r);
      Table tab;
      tab.seed = l.seed;
      tab.header = {"k", "C_k", "NBW_k", "CNBW_k", "B_k"};
      for (int k = 1; k <= r; ++k)
        tab.rows.push_back({str(k), str(t.cycles[k]), str(t.nbw[k]), str(t.cnbw[k]), str(t.bad[k])});
      emit(tab.str(), out_path, out);
    } else if (*spec_cmd) {
      const Loaded l = load(in_path);
      const SpectrumSample s = eigenvalues(l.graph);
      Table ev;
      ev.seed = l.seed;
      ev.header = {"i", "lambda"};
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) ev.rows.push_back({str(i + 1), num(s.eigenvalues[i])});
      const double lo = s.eigenvalues.back(), hi = s.eigenvalues.front();
      const double w = (hi - lo) / bins;
      std::vector<long long> counts(bins, 0);
      for (double x : s.eigenvalues)
        ++counts[std::min<long long>(bins - 1, w > 0 ? static_cast<long long>((x - lo) / w) : 0)];
      Table hist;
      hist.seed = l.seed;
      hist.header = {"bin_lo", "bin_hi", "count", "density"};
      for (int b = 0; b < bins; ++b)
        hist.rows.push_back({num(lo + b * w), num(lo + (b + 1) * w), str(counts[b]),
                             num(w > 0 ? counts[b] / (w * s.eigenvalues.size()) : 0.0)});
      std::string dens;
      if (!model.empty()) {
        const Model mdl = parse_model(model);
        const ModelParams p{l.graph.d1(), l.graph.d2(), alpha};
        check_model(mdl, p);
        Table d;
        d.seed = l.seed;
        d.header = {"x", "density"};
        for (int i = 0; i < points; ++i) {
          const double x = -2.0 + 4.0 * i / (points - 1);
          d.rows.push_back({num(x), num(reference_density(mdl, p, x))});
        }
        dens = d.str();
      }
      if (out_path.empty()) {
        out << ev.str() << "\n" << hist.str();
        if (!dens.empty()) out << "\n" << dens;
      } else {
        write_text_file(out_path + ".eigenvalues.csv", ev.str());
        write_text_file(out_path + ".histogram.csv", hist.str());
        if (!dens.empty()) write_text_file(out_path + ".density.csv", dens);
      }
    } else if (*id_cmd) {
      const Loaded l = load(in_path);
      const SpectrumSample s = eigenvalues(l.graph);
      const auto gam = identity_table(l.graph, s, kmax, true);
      const auto nbw = identity_table(l.graph, s, kmax, false);
      Table t;
      t.seed = l.seed;
      t.header = {"k", "gamma_spectral", "gamma_walks", "gamma_residual", "p_spectral", "p_walks", "p_residual"};
      for (int k = 0; k < kmax; ++k)
        t.rows.push_back({str(k + 1), num(gam[k].spectral), num(gam[k].combinatorial), num(gam[k].residual),
                          num(nbw[k].spectral), num(nbw[k].combinatorial), num(nbw[k].residual)});
      emit(t.str(), out_path, out);
    } else if (*sw_cmd) {
      const Loaded l = load(in_path);
      const BiregularGraph& g = l.graph;
      Table t;
      t.seed = l.seed;
      t.header = {"alpha", "k", "F_alpha", "F_bound", "B_alpha", "B_bound"};
      for (const Cycle& c : short_cycles(g, r)) {
        std::optional<BiregularGraph> after;
        const auto f = enumerate_valid_switchings(
            g, c, r, Direction::Forward,
            [&](const SwitchingSpec&, const BiregularGraph& h) {
              if (!after) after = h;
            },
            budget);
        std::string b = "NA";
        if (after) b = str(count_valid_switchings(*after, c, r, Direction::Backward, budget));
        t.rows.push_back({c.to_string(), str(c.k()), str(f.count), num(forward_switching_bound(g, c.k())), b,
                          num(backward_switching_bound(g, c.k()))});
      }
      emit(t.str(), out_path, out);
    } else if (*exp_cmd) {
      const ExperimentRun run = run_experiment(read_json_file(config), threads);
      write_report(run);
      out << run.report.to_json().dump(2) << "\n";
    } else if (*hyp_cmd) {
      RegularHypergraph h;
      std::string seed_text = "none";
      if (!in_path.empty()) {
        const json j = read_json_file(in_path);
        h = hypergraph_from_json(j);
        if (j.contains("seed")) seed_text = str(j.at("seed").get<std::uint64_t>());
      } else {
        if (n <= 0 || d1 <= 0 || d2 <= 0) {
          err << "usage error: hypergraph needs --in or all of --n --d1 --d2\n";
          return 2;
        }
        Rng rng = make_rng(seed);
        h = sample_regular_hypergraph(n, d1, d2, rng);
        json j = hypergraph_to_json(h);
        j["seed"] = seed;
        if (!out_path.empty()) write_text_file(out_path, j.dump() + "\n");
        seed_text = str(seed);
      }
      const BiregularGraph g = to_bipartite(h);
      const bool adjacency_ok = hypergraph_adjacency(h) == shifted_gram(g);
      Table t;
      t.seed = seed_text;
      t.header = {"k", "hypergraph_cycles", "bipartite_2k_cycles", "adjacency_identity"};
      const auto counts = cycle_counts(g, std::max(2, r));
      for (int k = 2; k <= std::max(2, r); ++k)
        t.rows.push_back({str(k), str(hypergraph_cycle_count(h, k)), str(counts[k]), adjacency_ok ? "ok" : "FAILED"});
      out << t.str();
      if (!adjacency_ok) return 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidArgument ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace bispec::cli
