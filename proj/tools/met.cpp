// met: matching-energy toolkit CLI.
//
// Subcommands: mpoly, energy, roots, semicircle, emd, walks, experiment.
// Graph inputs are edge-list files ("n m" header, one "u v" line per edge)
// or named families (--family path|cycle|complete|star --n N).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "met/emd.hpp"
#include "met/errors.hpp"
#include "met/experiments.hpp"
#include "met/graph.hpp"
#include "met/matching_poly.hpp"
#include "met/roots.hpp"
#include "met/semicircle.hpp"
#include "met/treewalk.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

struct GraphInput {
  std::string file;
  std::string family;
  int n = -1;

  void add_to(CLI::App* sub) {
    sub->add_option("file", file, "edge-list file");
    sub->add_option("--family", family, "path|cycle|complete|star");
    sub->add_option("--n", n, "order for --family");
  }

  met::Graph load() const {
    if (!file.empty() && !family.empty())
      throw met::DomainError("give an edge-list file or --family, not both");
    if (!file.empty()) return met::read_edge_list_file(file);
    if (family.empty())
      throw met::DomainError("need an edge-list file or --family");
    if (n < 0) throw met::DomainError("--family needs --n");
    if (family == "path") return met::gen_path(n);
    if (family == "cycle") return met::gen_cycle(n);
    if (family == "complete") return met::gen_complete(n);
    if (family == "star") return met::gen_star(n);
    throw met::DomainError("unknown family \"" + family + "\"");
  }
};

void print_json(const ordered_json& j) { std::cout << j.dump() << '\n'; }

ordered_json spectrum_json(const met::RootSpectrum& s) {
  ordered_json j;
  j["me"] = met::matching_energy(s);
  j["roots"] = s.roots;
  return j;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(std::stoi(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

int run_mpoly(const GraphInput& input, const std::string& engine_str) {
  met::MatchingPolynomial poly = [&] {
    if (engine_str == "closed") {
      if (input.family == "path") return met::closed_form(met::Family::Path, input.n);
      if (input.family == "cycle") return met::closed_form(met::Family::Cycle, input.n);
      if (input.family == "complete")
        return met::closed_form(met::Family::Complete, input.n);
      throw met::DomainError(
          "--engine closed needs --family path, cycle, or complete");
    }
    return met::matching_counts(input.load(), met::engine_from_name(engine_str));
  }();
  ordered_json j;
  j["n"] = poly.order();
  std::vector<std::string> m;
  m.reserve(poly.counts().size());
  for (const auto& c : poly.counts()) m.push_back(c.get_str());
  j["m"] = m;
  print_json(j);
  return 0;
}

int run_energy(const GraphInput& input, double tol,
               const std::string& engine_str) {
  const met::Graph g = input.load();
  const met::RootSpectrum s = met::graph_spectrum(
      g, met::EngineOptions{}, tol, met::engine_from_name(engine_str));
  print_json(spectrum_json(s));
  return 0;
}

int run_roots(const std::string& coeffs, int order, double tol) {
  std::vector<mpz_class> counts;
  std::size_t pos = 0;
  while (pos < coeffs.size()) {
    std::size_t next = coeffs.find(',', pos);
    if (next == std::string::npos) next = coeffs.size();
    counts.emplace_back(coeffs.substr(pos, next - pos));
    pos = next + 1;
  }
  const met::MatchingPolynomial poly(order, std::move(counts));
  print_json(spectrum_json(met::matching_roots(poly, tol)));
  return 0;
}

int run_semicircle(const CLI::App* sub, double density_x, double cdf_x,
                   int moment_k) {
  double value = 0;
  if (sub->count("--density")) value = met::semicircle::density(density_x);
  else if (sub->count("--cdf")) value = met::semicircle::cdf(cdf_x);
  else if (sub->count("--moment")) value = met::semicircle::moment(moment_k);
  else value = met::semicircle::abs_moment();
  std::printf("%.17g\n", value);
  return 0;
}

int run_emd(const GraphInput& input, double p, const std::string& moments_csv,
            double tol) {
  const met::Graph g = input.load();
  const met::RootSpectrum s = met::graph_spectrum(g, met::EngineOptions{}, tol);
  const met::NormalizedSpectrum ns = met::normalize(s, g.order(), p);
  const met::EmpiricalDistribution emd =
      met::EmpiricalDistribution::from_spectrum(ns);
  ordered_json j;
  ordered_json mm;
  for (int k : parse_int_list(moments_csv))
    mm[std::to_string(k)] = emd.moment(k);
  j["moments"] = mm;
  j["ks"] = emd.ks_distance();
  j["mean_abs"] = emd.mean_abs();
  print_json(j);
  return 0;
}

int run_walks(const GraphInput& input, int k, const std::string& method) {
  const met::Graph g = input.load();
  ordered_json j;
  j["k"] = k;
  std::optional<mpz_class> walks, psum;
  if (method == "enumerate" || method == "both")
    walks = met::count_tree_like(g, k);
  if (method == "powersum" || method == "both") {
    const auto ps = met::power_sums(met::matching_counts(g), k);
    psum = ps.back();
  }
  if (!walks && !psum)
    throw met::DomainError("--method must be enumerate, powersum, or both");
  if (walks) j["walks"] = walks->get_str();
  if (psum) j["power_sum"] = psum->get_str();
  if (walks && psum) j["match"] = (*walks == *psum);
  print_json(j);
  return 0;
}

struct ExperimentFlags {
  std::string kind = "convergence";
  std::string config_path;
  std::string name;
  std::vector<int> n_list;
  std::vector<double> p_list;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string engine;
  std::string out;
  int threads = -1;
  std::vector<int> moments;
  int n_min = 200, n_max = 2000, step = 100;
  int g_n_max = 7, g_k_max = 8, g_corpus = 500;
};

int run_experiment(const CLI::App* sub, const ExperimentFlags& f) {
  met::ExperimentConfig config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw met::NotFoundError("cannot open " + f.config_path);
    config = met::parse_experiment_config(in);
  }
  if (sub->count("--name")) config.name = f.name;
  if (sub->count("--n")) config.n_list = f.n_list;
  if (sub->count("--p")) config.p_list = f.p_list;
  if (sub->count("--trials")) config.trials = f.trials;
  if (sub->count("--seed")) config.master_seed = f.seed;
  if (sub->count("--engine"))
    config.engine = met::engine_from_name(f.engine);
  if (sub->count("--out")) config.output_path = f.out;
  if (sub->count("--threads")) config.threads = f.threads;
  if (sub->count("--moments")) config.moment_orders = f.moments;
  if (config.name == "convergence" && f.kind != "convergence")
    config.name = f.kind;  // default the seed label to the experiment kind
  if (config.output_path.empty())
    throw met::DomainError("experiment needs --out (CSV path)");

  if (f.kind == "convergence") {
    const auto r = met::run_convergence(config);
    met::write_artifacts(r, config.output_path);
    met::write_json(std::cout, r);
  } else if (f.kind == "kn") {
    const auto r = met::run_kn_asymptotics(f.n_min, f.n_max, f.step);
    met::write_artifacts(r, config.output_path);
    met::write_json(std::cout, r);
  } else if (f.kind == "lower-bound") {
    const auto r = met::run_lower_bound(config);
    met::write_artifacts(r, config.output_path);
    met::write_json(std::cout, r);
  } else if (f.kind == "variance") {
    const auto r = met::run_variance_decay(config);
    met::write_artifacts(r, config.output_path);
    met::write_json(std::cout, r);
  } else if (f.kind == "godsil") {
    const auto r = met::run_godsil_verification(f.g_n_max, f.g_k_max,
                                                f.g_corpus, config.master_seed);
    met::write_artifacts(r, config.output_path);
    met::write_json(std::cout, r);
  } else {
    throw met::DomainError("unknown experiment kind \"" + f.kind + "\"");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matching-energy toolkit"};
  app.require_subcommand(1);

  GraphInput mpoly_in;
  std::string mpoly_engine = "auto";
  auto* mpoly = app.add_subcommand("mpoly", "exact matching counts");
  mpoly_in.add_to(mpoly);
  mpoly->add_option("--engine", mpoly_engine,
                    "auto|dp|recursion|forest|closed");

  GraphInput energy_in;
  double energy_tol = 1e-10;
  std::string energy_engine = "auto";
  auto* energy =
      app.add_subcommand("energy", "matching energy and root spectrum");
  energy_in.add_to(energy);
  energy->add_option("--tol", energy_tol, "root tolerance");
  energy->add_option("--engine", energy_engine, "auto|dp|recursion|forest");

  std::string roots_coeffs;
  int roots_order = 0;
  double roots_tol = 1e-10;
  auto* roots =
      app.add_subcommand("roots", "roots from a coefficient vector");
  roots->add_option("--coeffs", roots_coeffs,
                    "comma-separated counts m_0,m_1,...")->required();
  roots->add_option("--order", roots_order, "number of vertices")->required();
  roots->add_option("--tol", roots_tol, "root tolerance");

  double sc_density = 0, sc_cdf = 0;
  int sc_moment = 0;
  auto* sc = app.add_subcommand("semicircle", "reference distribution values");
  auto* sc_d = sc->add_option("--density", sc_density, "density at x");
  auto* sc_c = sc->add_option("--cdf", sc_cdf, "CDF at x");
  auto* sc_m = sc->add_option("--moment", sc_moment, "k-th moment");
  auto* sc_a = sc->add_flag("--abs-moment", "mean absolute value");
  sc_d->excludes(sc_c)->excludes(sc_m)->excludes(sc_a);
  sc_c->excludes(sc_m)->excludes(sc_a);
  sc_m->excludes(sc_a);

  GraphInput emd_in;
  double emd_p = 0;
  std::string emd_moments = "2,4,6";
  double emd_tol = 1e-10;
  auto* emd = app.add_subcommand(
      "emd", "empirical distribution of normalized roots");
  emd_in.add_to(emd);
  emd->add_option("--p", emd_p, "edge probability used for normalization")
      ->required();
  emd->add_option("--moments", emd_moments, "comma-separated moment orders");
  emd->add_option("--tol", emd_tol, "root tolerance");

  GraphInput walks_in;
  int walks_k = 0;
  std::string walks_method = "both";
  auto* walks =
      app.add_subcommand("walks", "tree-like closed walk counts");
  walks_in.add_to(walks);
  walks->add_option("--k", walks_k, "walk length")->required();
  walks->add_option("--method", walks_method, "enumerate|powersum|both");

  ExperimentFlags ef;
  auto* exp = app.add_subcommand("experiment", "random-graph studies");
  exp->add_option("--kind", ef.kind,
                  "convergence|kn|lower-bound|variance|godsil");
  exp->add_option("--config", ef.config_path, "JSON config file");
  exp->add_option("--name", ef.name, "experiment name (seed label)");
  exp->add_option("--n", ef.n_list, "graph sizes")->delimiter(',');
  exp->add_option("--p", ef.p_list, "edge probabilities")->delimiter(',');
  exp->add_option("--trials", ef.trials, "trials per (n,p)");
  exp->add_option("--seed", ef.seed, "master seed");
  exp->add_option("--engine", ef.engine, "auto|dp|recursion|forest");
  exp->add_option("--out", ef.out, "CSV output path (JSON lands beside it)");
  exp->add_option("--threads", ef.threads, "worker threads (0 = hardware)");
  exp->add_option("--moments", ef.moments, "moment orders")->delimiter(',');
  exp->add_option("--n-min", ef.n_min, "kn: smallest order");
  exp->add_option("--n-max", ef.n_max, "kn: largest order");
  exp->add_option("--step", ef.step, "kn: order step");
  exp->add_option("--walk-n-max", ef.g_n_max, "godsil: largest order");
  exp->add_option("--walk-k-max", ef.g_k_max, "godsil: largest walk length");
  exp->add_option("--corpus", ef.g_corpus, "godsil: random corpus size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mpoly->parsed()) return run_mpoly(mpoly_in, mpoly_engine);
    if (energy->parsed())
      return run_energy(energy_in, energy_tol, energy_engine);
    if (roots->parsed())
      return run_roots(roots_coeffs, roots_order, roots_tol);
    if (sc->parsed()) return run_semicircle(sc, sc_density, sc_cdf, sc_moment);
    if (emd->parsed()) return run_emd(emd_in, emd_p, emd_moments, emd_tol);
    if (walks->parsed()) return run_walks(walks_in, walks_k, walks_method);
    if (exp->parsed()) return run_experiment(exp, ef);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
