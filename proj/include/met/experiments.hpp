#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "met/graph.hpp"
#include "met/matching_poly.hpp"
#include "met/roots.hpp"

namespace met {

// Shared experiment configuration. A result is a pure function of the config:
// trial t of size n and probability p_list[j] always uses the child seed
// derived from (master_seed, name, n, j, t), regardless of thread count or
// execution order.
struct ExperimentConfig {
  std::string name = "convergence";
  std::vector<int> n_list;
  std::vector<double> p_list;
  int trials = 1;
  std::uint64_t master_seed = 0;
  Engine engine = Engine::Auto;
  std::string output_path;             // CSV path; JSON aggregates go beside it
  int threads = 0;                     // 0 = hardware concurrency
  std::vector<int> moment_orders = {2, 4, 6};
};

void validate(const ExperimentConfig& config);

const char* engine_name(Engine engine);
Engine engine_from_name(const std::string& name);

// One G(n,p) draw: energy, normalized-spectrum statistics. A failed trial
// keeps its slot with ok = false and the error message; elapsed is
// diagnostic only and never serialized.
struct TrialResult {
  int n = 0;
  double p = 0;
  int trial = 0;
  bool ok = false;
  double me = 0;
  double me_ratio = 0;          // me / (n^(3/2) sqrt(p))
  std::vector<double> moments;  // parallel to moment_orders
  double ks = 0;
  double mean_abs = 0;
  double elapsed = 0;
  std::string error;
};

struct GroupStats {
  int n = 0;
  double p = 0;
  int trials_ok = 0;
  double ratio_mean = 0, ratio_stddev = 0, ratio_min = 0, ratio_max = 0;
  std::vector<double> moment_means;  // parallel to moment_orders
  double ks_mean = 0;
  double mean_abs_mean = 0;
  double moment2_var = 0;  // sample variance of the order-2 moment, if present
};

struct ConvergenceResult {
  ExperimentConfig config;
  std::vector<TrialResult> rows;   // (n index, p index, trial) order
  std::vector<GroupStats> groups;  // (n index, p index) order
};

// Semicircle-convergence study over the (n, p, trial) grid.
ConvergenceResult run_convergence(const ExperimentConfig& config);

// Exact complete-graph energies against the a n^(3/2) + b n model.
struct KnRow {
  int n = 0;
  double me = 0;
  double remainder = 0;  // (me - (8/(3pi)) n^(3/2)) / n
};
struct KnAsymptoticsResult {
  int n_min = 0, n_max = 0, step = 1;
  std::vector<KnRow> rows;
  double fit_a = 0, fit_b = 0;  // least squares me ~ a n^(3/2) + b n
  double max_abs_residual = 0;
  double remainder_min = 0, remainder_max = 0;
};
KnAsymptoticsResult run_kn_asymptotics(int n_min, int n_max, int step);

// Energy against the (sqrt(p)/pi) n^(3/2) lower bound.
struct LowerBoundRow {
  int n = 0;
  double p = 0;
  int trial = 0;
  bool ok = false;
  double me = 0;
  double bound = 0;
  double margin = 0;  // me - bound
  std::string error;
};
struct LowerBoundGroup {
  int n = 0;
  double p = 0;
  int trials_ok = 0;
  double fraction_above = 0;
  double min_margin = 0;
};
struct LowerBoundResult {
  ExperimentConfig config;
  std::vector<LowerBoundRow> rows;
  std::vector<LowerBoundGroup> groups;
};
LowerBoundResult run_lower_bound(const ExperimentConfig& config);

// Variance of the order-2 normalized moment versus n, log-log slope per p.
struct VarianceFit {
  double p = 0;
  std::vector<int> n;
  std::vector<double> variance;
  double slope = 0;
  double intercept = 0;
};
struct VarianceDecayResult {
  ConvergenceResult base;
  std::vector<VarianceFit> fits;
};
VarianceDecayResult run_variance_decay(const ExperimentConfig& config);

// Walk-count cross-validation: tree-like closed-walk counts versus exact
// power sums on an exhaustive small corpus plus random graphs.
struct GodsilRow {
  int graph_id = 0;
  int n = 0;
  int edges = 0;
  int k = 0;
  std::string walks;      // decimal
  std::string power_sum;  // decimal
  bool match = false;
};
struct GodsilResult {
  int n_max = 0, k_max = 0, corpus_size = 0;
  std::uint64_t master_seed = 0;
  int graphs = 0;
  std::vector<GodsilRow> rows;
  bool all_match = false;
};
GodsilResult run_godsil_verification(int n_max, int k_max, int corpus_size,
                                     std::uint64_t master_seed);

// Artifact writers; identical results serialize to identical bytes. Floats
// are printed with 17 significant digits. elapsed never appears.
void write_csv(std::ostream& out, const ConvergenceResult& r);
void write_json(std::ostream& out, const ConvergenceResult& r);
void write_csv(std::ostream& out, const KnAsymptoticsResult& r);
void write_json(std::ostream& out, const KnAsymptoticsResult& r);
void write_csv(std::ostream& out, const LowerBoundResult& r);
void write_json(std::ostream& out, const LowerBoundResult& r);
void write_csv(std::ostream& out, const VarianceDecayResult& r);
void write_json(std::ostream& out, const VarianceDecayResult& r);
void write_csv(std::ostream& out, const GodsilResult& r);
void write_json(std::ostream& out, const GodsilResult& r);

// "results.csv" -> "results.json"; a non-.csv path gets ".json" appended.
std::string json_sibling_path(const std::string& csv_path);

// Writes the CSV at csv_path and the JSON at json_sibling_path(csv_path).
template <class Result>
void write_artifacts(const Result& r, const std::string& csv_path);

// Experiment config as JSON, the same shape the CLI accepts:
// {"name","n","p","trials","seed","engine","out","threads","moments"}.
ExperimentConfig parse_experiment_config(std::istream& in);

}  // namespace met
