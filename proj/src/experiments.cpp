#include "met/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "met/emd.hpp"
#include "met/errors.hpp"
#include "met/rng.hpp"
#include "met/semicircle.hpp"
#include "met/treewalk.hpp"

namespace met {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

// Runs fn(0..count-1) on a small pool. Work is written into preassigned
// slots, so results do not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  int t = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (count < static_cast<std::size_t>(t)) t = static_cast<int>(count);
  if (t <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

TrialResult convergence_trial(const ExperimentConfig& config, int n, double p,
                              std::size_t p_idx, std::size_t trial) {
  TrialResult r;
  r.n = n;
  r.p = p;
  r.trial = static_cast<int>(trial);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const SeedSpec seed{config.master_seed, fnv1a64(config.name),
                        static_cast<std::uint64_t>(n), p_idx, trial};
    const Graph g = gen_gnp(n, p, seed);
    const RootSpectrum spec =
        graph_spectrum(g, EngineOptions{}, 1e-10, config.engine);
    const NormalizedSpectrum ns = normalize(spec, n, p);
    const EmpiricalDistribution emd = EmpiricalDistribution::from_spectrum(ns);
    r.me = matching_energy(spec);
    r.me_ratio = r.me / (std::pow(n, 1.5) * std::sqrt(p));
    r.moments.reserve(config.moment_orders.size());
    for (int k : config.moment_orders) r.moments.push_back(emd.moment(k));
    r.ks = emd.ks_distance();
    r.mean_abs = emd.mean_abs();
    r.ok = true;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.elapsed = seconds_since(t0);
  return r;
}

std::vector<GroupStats> aggregate_groups(const ExperimentConfig& config,
                                         const std::vector<TrialResult>& rows) {
  std::vector<GroupStats> groups;
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  int moment2_idx = -1;
  for (std::size_t i = 0; i < config.moment_orders.size(); ++i)
    if (config.moment_orders[i] == 2) moment2_idx = static_cast<int>(i);
  for (std::size_t ni = 0; ni < config.n_list.size(); ++ni) {
    for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
      GroupStats s;
      s.n = config.n_list[ni];
      s.p = config.p_list[pi];
      s.moment_means.assign(config.moment_orders.size(), 0.0);
      const std::size_t base = (ni * config.p_list.size() + pi) * trials;
      double ratio_sum = 0;
      s.ratio_min = 0;
      s.ratio_max = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialResult& r = rows[base + t];
        if (!r.ok) continue;
        if (s.trials_ok == 0) {
          s.ratio_min = r.me_ratio;
          s.ratio_max = r.me_ratio;
        }
        ++s.trials_ok;
        ratio_sum += r.me_ratio;
        s.ratio_min = std::min(s.ratio_min, r.me_ratio);
        s.ratio_max = std::max(s.ratio_max, r.me_ratio);
        for (std::size_t m = 0; m < r.moments.size(); ++m)
          s.moment_means[m] += r.moments[m];
        s.ks_mean += r.ks;
        s.mean_abs_mean += r.mean_abs;
      }
      if (s.trials_ok > 0) {
        const double cnt = s.trials_ok;
        s.ratio_mean = ratio_sum / cnt;
        for (double& m : s.moment_means) m /= cnt;
        s.ks_mean /= cnt;
        s.mean_abs_mean /= cnt;
        double sq = 0, var2 = 0;
        for (std::size_t t = 0; t < trials; ++t) {
          const TrialResult& r = rows[base + t];
          if (!r.ok) continue;
          const double dr = r.me_ratio - s.ratio_mean;
          sq += dr * dr;
          if (moment2_idx >= 0) {
            const double dm = r.moments[static_cast<std::size_t>(moment2_idx)] -
                              s.moment_means[static_cast<std::size_t>(moment2_idx)];
            var2 += dm * dm;
          }
        }
        if (s.trials_ok > 1) {
          s.ratio_stddev = std::sqrt(sq / (cnt - 1));
          s.moment2_var = moment2_idx >= 0 ? var2 / (cnt - 1) : 0.0;
        }
      }
      groups.push_back(std::move(s));
    }
  }
  return groups;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.n_list.empty())
    throw DomainError("experiment config: empty n list");
  for (int n : config.n_list)
    if (n < 1) throw DomainError("experiment config: n must be >= 1");
  if (config.p_list.empty())
    throw DomainError("experiment config: empty p list");
  for (double p : config.p_list)
    if (!(p > 0.0 && p <= 1.0))
      throw DomainError("experiment config: p must lie in (0,1]");
  if (config.trials < 1)
    throw DomainError("experiment config: trials must be >= 1");
  if (config.threads < 0)
    throw DomainError("experiment config: negative thread count");
  for (int k : config.moment_orders)
    if (k < 0) throw DomainError("experiment config: negative moment order");
}

const char* engine_name(Engine engine) {
  switch (engine) {
    case Engine::Auto: return "auto";
    case Engine::SubsetDp: return "dp";
    case Engine::EdgeRecursion: return "recursion";
    case Engine::Forest: return "forest";
  }
  return "auto";
}

Engine engine_from_name(const std::string& name) {
  if (name == "auto") return Engine::Auto;
  if (name == "dp") return Engine::SubsetDp;
  if (name == "recursion") return Engine::EdgeRecursion;
  if (name == "forest") return Engine::Forest;
  throw DomainError("unknown engine \"" + name + "\"");
}

ConvergenceResult run_convergence(const ExperimentConfig& config) {
  validate(config);
  ConvergenceResult out;
  out.config = config;
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  const std::size_t per_n = config.p_list.size() * trials;
  out.rows.resize(config.n_list.size() * per_n);
  parallel_for(out.rows.size(), config.threads, [&](std::size_t idx) {
    const std::size_t ni = idx / per_n;
    const std::size_t pi = (idx % per_n) / trials;
    const std::size_t t = idx % trials;
    out.rows[idx] = convergence_trial(config, config.n_list[ni],
                                      config.p_list[pi], pi, t);
  });
  out.groups = aggregate_groups(config, out.rows);
  return out;
}

KnAsymptoticsResult run_kn_asymptotics(int n_min, int n_max, int step) {
  if (n_min < 1) throw DomainError("kn asymptotics: need n_min >= 1");
  if (n_max < n_min) throw DomainError("kn asymptotics: need n_max >= n_min");
  if (step < 1) throw DomainError("kn asymptotics: need step >= 1");
  if (n_min == n_max)
    throw DomainError("kn asymptotics: need at least two sizes for the fit");
  KnAsymptoticsResult out;
  out.n_min = n_min;
  out.n_max = n_max;
  out.step = step;
  const double c0 = 8.0 / (3.0 * std::numbers::pi);
  for (int n = n_min; n <= n_max; n += step) {
    KnRow row;
    row.n = n;
    row.me = matching_energy(complete_spectrum_fast(n));
    row.remainder = (row.me - c0 * std::pow(n, 1.5)) / n;
    out.rows.push_back(row);
  }
  double sxx = 0, sxy = 0, syy = 0, sxm = 0, sym = 0;
  for (const auto& r : out.rows) {
    const double x = std::pow(r.n, 1.5), y = r.n;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    sxm += x * r.me;
    sym += y * r.me;
  }
  const double det = sxx * syy - sxy * sxy;
  out.fit_a = (sxm * syy - sym * sxy) / det;
  out.fit_b = (sxx * sym - sxy * sxm) / det;
  out.remainder_min = out.rows.front().remainder;
  out.remainder_max = out.rows.front().remainder;
  for (const auto& r : out.rows) {
    const double resid =
        r.me - (out.fit_a * std::pow(r.n, 1.5) + out.fit_b * r.n);
    out.max_abs_residual = std::max(out.max_abs_residual, std::abs(resid));
    out.remainder_min = std::min(out.remainder_min, r.remainder);
    out.remainder_max = std::max(out.remainder_max, r.remainder);
  }
  return out;
}

LowerBoundResult run_lower_bound(const ExperimentConfig& config) {
  validate(config);
  LowerBoundResult out;
  out.config = config;
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  const std::size_t per_n = config.p_list.size() * trials;
  out.rows.resize(config.n_list.size() * per_n);
  parallel_for(out.rows.size(), config.threads, [&](std::size_t idx) {
    const std::size_t ni = idx / per_n;
    const std::size_t pi = (idx % per_n) / trials;
    const std::size_t t = idx % trials;
    const int n = config.n_list[ni];
    const double p = config.p_list[pi];
    LowerBoundRow r;
    r.n = n;
    r.p = p;
    r.trial = static_cast<int>(t);
    r.bound = std::sqrt(p) / std::numbers::pi * std::pow(n, 1.5);
    try {
      const SeedSpec seed{config.master_seed, fnv1a64(config.name),
                          static_cast<std::uint64_t>(n), pi, t};
      const Graph g = gen_gnp(n, p, seed);
      r.me = energy_of_graph(g, EngineOptions{}, 1e-10, config.engine);
      r.margin = r.me - r.bound;
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    out.rows[idx] = std::move(r);
  });
  for (std::size_t ni = 0; ni < config.n_list.size(); ++ni) {
    for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
      LowerBoundGroup gstat;
      gstat.n = config.n_list[ni];
      gstat.p = config.p_list[pi];
      const std::size_t base = (ni * config.p_list.size() + pi) * trials;
      int above = 0;
      bool first = true;
      for (std::size_t t = 0; t < trials; ++t) {
        const LowerBoundRow& r = out.rows[base + t];
        if (!r.ok) continue;
        ++gstat.trials_ok;
        if (r.margin > 0) ++above;
        if (first || r.margin < gstat.min_margin) gstat.min_margin = r.margin;
        first = false;
      }
      gstat.fraction_above =
          gstat.trials_ok > 0 ? static_cast<double>(above) / gstat.trials_ok
                              : 0.0;
      out.groups.push_back(gstat);
    }
  }
  return out;
}

VarianceDecayResult run_variance_decay(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  if (std::find(c.moment_orders.begin(), c.moment_orders.end(), 2) ==
      c.moment_orders.end())
    c.moment_orders.push_back(2);
  if (c.n_list.size() < 2)
    throw DomainError("variance decay: need at least two sizes for the fit");
  if (c.trials < 2)
    throw DomainError("variance decay: need at least two trials per size");
  VarianceDecayResult out;
  out.base = run_convergence(c);
  for (std::size_t pi = 0; pi < c.p_list.size(); ++pi) {
    VarianceFit fit;
    fit.p = c.p_list[pi];
    for (std::size_t ni = 0; ni < c.n_list.size(); ++ni) {
      const GroupStats& g = out.base.groups[ni * c.p_list.size() + pi];
      if (g.trials_ok < 2 || !(g.moment2_var > 0)) continue;
      fit.n.push_back(g.n);
      fit.variance.push_back(g.moment2_var);
    }
    if (fit.n.size() < 2)
      throw DomainError("variance decay: fewer than two usable sizes at p = " +
                        fmt17(fit.p));
    double xbar = 0, ybar = 0;
    for (std::size_t i = 0; i < fit.n.size(); ++i) {
      xbar += std::log(static_cast<double>(fit.n[i]));
      ybar += std::log(fit.variance[i]);
    }
    xbar /= static_cast<double>(fit.n.size());
    ybar /= static_cast<double>(fit.n.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < fit.n.size(); ++i) {
      const double dx = std::log(static_cast<double>(fit.n[i])) - xbar;
      const double dy = std::log(fit.variance[i]) - ybar;
      sxx += dx * dx;
      sxy += dx * dy;
    }
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    out.fits.push_back(std::move(fit));
  }
  return out;
}

GodsilResult run_godsil_verification(int n_max, int k_max, int corpus_size,
                                     std::uint64_t master_seed) {
  if (n_max < 1 || n_max > 7)
    throw DomainError("godsil verification: n_max must lie in 1..7");
  if (k_max < 1 || k_max > 8)
    throw DomainError("godsil verification: k_max must lie in 1..8");
  if (corpus_size < 0)
    throw DomainError("godsil verification: negative corpus size");
  GodsilResult out;
  out.n_max = n_max;
  out.k_max = k_max;
  out.corpus_size = corpus_size;
  out.master_seed = master_seed;

  std::vector<Graph> corpus;
  // Exhaustive over edge subsets up to 5 vertices.
  for (int n = 1; n <= std::min(5, n_max); ++n) {
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    const std::uint32_t lim = 1u << pairs.size();
    for (std::uint32_t mask = 0; mask < lim; ++mask) {
      std::vector<Edge> edges;
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if (mask & (1u << e)) edges.push_back(pairs[e]);
      corpus.push_back(Graph::from_edges(n, std::move(edges)));
    }
  }
  // Random tail spread over the remaining sizes at p = 1/2.
  if (n_max >= 6 && corpus_size > 0) {
    const int sizes = n_max - 5;
    for (int i = 0; i < corpus_size; ++i) {
      const int n = 6 + i % sizes;
      const SeedSpec seed{master_seed, fnv1a64("godsil"),
                          static_cast<std::uint64_t>(n), 0,
                          static_cast<std::uint64_t>(i)};
      corpus.push_back(gen_gnp(n, 0.5, seed));
    }
  }

  out.graphs = static_cast<int>(corpus.size());
  out.all_match = true;
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    const Graph& g = corpus[id];
    const MatchingPolynomial poly = counts_subset_dp(g);
    const std::vector<mpz_class> ps = power_sums(poly, k_max);
    for (int k = 1; k <= k_max; ++k) {
      GodsilRow row;
      row.graph_id = static_cast<int>(id);
      row.n = g.order();
      row.edges = g.size();
      row.k = k;
      const mpz_class walks = count_tree_like(g, k);
      row.walks = walks.get_str();
      row.power_sum = ps[static_cast<std::size_t>(k - 1)].get_str();
      row.match = walks == ps[static_cast<std::size_t>(k - 1)];
      if (!row.match) out.all_match = false;
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Artifact writers.
// ---------------------------------------------------------------------------

void write_csv(std::ostream& out, const ConvergenceResult& r) {
  out << "n,p,trial,me,me_ratio";
  for (int k : r.config.moment_orders) out << ",moment" << k;
  out << ",ks,mean_abs,error\n";
  for (const TrialResult& row : r.rows) {
    out << row.n << ',' << fmt17(row.p) << ',' << row.trial << ',';
    if (row.ok) {
      out << fmt17(row.me) << ',' << fmt17(row.me_ratio);
      for (double m : row.moments) out << ',' << fmt17(m);
      out << ',' << fmt17(row.ks) << ',' << fmt17(row.mean_abs) << ",\n";
    } else {
      out << ',';
      for (std::size_t i = 0; i < r.config.moment_orders.size(); ++i) out << ',';
      out << ",," << csv_escape(row.error) << '\n';
    }
  }
}

namespace {

ordered_json config_header(const ExperimentConfig& c, const char* kind) {
  ordered_json j;
  j["kind"] = kind;
  j["name"] = c.name;
  j["master_seed"] = c.master_seed;
  j["trials"] = c.trials;
  j["engine"] = engine_name(c.engine);
  j["n"] = c.n_list;
  j["p"] = c.p_list;
  return j;
}

void dump(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

}  // namespace

void write_json(std::ostream& out, const ConvergenceResult& r) {
  ordered_json j = config_header(r.config, "convergence");
  j["moment_orders"] = r.config.moment_orders;
  ordered_json groups = ordered_json::array();
  for (const GroupStats& g : r.groups) {
    ordered_json o;
    o["n"] = g.n;
    o["p"] = g.p;
    o["trials_ok"] = g.trials_ok;
    o["ratio_mean"] = g.ratio_mean;
    o["ratio_stddev"] = g.ratio_stddev;
    o["ratio_min"] = g.ratio_min;
    o["ratio_max"] = g.ratio_max;
    ordered_json mm;
    for (std::size_t i = 0; i < r.config.moment_orders.size(); ++i)
      mm[std::to_string(r.config.moment_orders[i])] = g.moment_means[i];
    o["moment_means"] = mm;
    o["ks_mean"] = g.ks_mean;
    o["mean_abs_mean"] = g.mean_abs_mean;
    o["moment2_var"] = g.moment2_var;
    groups.push_back(std::move(o));
  }
  j["groups"] = std::move(groups);
  dump(out, j);
}

void write_csv(std::ostream& out, const KnAsymptoticsResult& r) {
  out << "n,me,remainder\n";
  for (const KnRow& row : r.rows)
    out << row.n << ',' << fmt17(row.me) << ',' << fmt17(row.remainder)
        << '\n';
}

void write_json(std::ostream& out, const KnAsymptoticsResult& r) {
  ordered_json j;
  j["kind"] = "kn-asymptotics";
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  j["step"] = r.step;
  j["fit_a"] = r.fit_a;
  j["fit_b"] = r.fit_b;
  j["max_abs_residual"] = r.max_abs_residual;
  j["remainder_min"] = r.remainder_min;
  j["remainder_max"] = r.remainder_max;
  dump(out, j);
}

void write_csv(std::ostream& out, const LowerBoundResult& r) {
  out << "n,p,trial,me,bound,margin,above,error\n";
  for (const LowerBoundRow& row : r.rows) {
    out << row.n << ',' << fmt17(row.p) << ',' << row.trial << ',';
    if (row.ok) {
      out << fmt17(row.me) << ',' << fmt17(row.bound) << ','
          << fmt17(row.margin) << ',' << (row.margin > 0 ? 1 : 0) << ",\n";
    } else {
      out << ',' << fmt17(row.bound) << ",,," << csv_escape(row.error) << '\n';
    }
  }
}

void write_json(std::ostream& out, const LowerBoundResult& r) {
  ordered_json j = config_header(r.config, "lower-bound");
  ordered_json groups = ordered_json::array();
  for (const LowerBoundGroup& g : r.groups) {
    ordered_json o;
    o["n"] = g.n;
    o["p"] = g.p;
    o["trials_ok"] = g.trials_ok;
    o["fraction_above"] = g.fraction_above;
    o["min_margin"] = g.min_margin;
    groups.push_back(std::move(o));
  }
  j["groups"] = std::move(groups);
  dump(out, j);
}

void write_csv(std::ostream& out, const VarianceDecayResult& r) {
  write_csv(out, r.base);
}

void write_json(std::ostream& out, const VarianceDecayResult& r) {
  ordered_json j = config_header(r.base.config, "variance-decay");
  ordered_json fits = ordered_json::array();
  for (const VarianceFit& f : r.fits) {
    ordered_json o;
    o["p"] = f.p;
    o["n"] = f.n;
    o["variance"] = f.variance;
    o["slope"] = f.slope;
    o["intercept"] = f.intercept;
    fits.push_back(std::move(o));
  }
  j["fits"] = std::move(fits);
  dump(out, j);
}

void write_csv(std::ostream& out, const GodsilResult& r) {
  out << "graph_id,n,edges,k,walks,power_sum,match\n";
  for (const GodsilRow& row : r.rows)
    out << row.graph_id << ',' << row.n << ',' << row.edges << ',' << row.k
        << ',' << row.walks << ',' << row.power_sum << ','
        << (row.match ? 1 : 0) << '\n';
}

void write_json(std::ostream& out, const GodsilResult& r) {
  ordered_json j;
  j["kind"] = "godsil-verification";
  j["n_max"] = r.n_max;
  j["k_max"] = r.k_max;
  j["corpus_size"] = r.corpus_size;
  j["master_seed"] = r.master_seed;
  j["graphs"] = r.graphs;
  j["checks"] = r.rows.size();
  ordered_json mismatches = ordered_json::array();
  for (const GodsilRow& row : r.rows)
    if (!row.match) {
      ordered_json o;
      o["graph_id"] = row.graph_id;
      o["k"] = row.k;
      mismatches.push_back(std::move(o));
    }
  j["mismatches"] = std::move(mismatches);
  j["all_match"] = r.all_match;
  dump(out, j);
}

std::string json_sibling_path(const std::string& csv_path) {
  if (csv_path.size() > 4 &&
      csv_path.compare(csv_path.size() - 4, 4, ".csv") == 0)
    return csv_path.substr(0, csv_path.size() - 4) + ".json";
  return csv_path + ".json";
}

template <class Result>
void write_artifacts(const Result& r, const std::string& csv_path) {
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw NotFoundError("cannot write " + csv_path);
    write_csv(csv, r);
  }
  const std::string json_path = json_sibling_path(csv_path);
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw NotFoundError("cannot write " + json_path);
  write_json(js, r);
}

template void write_artifacts<ConvergenceResult>(const ConvergenceResult&,
                                                 const std::string&);
template void write_artifacts<KnAsymptoticsResult>(const KnAsymptoticsResult&,
                                                   const std::string&);
template void write_artifacts<LowerBoundResult>(const LowerBoundResult&,
                                                const std::string&);
template void write_artifacts<VarianceDecayResult>(const VarianceDecayResult&,
                                                   const std::string&);
template void write_artifacts<GodsilResult>(const GodsilResult&,
                                            const std::string&);

ExperimentConfig parse_experiment_config(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("experiment config: ") + e.what());
  }
  if (!j.is_object())
    throw DomainError("experiment config: expected a JSON object");
  static const char* const known[] = {"name", "n",   "p",       "trials", "seed",
                                      "engine", "out", "threads", "moments"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok)
      throw DomainError("experiment config: unknown key \"" + item.key() +
                        "\"");
  }
  ExperimentConfig c;
  try {
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (j.contains("n")) c.n_list = j.at("n").get<std::vector<int>>();
    if (j.contains("p")) c.p_list = j.at("p").get<std::vector<double>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("seed"))
      c.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("engine"))
      c.engine = engine_from_name(j.at("engine").get<std::string>());
    if (j.contains("out")) c.output_path = j.at("out").get<std::string>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("moments"))
      c.moment_orders = j.at("moments").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("experiment config: ") + e.what());
  }
  return c;
}

}  // namespace met
