#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "met/errors.hpp"
#include "met/experiments.hpp"

using namespace met;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.name = "unit";
  c.n_list = {6, 10};
  c.p_list = {0.4, 0.7};
  c.trials = 3;
  c.master_seed = 99;
  c.threads = 1;
  return c;
}

std::string csv_of(const ConvergenceResult& r) {
  std::ostringstream ss;
  write_csv(ss, r);
  return ss.str();
}

std::string json_of(const ConvergenceResult& r) {
  std::ostringstream ss;
  write_json(ss, r);
  return ss.str();
}

}  // namespace

TEST_CASE("engine names round trip") {
  for (Engine e : {Engine::Auto, Engine::SubsetDp, Engine::EdgeRecursion,
                   Engine::Forest})
    CHECK(engine_from_name(engine_name(e)) == e);
  CHECK(engine_from_name("dp") == Engine::SubsetDp);
  CHECK(engine_from_name("recursion") == Engine::EdgeRecursion);
  CHECK_THROWS_AS(engine_from_name("bogus"), DomainError);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(tiny_config()));
  auto bad = tiny_config();
  bad.n_list.clear();
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tiny_config();
  bad.n_list = {0};
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tiny_config();
  bad.p_list = {0.0};
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tiny_config();
  bad.p_list = {1.5};
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tiny_config();
  bad.trials = 0;
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tiny_config();
  bad.moment_orders = {2, -4};
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad = tiny_config();
  bad.threads = -1;
  CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("convergence runs are deterministic and thread-independent") {
  const ConvergenceResult a = run_convergence(tiny_config());
  const ConvergenceResult b = run_convergence(tiny_config());
  CHECK(csv_of(a) == csv_of(b));
  CHECK(json_of(a) == json_of(b));
  // Thread count must not leak into results or artifacts.
  auto threaded = tiny_config();
  threaded.threads = 4;
  const ConvergenceResult c = run_convergence(threaded);
  CHECK(csv_of(a) == csv_of(c));
  CHECK(json_of(a) == json_of(c));

  auto reseeded = tiny_config();
  reseeded.master_seed = 100;
  CHECK(csv_of(run_convergence(reseeded)) != csv_of(a));
  auto renamed = tiny_config();
  renamed.name = "unit2";
  CHECK(csv_of(run_convergence(renamed)) != csv_of(a));
}

TEST_CASE("convergence rows carry plausible statistics") {
  const ConvergenceResult r = run_convergence(tiny_config());
  REQUIRE(r.rows.size() == 2 * 2 * 3);
  REQUIRE(r.groups.size() == 2 * 2);
  for (const auto& row : r.rows) {
    REQUIRE(row.ok);
    CHECK(row.me > 0);
    CHECK(row.me_ratio == doctest::Approx(
        row.me / (std::pow(row.n, 1.5) * std::sqrt(row.p))));
    REQUIRE(row.moments.size() == 3);
    CHECK(row.moments[0] > 0);
    CHECK(row.ks > 0);
    CHECK(row.ks <= 1.0);
    CHECK(row.mean_abs > 0);
    CHECK(row.error.empty());
  }
  // Rows are in (n, p, trial) order.
  CHECK(r.rows[0].n == 6);
  CHECK(r.rows[0].p == 0.4);
  CHECK(r.rows[0].trial == 0);
  CHECK(r.rows[5].n == 6);
  CHECK(r.rows[5].p == 0.7);
  CHECK(r.rows[5].trial == 2);
  CHECK(r.rows[6].n == 10);
  for (const auto& g : r.groups) {
    CHECK(g.trials_ok == 3);
    CHECK(g.ratio_min <= g.ratio_mean);
    CHECK(g.ratio_mean <= g.ratio_max);
    CHECK(g.ratio_stddev >= 0);
  }
}

TEST_CASE("trial seeding ignores the position of n and p in the grid") {
  // n = 10 / p = 0.7 rows must be identical whether or not other grid points
  // run alongside them. p keeps its index, so pad the p list on the right.
  ExperimentConfig solo;
  solo.name = "unit";
  solo.n_list = {10};
  solo.p_list = {0.4, 0.7};
  solo.trials = 3;
  solo.master_seed = 99;
  solo.threads = 1;
  const ConvergenceResult full = run_convergence(tiny_config());
  const ConvergenceResult part = run_convergence(solo);
  const auto pick = [](const ConvergenceResult& r, int n, double p) {
    std::vector<double> out;
    for (const auto& row : r.rows)
      if (row.n == n && row.p == p) out.push_back(row.me);
    return out;
  };
  CHECK(pick(full, 10, 0.7) == pick(part, 10, 0.7));
}

TEST_CASE("complete graph asymptotics fit") {
  const KnAsymptoticsResult r = run_kn_asymptotics(50, 200, 50);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].n == 50);
  CHECK(r.rows[3].n == 200);
  // Leading coefficient approaches 8/(3 pi); at these small sizes 5% is
  // already informative.
  CHECK(r.fit_a == doctest::Approx(8.0 / (3 * std::numbers::pi)).epsilon(0.05));
  CHECK(r.remainder_min <= r.remainder_max);
  for (const auto& row : r.rows) {
    CHECK(row.me > 0);
    CHECK(row.remainder == doctest::Approx(
        (row.me - 8.0 / (3 * std::numbers::pi) * std::pow(row.n, 1.5)) / row.n));
  }
  CHECK_THROWS_AS(run_kn_asymptotics(0, 100, 10), DomainError);
  CHECK_THROWS_AS(run_kn_asymptotics(100, 100, 10), DomainError);
  CHECK_THROWS_AS(run_kn_asymptotics(50, 100, 0), DomainError);
}

TEST_CASE("lower bound experiment") {
  ExperimentConfig c;
  c.name = "lb";
  c.n_list = {12};
  c.p_list = {0.5};
  c.trials = 8;
  c.master_seed = 7;
  c.threads = 1;
  const LowerBoundResult r = run_lower_bound(c);
  REQUIRE(r.rows.size() == 8);
  REQUIRE(r.groups.size() == 1);
  CHECK(r.groups[0].trials_ok == 8);
  CHECK(r.groups[0].fraction_above == doctest::Approx(1.0));
  CHECK(r.groups[0].min_margin > 0);
  for (const auto& row : r.rows) {
    CHECK(row.bound == doctest::Approx(std::sqrt(0.5) / std::numbers::pi *
                                       std::pow(12.0, 1.5)));
    CHECK(row.margin == doctest::Approx(row.me - row.bound));
  }
}

TEST_CASE("variance decay experiment") {
  ExperimentConfig c;
  c.name = "vd";
  c.n_list = {8, 12, 16};
  c.p_list = {0.5};
  c.trials = 24;
  c.master_seed = 11;
  c.threads = 1;
  const VarianceDecayResult r = run_variance_decay(c);
  REQUIRE(r.fits.size() == 1);
  CHECK(r.fits[0].p == 0.5);
  REQUIRE(r.fits[0].n.size() == 3);
  REQUIRE(r.fits[0].variance.size() == 3);
  for (double v : r.fits[0].variance) CHECK(v > 0);
  // Variance of the second moment shrinks with n.
  CHECK(r.fits[0].slope < -0.5);
  // The base run tracks the order-2 moment even if the caller left it out.
  auto no2 = c;
  no2.moment_orders = {4};
  const VarianceDecayResult forced = run_variance_decay(no2);
  CHECK(forced.base.config.moment_orders == std::vector<int>{4, 2});
  CHECK(forced.fits[0].slope == doctest::Approx(r.fits[0].slope));

  auto bad = c;
  bad.n_list = {8};
  CHECK_THROWS_AS(run_variance_decay(bad), DomainError);
  bad = c;
  bad.trials = 1;
  CHECK_THROWS_AS(run_variance_decay(bad), DomainError);
}

TEST_CASE("walk count verification corpus") {
  const GodsilResult r = run_godsil_verification(6, 6, 5, 3);
  CHECK(r.all_match);
  CHECK(r.graphs > 0);
  // Exhaustive up to order 4: 1 + 2 + 8 + 64 graphs, plus the random tail.
  int exhaustive = 0;
  for (const auto& row : r.rows)
    if (row.k == 2 && row.n <= 4) ++exhaustive;
  CHECK(exhaustive == 75);
  for (const auto& row : r.rows) {
    CHECK(row.match);
    if (row.k % 2 == 1) CHECK(row.walks == "0");
    if (row.k == 2) {
      CHECK(row.walks == std::to_string(2 * row.edges));
    }
  }
  CHECK_THROWS_AS(run_godsil_verification(0, 6, 5, 3), DomainError);
  CHECK_THROWS_AS(run_godsil_verification(8, 6, 5, 3), DomainError);
  CHECK_THROWS_AS(run_godsil_verification(6, 0, 5, 3), DomainError);
  CHECK_THROWS_AS(run_godsil_verification(6, 9, 5, 3), DomainError);
  CHECK_THROWS_AS(run_godsil_verification(6, 6, -1, 3), DomainError);
}

TEST_CASE("csv layout") {
  auto c = tiny_config();
  c.n_list = {6};
  c.p_list = {0.4};
  c.trials = 1;
  const ConvergenceResult r = run_convergence(c);
  const std::string csv = csv_of(r);
  CHECK(csv.rfind("n,p,trial,me,me_ratio,moment2,moment4,moment6,ks,mean_abs,error\n",
                  0) == 0);
  // One header plus one row, newline terminated.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.back() == '\n');
}

TEST_CASE("json sibling path") {
  CHECK(json_sibling_path("results.csv") == "results.json");
  CHECK(json_sibling_path("a/b/run1.csv") == "a/b/run1.json");
  CHECK(json_sibling_path("weird.txt") == "weird.txt.json");
  CHECK(json_sibling_path("noext") == "noext.json");
}

TEST_CASE("artifact files round trip byte for byte") {
  const std::string dir = "unit_artifacts";
  std::remove((dir + ".csv").c_str());
  std::remove((dir + ".json").c_str());
  const ConvergenceResult r = run_convergence(tiny_config());
  write_artifacts(r, dir + ".csv");
  const auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(dir + ".csv") == csv_of(r));
  CHECK(slurp(dir + ".json") == json_of(r));
  std::remove((dir + ".csv").c_str());
  std::remove((dir + ".json").c_str());
}

TEST_CASE("config parsing") {
  std::istringstream in(R"({
    "name": "conv",
    "n": [8, 16],
    "p": [0.3, 0.6],
    "trials": 5,
    "seed": 123,
    "engine": "dp",
    "out": "x.csv",
    "threads": 2,
    "moments": [2, 4]
  })");
  const ExperimentConfig c = parse_experiment_config(in);
  CHECK(c.name == "conv");
  CHECK(c.n_list == std::vector<int>{8, 16});
  CHECK(c.p_list == std::vector<double>{0.3, 0.6});
  CHECK(c.trials == 5);
  CHECK(c.master_seed == 123);
  CHECK(c.engine == Engine::SubsetDp);
  CHECK(c.output_path == "x.csv");
  CHECK(c.threads == 2);
  CHECK(c.moment_orders == std::vector<int>{2, 4});

  std::istringstream defaults(R"({"n": [4], "p": [0.5]})");
  const ExperimentConfig d = parse_experiment_config(defaults);
  CHECK(d.name == "convergence");
  CHECK(d.trials == 1);
  CHECK(d.engine == Engine::Auto);

  std::istringstream broken("{not json");
  CHECK_THROWS_AS(parse_experiment_config(broken), DomainError);
  std::istringstream badkey(R"({"n": [4], "p": [0.5], "bogus": 1})");
  CHECK_THROWS_AS(parse_experiment_config(badkey), DomainError);
}

TEST_CASE("single vertex trials do not crash") {
  ExperimentConfig c;
  c.name = "n1";
  c.n_list = {1};
  c.p_list = {0.5};
  c.trials = 2;
  c.master_seed = 1;
  c.threads = 1;
  const ConvergenceResult r = run_convergence(c);
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    CHECK(row.ok);
    CHECK(row.me == 0.0);  // single vertex, no edges, all roots zero
  }
}
