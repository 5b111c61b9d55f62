#include <doctest.h>

#include <string>
#include <vector>

#include "met/errors.hpp"
#include "met/graph.hpp"
#include "met/matching_poly.hpp"
#include "oracle.hpp"

using namespace met;

namespace {

std::vector<mpz_class> mz(std::vector<long> v) {
  return {v.begin(), v.end()};
}

// Every graph on n vertices, as edge subsets in lexicographic pair order.
template <class F>
void for_each_graph(int n, F&& f) {
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  const std::uint32_t total = 1u << pairs.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1u) edges.push_back(pairs[i]);
    f(Graph::from_edges(n, std::move(edges)));
  }
}

}  // namespace

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(MatchingPolynomial(-1, mz({1})), DomainError);
  CHECK_THROWS_AS(MatchingPolynomial(4, {}), DomainError);
  CHECK_THROWS_AS(MatchingPolynomial(4, mz({2, 1})), DomainError);
  CHECK_THROWS_AS(MatchingPolynomial(4, mz({1, 3, 1, 1})), DomainError);
  CHECK_THROWS_AS(MatchingPolynomial(4, mz({1, -2})), DomainError);
  // Trailing zeros are trimmed, not rejected.
  const MatchingPolynomial p(4, mz({1, 3, 0}));
  CHECK(p.max_matching_size() == 1);
  CHECK(p.count(1) == 3);
  CHECK(p.count(2) == 0);
  CHECK(p.count(17) == 0);
  CHECK_THROWS_AS(p.count(-1), DomainError);
  CHECK(MatchingPolynomial(0, mz({1})).order() == 0);
}

TEST_CASE("frozen small counts") {
  CHECK(counts_subset_dp(gen_path(2)).counts() == mz({1, 1}));
  CHECK(counts_subset_dp(gen_path(3)).counts() == mz({1, 2}));
  CHECK(counts_subset_dp(gen_path(4)).counts() == mz({1, 3, 1}));
  CHECK(counts_subset_dp(gen_path(5)).counts() == mz({1, 4, 3}));
  CHECK(counts_subset_dp(gen_cycle(4)).counts() == mz({1, 4, 2}));
  CHECK(counts_subset_dp(gen_cycle(5)).counts() == mz({1, 5, 5}));
  CHECK(counts_subset_dp(gen_cycle(6)).counts() == mz({1, 6, 9, 2}));
  CHECK(counts_subset_dp(gen_complete(4)).counts() == mz({1, 6, 3}));
  CHECK(counts_subset_dp(gen_complete(5)).counts() == mz({1, 10, 15}));
  CHECK(counts_subset_dp(gen_star(4)).counts() == mz({1, 3}));
  CHECK(counts_subset_dp(Graph(3)).counts() == mz({1}));
  CHECK(counts_subset_dp(Graph(0)).counts() == mz({1}));
}

TEST_CASE("subset dp and edge recursion match brute force on all tiny graphs") {
  for (int n = 0; n <= 5; ++n) {
    for_each_graph(n, [](const Graph& g) {
      const auto expect = oracle::brute_force_matching_counts(g);
      CHECK(counts_subset_dp(g).counts() == expect);
      CHECK(counts_edge_recursion(g).counts() == expect);
    });
  }
}

TEST_CASE("engines agree on random mid-size graphs") {
  for (int n = 7; n <= 10; ++n) {
    for (int t = 0; t < 12; ++t) {
      const double p = 0.15 + 0.1 * (t % 8);
      const Graph g = gen_gnp(n, p, SeedSpec{77, 0, static_cast<std::uint64_t>(n), 0,
                                             static_cast<std::uint64_t>(t)});
      const MatchingPolynomial a = counts_subset_dp(g);
      CHECK(a.counts() == counts_edge_recursion(g).counts());
      CHECK(a.counts() == oracle::brute_force_matching_counts(g));
    }
  }
}

TEST_CASE("forest engine matches subset dp on random forests") {
  for (int t = 0; t < 10; ++t) {
    const Graph tree = gen_random_tree(3 + 2 * t, SeedSpec{5, 0, 0, 0,
                                                           static_cast<std::uint64_t>(t)});
    CHECK(counts_forest(tree).counts() == counts_subset_dp(tree).counts());
  }
  const Graph forest = disjoint_union(
      disjoint_union(gen_random_tree(8, SeedSpec{6}), gen_path(5)), Graph(3));
  CHECK(counts_forest(forest).counts() == counts_subset_dp(forest).counts());
  CHECK(counts_forest(Graph(0)).counts() == mz({1}));
  CHECK_THROWS_AS(counts_forest(gen_cycle(4)), DomainError);
  CHECK_THROWS_AS(counts_forest(disjoint_union(gen_path(3), gen_cycle(5))),
                  DomainError);
}

TEST_CASE("evaluate and derivative") {
  const MatchingPolynomial p4 = counts_subset_dp(gen_path(4));
  CHECK(p4.evaluate(2.0) == doctest::Approx(5.0));     // 16 - 12 + 1
  CHECK(p4.evaluate(0.0) == doctest::Approx(1.0));
  CHECK(p4.evaluate(-2.0) == doctest::Approx(5.0));
  CHECK(p4.derivative() == mz({4, 6}));
  CHECK(p4.evaluate_derivative(2.0) == doctest::Approx(20.0));  // 32 - 12
  const MatchingPolynomial empty3 = counts_subset_dp(Graph(3));
  CHECK(empty3.evaluate(2.0) == doctest::Approx(8.0));
  CHECK(empty3.derivative() == mz({3}));
  // Central difference agreement on a non-symmetric point.
  const MatchingPolynomial c6 = counts_subset_dp(gen_cycle(6));
  const double h = 1e-6, x = 1.37;
  CHECK(c6.evaluate_derivative(x) ==
        doctest::Approx((c6.evaluate(x + h) - c6.evaluate(x - h)) / (2 * h))
            .epsilon(1e-5));
}

TEST_CASE("counts multiply over disjoint unions") {
  const Graph g = disjoint_union(gen_path(3), gen_path(2));
  CHECK(matching_counts(g).counts() == mz({1, 3, 2}));
  const Graph h = disjoint_union(gen_cycle(4), gen_star(4));
  // {1,4,2} * {1,3} = {1,7,14,6}
  CHECK(matching_counts(h).counts() == mz({1, 7, 14, 6}));
}

TEST_CASE("closed forms match the dp") {
  for (int n = 0; n <= 16; ++n) {
    CHECK(closed_form(Family::Path, n).counts() ==
          counts_subset_dp(gen_path(n)).counts());
    CHECK(closed_form(Family::Complete, n).counts() ==
          counts_subset_dp(gen_complete(n)).counts());
    if (n >= 3)
      CHECK(closed_form(Family::Cycle, n).counts() ==
            counts_subset_dp(gen_cycle(n)).counts());
  }
  CHECK_THROWS_AS(closed_form(Family::Cycle, 2), DomainError);
  CHECK_THROWS_AS(closed_form(Family::Path, -1), DomainError);
}

TEST_CASE("complete graph recurrence matches the closed form") {
  for (int n = 0; n <= 60; ++n)
    CHECK(complete_by_recurrence(n).counts() ==
          closed_form(Family::Complete, n).counts());
}

TEST_CASE("total matchings of complete graphs hit known values") {
  const auto total = [](int n) {
    const MatchingPolynomial poly = closed_form(Family::Complete, n);
    mpz_class s = 0;
    for (const auto& c : poly.counts()) s += c;
    return s;
  };
  CHECK(total(6) == 76);
  CHECK(total(10) == 9496);
}

TEST_CASE("wide coefficient paths agree with closed forms") {
  EngineOptions wide;
  wide.dp_cap = 64;
  // Order 40 runs on 128-bit counters, order 60 on big integers.
  CHECK(counts_subset_dp(gen_path(40), wide).counts() ==
        closed_form(Family::Path, 40).counts());
  CHECK(counts_subset_dp(gen_cycle(40), wide).counts() ==
        closed_form(Family::Cycle, 40).counts());
  CHECK(counts_subset_dp(gen_path(60), wide).counts() ==
        closed_form(Family::Path, 60).counts());
  // Order 26 stays on 64-bit counters with coefficients near 8e12.
  CHECK(counts_subset_dp(gen_complete(26)).counts() ==
        closed_form(Family::Complete, 26).counts());
}

TEST_CASE("edge recursion handles graphs past the dp cap") {
  CHECK(counts_edge_recursion(gen_cycle(30)).counts() ==
        closed_form(Family::Cycle, 30).counts());
  CHECK(counts_edge_recursion(gen_path(45)).counts() ==
        closed_form(Family::Path, 45).counts());
}

TEST_CASE("capacity and resource guards") {
  try {
    counts_subset_dp(gen_path(27));
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("27") != std::string::npos);
    CHECK(msg.find("26") != std::string::npos);
  }
  const Graph dense = gen_gnp(18, 0.6, SeedSpec{31});
  EngineOptions tiny_nodes;
  tiny_nodes.recursion_node_budget = 50;
  CHECK_THROWS_AS(counts_edge_recursion(dense, tiny_nodes), ResourceError);
  EngineOptions tiny_memo;
  tiny_memo.recursion_memo_budget = 2;
  CHECK_THROWS_AS(counts_edge_recursion(dense, tiny_memo), ResourceError);
}

TEST_CASE("engine dispatch") {
  const Graph tree = gen_random_tree(40, SeedSpec{8});
  CHECK(matching_counts(tree).counts() == counts_forest(tree).counts());
  CHECK(matching_counts(gen_cycle(30)).counts() ==
        closed_form(Family::Cycle, 30).counts());
  CHECK(matching_counts(gen_complete(8), Engine::SubsetDp).counts() ==
        closed_form(Family::Complete, 8).counts());
  CHECK(matching_counts(gen_complete(8), Engine::EdgeRecursion).counts() ==
        closed_form(Family::Complete, 8).counts());
  CHECK_THROWS_AS(matching_counts(gen_cycle(4), Engine::Forest), DomainError);
  CHECK_THROWS_AS(matching_counts(gen_path(30), Engine::SubsetDp),
                  CapacityError);
}
