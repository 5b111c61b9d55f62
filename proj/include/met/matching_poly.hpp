#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "met/graph.hpp"

namespace met {

// Exact matching counts m_0..m_t of a graph on n vertices (m_k = number of
// k-edge matchings), trailing zeros trimmed so the last stored entry is
// nonzero; m_0 = 1 always. Represents
//   m(G,x) = sum_k (-1)^k m_k x^(n-2k),
// whose roots are all real and symmetric about 0.
class MatchingPolynomial {
 public:
  MatchingPolynomial(int n, std::vector<mpz_class> counts);

  int order() const { return n_; }
  // Largest k with m_k != 0.
  int max_matching_size() const { return static_cast<int>(counts_.size()) - 1; }
  const std::vector<mpz_class>& counts() const { return counts_; }
  // m_k, zero beyond the stored range.
  const mpz_class& count(int k) const;

  double evaluate(double x) const;
  // Magnitudes c_k = (n-2k) m_k of the derivative
  //   m'(G,x) = sum_k (-1)^k c_k x^(n-1-2k).
  std::vector<mpz_class> derivative() const;
  double evaluate_derivative(double x) const;

  bool operator==(const MatchingPolynomial&) const = default;

 private:
  int n_ = 0;
  std::vector<mpz_class> counts_;
};

struct EngineOptions {
  // Subset DP refuses graphs above this order (bitset state keys).
  int dp_cap = 26;
  // Edge recursion aborts with a resource error past these budgets.
  std::size_t recursion_memo_budget = 2'000'000;
  std::uint64_t recursion_node_budget = 20'000'000;
};

// Memoized vertex-subset DP: m_k(S) = m_k(S\{u}) + sum_{v ~ u} m_{k-1}(S\{u,v})
// with u the lowest vertex of S. Exact for every simple graph with
// order <= dp_cap.
MatchingPolynomial counts_subset_dp(const Graph& g,
                                    const EngineOptions& opt = {});

// Edge deletion/contraction recursion m(G) = m(G-e) + x-shift of m(G-u-v),
// with component splitting and memoization. No order cap; practical for
// sparse graphs, guarded by memo/node budgets.
MatchingPolynomial counts_edge_recursion(const Graph& g,
                                         const EngineOptions& opt = {});

// Linear-time two-state accumulation over rooted trees; the input must be a
// forest.
MatchingPolynomial counts_forest(const Graph& g);

enum class Family { Path, Cycle, Complete };

// Closed forms: paths m_k = C(n-k,k), cycles m_k = n/(n-k) C(n-k,k),
// complete graphs m_k = n! / (k! 2^k (n-2k)!).
MatchingPolynomial closed_form(Family family, int n);

// m_k(K_n) = m_k(K_{n-1}) + (n-1) m_{k-1}(K_{n-2}); exact cross-check for
// the complete-graph closed form.
MatchingPolynomial complete_by_recurrence(int n);

enum class Engine { Auto, SubsetDp, EdgeRecursion, Forest };

// Engine ladder: forests go to counts_forest, graphs with order <= dp_cap to
// the subset DP, everything else to the edge recursion.
MatchingPolynomial matching_counts(const Graph& g, Engine engine = Engine::Auto,
                                   const EngineOptions& opt = {});

}  // namespace met
