#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "met/graph.hpp"
#include "met/matching_poly.hpp"

namespace met {

// Closed walk w_0, w_1, ..., w_k with w_0 = w_k; every step must traverse an
// edge of the host graph.
struct ClosedWalk {
  std::vector<int> vertices;
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

struct WalkBudget {
  // Refuse instances whose coarse enumeration bound n * max_degree^k
  // exceeds this.
  double coarse_limit = 1e13;
  // Abort once this many enumeration transitions have been taken.
  std::uint64_t step_limit = 2'000'000'000ULL;
};

void validate_walk(const Graph& g, const ClosedWalk& w);

// Factor decomposition: repeatedly split off the first minimal closed
// subwalk (the earliest segment w_i..w_j with w_i = w_j and distinct interior)
// and splice the remainder back together; iterate until nothing is left.
// Factors are returned in extraction order.
std::vector<ClosedWalk> decompose_factors(const Graph& g, const ClosedWalk& w);

// Tree-like: every factor has length 2.
bool is_tree_like(const Graph& g, const ClosedWalk& w);

// Number of tree-like closed walks of length k (all start vertices). Equals
// the k-th power sum of the matching roots. Enumerates walks depth-first,
// maintaining the reduced prefix of the factor decomposition; branches that
// already closed a factor longer than 2 are abandoned, which never discards
// a tree-like walk.
mpz_class count_tree_like(const Graph& g, int k, const WalkBudget& budget = {});

// Power sums p_k = sum_i x_i^k of the matching roots for k = 1..k_max,
// computed exactly from the counts via Newton's identities on the elementary
// symmetric functions e_{2j} = (-1)^j m_j (odd ones vanish).
std::vector<mpz_class> power_sums(const MatchingPolynomial& poly, int k_max);

}  // namespace met
