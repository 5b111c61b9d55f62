#pragma once

#include <vector>

#include "met/graph.hpp"
#include "met/matching_poly.hpp"

namespace met {

// All n roots of a matching polynomial, descending. Real and symmetric about
// zero; tol is the relative tolerance they were produced under.
struct RootSpectrum {
  int order = 0;
  std::vector<double> roots;
  double tol = 0;
};

// Root extraction through the even part: substituting y = x^2 gives a monic
// degree-t integer polynomial q (t = max matching size) whose roots are the
// squared nonzero matching roots. q is split into exact square-free factors
// over the rationals first (repeated roots arise from disconnected graphs
// and from sibling subtrees), then each factor goes through balanced
// companion eigenvalues plus Newton polish, so every numerical root is
// simple; multiplicities are exact. y in [-tol,0) clamps to 0. The result
// must pass |sum x_i^2 - 2 m_1| <= tol*max(1, 2 m_1), else NumericError.
RootSpectrum matching_roots(const MatchingPolynomial& poly, double tol = 1e-10);

// sum |x_i|.
double matching_energy(const RootSpectrum& s);

// Complete-graph fast path: the matching roots of K_n are the eigenvalues of
// the n x n symmetric tridiagonal matrix with zero diagonal and off-diagonal
// sqrt(1), ..., sqrt(n-1). O(n^2), practical to n ~ 5000.
RootSpectrum complete_spectrum_fast(int n);

// Forest fast path: on forests the matching polynomial equals the
// characteristic polynomial, so the roots are the adjacency eigenvalues.
RootSpectrum forest_spectrum_fast(const Graph& g);

// lambda_i = x_i / sqrt(n p), order preserved.
struct NormalizedSpectrum {
  int order = 0;
  double p = 0;
  std::vector<double> lambdas;
};

NormalizedSpectrum normalize(const RootSpectrum& s, int n, double p);

// Spectrum/energy of a graph with fast paths: empty edge set and forests skip
// polynomial work entirely, complete graphs use the tridiagonal route,
// everything else goes through matching_counts + matching_roots.
RootSpectrum graph_spectrum(const Graph& g, const EngineOptions& opt = {},
                            double tol = 1e-10, Engine engine = Engine::Auto);
double energy_of_graph(const Graph& g, const EngineOptions& opt = {},
                       double tol = 1e-10, Engine engine = Engine::Auto);

}  // namespace met
