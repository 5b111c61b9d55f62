#include "met/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstddef>

#include "met/errors.hpp"

namespace met {

namespace {

// EISPACK-style diagonal balancing; companion matrices of polynomials with
// wide coefficient ranges need it before the eigensolver sees them.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  bool again = true;
  while (again) {
    again = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0, r = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0 || r == 0) continue;
      double f = 1;
      const double s = c + r;
      while (c < r / 2) {
        c *= 2;
        r /= 2;
        f *= 2;
      }
      while (c >= r * 2) {
        c /= 2;
        r *= 2;
        f /= 2;
      }
      if (c + r < 0.95 * s && f != 1) {
        again = true;
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) /= f;
        for (Eigen::Index j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

RootSpectrum descending(std::vector<double> roots, int n, double tol) {
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return RootSpectrum{n, std::move(roots), tol};
}

// Exact univariate polynomial arithmetic over the rationals, ascending
// coefficients, empty vector = zero, trailing entry nonzero otherwise.
// Degrees here never exceed the maximum matching size, so coefficient
// growth is harmless.
using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly qderivative(const QPoly& f) {
  QPoly d;
  for (std::size_t j = 1; j < f.size(); ++j)
    d.push_back(f[j] * static_cast<long>(j));
  return d;
}

void qmake_monic(QPoly& f) {
  if (f.empty() || f.back() == 1) return;
  const mpq_class lead = f.back();
  for (auto& c : f) c /= lead;
}

// Remainder of a modulo monic b (deg b >= 1).
QPoly qmod(QPoly a, const QPoly& b) {
  qtrim(a);
  while (a.size() >= b.size()) {
    const mpq_class f = a.back();
    const std::size_t off = a.size() - b.size();
    if (f != 0)
      for (std::size_t j = 0; j + 1 < b.size(); ++j) a[off + j] -= f * b[j];
    a.pop_back();
    qtrim(a);
  }
  return a;
}

// Quotient of a by monic b; used only where the division is exact.
QPoly qdiv(QPoly a, const QPoly& b) {
  qtrim(a);
  if (b.size() == 1) return a;
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (a.size() >= b.size()) {
    const mpq_class f = a.back();
    const std::size_t off = a.size() - b.size();
    q[off] = f;
    if (f != 0)
      for (std::size_t j = 0; j + 1 < b.size(); ++j) a[off + j] -= f * b[j];
    a.pop_back();
    qtrim(a);
  }
  qtrim(q);
  return q;
}

QPoly qsub(QPoly a, const QPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), mpq_class(0));
  for (std::size_t j = 0; j < b.size(); ++j) a[j] -= b[j];
  qtrim(a);
  return a;
}

// Monic gcd; nonzero constants count as units, so the result is 1 or monic
// of positive degree. Remainders are normalized each round to keep the
// rationals small.
QPoly qgcd(QPoly a, QPoly b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    if (b.size() == 1) return {mpq_class(1)};
    qmake_monic(b);
    QPoly r = qmod(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  qmake_monic(a);
  return a;
}

// Yun's square-free factorization of a monic polynomial: returns pairwise
// coprime monic factors with their multiplicities, each factor square-free.
std::vector<std::pair<QPoly, int>> square_free_factors(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  const QPoly fp = qderivative(f);
  const QPoly g = qgcd(f, fp);
  if (g.size() == 1) {
    out.emplace_back(f, 1);
    return out;
  }
  QPoly b = qdiv(f, g);
  QPoly d = qsub(qdiv(fp, g), qderivative(b));
  for (int i = 1; b.size() > 1; ++i) {
    const QPoly a = qgcd(b, d);
    if (a.size() > 1) out.emplace_back(a, i);
    b = qdiv(std::move(b), a);
    d = qsub(qdiv(std::move(d), a), qderivative(b));
  }
  return out;
}

}  // namespace

RootSpectrum matching_roots(const MatchingPolynomial& poly, double tol) {
  if (!(tol > 0.0) || tol >= 1.0)
    throw DomainError("matching_roots: tol must lie in (0,1)");
  const int n = poly.order();
  const int d = n / 2;
  const int t = poly.max_matching_size();

  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(n));

  if (t > 0) {
    // f[j] = coefficient of y^j in q(y) = sum_k (-1)^k m_k y^(t-k); monic
    // with integer entries. Repeated roots (disconnected graphs, sibling
    // subtrees) would defeat the eigensolver-plus-Newton pipeline, whose
    // accuracy degrades to eps^(1/multiplicity), so the polynomial is first
    // split into exact square-free factors; every numerical root is then
    // simple and polishes to machine precision.
    QPoly f(static_cast<std::size_t>(t) + 1);
    for (int k = 0; k <= t; ++k) {
      f[static_cast<std::size_t>(t - k)] =
          (k & 1) ? mpq_class(-poly.count(k)) : mpq_class(poly.count(k));
    }
    const auto factors = square_free_factors(f);
    int degree_sum = 0;
    for (const auto& [a, mult] : factors)
      degree_sum += mult * static_cast<int>(a.size() - 1);
    if (degree_sum != t)
      throw NumericError("matching_roots: square-free degrees do not add up",
                         degree_sum - t);

    const auto push_root = [&](double y, int mult) {
      if (y < -tol)
        throw NumericError("matching_roots: negative squared root", y);
      if (y < 0) y = 0;
      const double r = std::sqrt(y);
      for (int m = 0; m < mult; ++m) {
        roots.push_back(r);
        roots.push_back(-r);
      }
    };

    for (const auto& [a, mult] : factors) {
      const int ta = static_cast<int>(a.size()) - 1;
      std::vector<double> q(a.size());
      for (std::size_t j = 0; j < a.size(); ++j) q[j] = a[j].get_d();
      if (ta == 1) {
        push_root(-q[0], mult);
        continue;
      }

      Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(ta, ta);
      for (int i = 1; i < ta; ++i) comp(i, i - 1) = 1.0;
      for (int i = 0; i < ta; ++i)
        comp(i, ta - 1) = -q[static_cast<std::size_t>(i)];
      balance(comp);
      Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
      if (es.info() != Eigen::Success)
        throw NumericError("matching_roots: companion eigensolver failed", 0.0);

      const auto eval = [&](double y, double& v, double& vp) {
        v = q[static_cast<std::size_t>(ta)];
        vp = 0;
        for (int j = ta - 1; j >= 0; --j) {
          vp = vp * y + v;
          v = v * y + q[static_cast<std::size_t>(j)];
        }
      };
      for (int i = 0; i < ta; ++i) {
        double y = es.eigenvalues()[i].real();
        for (int it = 0; it < 60; ++it) {
          double v, vp;
          eval(y, v, vp);
          if (vp == 0) break;
          const double step = v / vp;
          y -= step;
          if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(y))) break;
        }
        push_root(y, mult);
      }
    }
  }

  // Zero roots: multiplicity n - 2t, i.e. 2(d-t) plus one for odd order.
  for (int i = 0; i < 2 * (d - t) + (n & 1); ++i) roots.push_back(0.0);

  double sum_sq = 0;
  for (double r : roots) sum_sq += r * r;
  const double target = 2.0 * poly.count(1).get_d();
  if (std::abs(sum_sq - target) > tol * std::max(1.0, target))
    throw NumericError("matching_roots: power-sum gate failed",
                       sum_sq - target);

  return descending(std::move(roots), n, tol);
}

double matching_energy(const RootSpectrum& s) {
  double e = 0;
  for (double r : s.roots) e += std::abs(r);
  return e;
}

RootSpectrum complete_spectrum_fast(int n) {
  if (n < 1) throw DomainError("complete_spectrum_fast: need n >= 1");
  if (n == 1) return RootSpectrum{1, {0.0}, 1e-10};
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int i = 1; i < n; ++i) sub[i - 1] = std::sqrt(static_cast<double>(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("complete_spectrum_fast: eigensolver failed", 0.0);
  std::vector<double> roots(es.eigenvalues().data(),
                            es.eigenvalues().data() + n);
  return descending(std::move(roots), n, 1e-10);
}

RootSpectrum forest_spectrum_fast(const Graph& g) {
  if (!is_acyclic(g))
    throw DomainError("forest_spectrum_fast: input has a cycle");
  const int n = g.order();
  if (n == 0) return RootSpectrum{0, {}, 1e-10};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("forest_spectrum_fast: eigensolver failed", 0.0);
  std::vector<double> roots(es.eigenvalues().data(),
                            es.eigenvalues().data() + n);
  return descending(std::move(roots), n, 1e-10);
}

NormalizedSpectrum normalize(const RootSpectrum& s, int n, double p) {
  if (n < 1) throw DomainError("normalize: need n >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("normalize: p must lie in (0,1]");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n) * p);
  NormalizedSpectrum out;
  out.order = s.order;
  out.p = p;
  out.lambdas.reserve(s.roots.size());
  for (double r : s.roots) out.lambdas.push_back(r * scale);
  return out;
}

RootSpectrum graph_spectrum(const Graph& g, const EngineOptions& opt,
                            double tol, Engine engine) {
  const int n = g.order();
  if (engine == Engine::Auto) {
    if (g.size() == 0)
      return RootSpectrum{n, std::vector<double>(static_cast<std::size_t>(n), 0.0), tol};
    if (is_acyclic(g)) return forest_spectrum_fast(g);
    if (n >= 2 && g.size() == n * (n - 1) / 2) return complete_spectrum_fast(n);
  }
  return matching_roots(matching_counts(g, engine, opt), tol);
}

double energy_of_graph(const Graph& g, const EngineOptions& opt, double tol,
                       Engine engine) {
  return matching_energy(graph_spectrum(g, opt, tol, engine));
}

}  // namespace met
