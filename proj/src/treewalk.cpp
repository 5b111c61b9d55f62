#include "met/treewalk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "met/errors.hpp"

namespace met {

void validate_walk(const Graph& g, const ClosedWalk& w) {
  if (w.vertices.empty()) throw DomainError("closed walk: empty");
  for (int v : w.vertices)
    if (v < 0 || v >= g.order())
      throw DomainError("closed walk: vertex " + std::to_string(v) +
                        " out of range");
  if (w.vertices.front() != w.vertices.back())
    throw DomainError("closed walk: endpoints differ");
  for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i)
    if (!g.has_edge(w.vertices[i], w.vertices[i + 1]))
      throw DomainError("closed walk: step " + std::to_string(i) +
                        " is not an edge");
}

std::vector<ClosedWalk> decompose_factors(const Graph& g, const ClosedWalk& w) {
  validate_walk(g, w);
  std::vector<ClosedWalk> factors;
  std::vector<int> cur = w.vertices;
  std::vector<int> last(static_cast<std::size_t>(g.order()), -1);
  while (cur.size() > 1) {
    // First minimal closed subwalk: earliest j whose vertex appeared before;
    // the previous occurrence i is unique because cur[0..j-1] is distinct.
    int i = -1, j = -1;
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      const int v = cur[idx];
      if (last[static_cast<std::size_t>(v)] != -1) {
        i = last[static_cast<std::size_t>(v)];
        j = static_cast<int>(idx);
        break;
      }
      last[static_cast<std::size_t>(v)] = static_cast<int>(idx);
    }
    for (std::size_t idx = 0; idx < cur.size(); ++idx)
      last[static_cast<std::size_t>(cur[idx])] = -1;
    factors.push_back(
        {std::vector<int>(cur.begin() + i, cur.begin() + j + 1)});
    cur.erase(cur.begin() + i + 1, cur.begin() + j + 1);
  }
  return factors;
}

bool is_tree_like(const Graph& g, const ClosedWalk& w) {
  for (const auto& f : decompose_factors(g, w))
    if (f.length() != 2) return false;
  return true;
}

namespace {

// DFS maintaining the reduced prefix rp (a vertex-distinct path from the
// start). Stepping to rp[-2] closes a length-2 factor and pops; stepping to
// any other on-path vertex closes a longer factor, so the branch dies; a
// fresh vertex pushes. A walk is tree-like closed iff rp collapses back to
// the start exactly at depth k.
class TreeLikeCounter {
 public:
  TreeLikeCounter(const Graph& g, int k, const WalkBudget& budget)
      : g_(g), k_(k), budget_(budget),
        on_path_(static_cast<std::size_t>(g.order()), 0) {}

  std::uint64_t count_from(int s) {
    count_ = 0;
    rp_.assign(1, s);
    on_path_[static_cast<std::size_t>(s)] = 1;
    dfs(s, 0);
    on_path_[static_cast<std::size_t>(s)] = 0;
    return count_;
  }

 private:
  void dfs(int cur, int depth) {
    if (depth == k_) {
      if (rp_.size() == 1) ++count_;
      return;
    }
    const int need = static_cast<int>(rp_.size()) - 1;
    const int remaining = k_ - depth;
    if (remaining < need || ((remaining - need) & 1)) return;
    g_.for_each_neighbor(cur, [&](int v) {
      if (++steps_ > budget_.step_limit)
        throw ResourceError("count_tree_like: step budget " +
                            std::to_string(budget_.step_limit) + " exhausted");
      if (rp_.size() >= 2 && v == rp_[rp_.size() - 2]) {
        on_path_[static_cast<std::size_t>(cur)] = 0;
        rp_.pop_back();
        dfs(v, depth + 1);
        rp_.push_back(cur);
        on_path_[static_cast<std::size_t>(cur)] = 1;
      } else if (!on_path_[static_cast<std::size_t>(v)]) {
        on_path_[static_cast<std::size_t>(v)] = 1;
        rp_.push_back(v);
        dfs(v, depth + 1);
        rp_.pop_back();
        on_path_[static_cast<std::size_t>(v)] = 0;
      }
    });
  }

  const Graph& g_;
  int k_;
  const WalkBudget& budget_;
  std::vector<char> on_path_;
  std::vector<int> rp_;
  std::uint64_t count_ = 0;
  std::uint64_t steps_ = 0;
};

}  // namespace

mpz_class count_tree_like(const Graph& g, int k, const WalkBudget& budget) {
  if (k < 0) throw DomainError("count_tree_like: negative length");
  if (k == 0) return g.order();
  if (k % 2 == 1) return 0;  // tree-like closed walks have even length
  const double coarse = static_cast<double>(g.order()) *
                        std::pow(static_cast<double>(g.max_degree()), k);
  if (coarse > budget.coarse_limit)
    throw ResourceError("count_tree_like: coarse bound n*maxdeg^k = " +
                        std::to_string(coarse) + " exceeds limit");
  TreeLikeCounter counter(g, k, budget);
  mpz_class total = 0;
  for (int s = 0; s < g.order(); ++s) total += counter.count_from(s);
  return total;
}

std::vector<mpz_class> power_sums(const MatchingPolynomial& poly, int k_max) {
  if (k_max < 1) throw DomainError("power_sums: need k_max >= 1");
  // Signed elementary symmetric functions of the roots.
  const auto e = [&poly](int j) -> mpz_class {
    if (j % 2) return 0;
    const int i = j / 2;
    mpz_class v = poly.count(i);
    if (i & 1) v = -v;
    return v;
  };
  std::vector<mpz_class> p(static_cast<std::size_t>(k_max) + 1);
  for (int k = 1; k <= k_max; ++k) {
    // p_k = sum_{i=1}^{k-1} (-1)^{i+1} e_i p_{k-i} - (-1)^k k e_k
    mpz_class acc = 0;
    for (int i = 2; i < k; i += 2)  // odd e_i vanish
      acc -= e(i) * p[static_cast<std::size_t>(k - i)];
    mpz_class tail = e(k) * k;
    if (k % 2 == 0) acc -= tail;
    else acc += tail;
    p[static_cast<std::size_t>(k)] = acc;
  }
  return std::vector<mpz_class>(p.begin() + 1, p.end());
}

}  // namespace met
