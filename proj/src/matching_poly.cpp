#include "met/matching_poly.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "met/errors.hpp"

namespace met {

namespace {

const mpz_class kZero{0};

void trim_trailing_zeros(std::vector<mpz_class>& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

std::vector<mpz_class> convolve(const std::vector<mpz_class>& a,
                                const std::vector<mpz_class>& b) {
  if (a.size() == 1 && a[0] == 1) return b;
  if (b.size() == 1 && b[0] == 1) return a;
  std::vector<mpz_class> out(a.size() + b.size() - 1, kZero);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

MatchingPolynomial::MatchingPolynomial(int n, std::vector<mpz_class> counts)
    : n_(n), counts_(std::move(counts)) {
  if (n_ < 0) throw DomainError("matching polynomial: negative order");
  if (counts_.empty() || counts_[0] != 1)
    throw DomainError("matching polynomial: m_0 must be 1");
  trim_trailing_zeros(counts_);
  if (static_cast<int>(counts_.size()) > n_ / 2 + 1)
    throw DomainError("matching polynomial: more than floor(n/2) counts");
  for (const auto& c : counts_)
    if (c < 0) throw DomainError("matching polynomial: negative count");
}

const mpz_class& MatchingPolynomial::count(int k) const {
  if (k < 0) throw DomainError("matching polynomial: negative index");
  if (k >= static_cast<int>(counts_.size())) return kZero;
  return counts_[static_cast<std::size_t>(k)];
}

double MatchingPolynomial::evaluate(double x) const {
  // m(G,x) = x^(n-2t) * sum_{k<=t} (-1)^k m_k (x^2)^(t-k), t = max size.
  const int t = max_matching_size();
  const double y = x * x;
  double acc = 0.0;
  for (int k = 0; k <= t; ++k) {
    const double c = counts_[static_cast<std::size_t>(k)].get_d();
    acc = acc * y + ((k & 1) ? -c : c);
  }
  return acc * std::pow(x, n_ - 2 * t);
}

std::vector<mpz_class> MatchingPolynomial::derivative() const {
  std::vector<mpz_class> c(counts_.size());
  for (std::size_t k = 0; k < counts_.size(); ++k)
    c[k] = counts_[k] * (n_ - 2 * static_cast<int>(k));
  trim_trailing_zeros(c);
  return c;
}

double MatchingPolynomial::evaluate_derivative(double x) const {
  const int t = max_matching_size();
  double acc = 0.0;
  for (int k = 0; k <= t; ++k) {
    const int e = n_ - 2 * k;
    if (e == 0) continue;
    const double c = counts_[static_cast<std::size_t>(k)].get_d() * e;
    acc += ((k & 1) ? -c : c) * std::pow(x, e - 1);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Subset DP engine.
//
// State: subset S of vertices (u64 bitset). m_k(S) satisfies, with u the
// lowest vertex of S,
//   m_k(S) = m_k(S \ {u}) + sum_{v in N(u) cap S} m_{k-1}(S \ {u,v}).
// Top-down memoization touches only reachable states ({i..n-1} minus a few
// vertices), far fewer than 2^n in practice. Coefficients use the narrowest
// safe integer type and promote on detected overflow.
// ---------------------------------------------------------------------------

namespace {

struct CoefOverflow {};

template <class C>
struct CoefOps {
  static void add(C& a, const C& b) {
    if (__builtin_add_overflow(a, b, &a)) throw CoefOverflow{};
  }
  static mpz_class to_mpz(const C& v) {
    mpz_class out(static_cast<std::uint64_t>(v >> 64));
    out <<= 64;
    out += static_cast<std::uint64_t>(v);
    return out;
  }
};

template <>
struct CoefOps<std::uint64_t> {
  static void add(std::uint64_t& a, std::uint64_t b) {
    if (__builtin_add_overflow(a, b, &a)) throw CoefOverflow{};
  }
  static mpz_class to_mpz(std::uint64_t v) { return mpz_class(v); }
};

template <>
struct CoefOps<mpz_class> {
  static void add(mpz_class& a, const mpz_class& b) { a += b; }
  static mpz_class to_mpz(const mpz_class& v) { return v; }
};

template <class C>
class SubsetDp {
 public:
  SubsetDp(const std::vector<std::uint64_t>& adj, int n) : adj_(adj), n_(n) {
    keys_.assign(capacity_, 0);
    offs_.assign(capacity_, 0);
    arena_.push_back(C(1));  // offset 0: trivial polynomial of a tiny subset
  }

  std::vector<mpz_class> run() {
    const std::uint64_t full =
        (n_ >= 64) ? ~0ULL : ((1ULL << n_) - 1);
    const std::uint32_t off = n_ >= 2 ? solve(full) : 0;
    const int len = n_ >= 2 ? n_ / 2 + 1 : 1;
    std::vector<mpz_class> out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i)
      out[static_cast<std::size_t>(i)] = CoefOps<C>::to_mpz(arena_[off + i]);
    trim_trailing_zeros(out);
    return out;
  }

 private:
  std::uint32_t solve(std::uint64_t s) {
    const int pc = std::popcount(s);
    if (pc <= 1) return 0;
    if (auto hit = lookup(s)) return *hit;

    const int u = std::countr_zero(s);
    const std::uint64_t s1 = s & (s - 1);
    const int len = pc / 2 + 1;
    std::array<C, 33> buf;
    {
      const std::uint32_t o1 = solve(s1);
      const int len1 = (pc - 1) / 2 + 1;
      for (int i = 0; i < len1; ++i) buf[i] = arena_[o1 + i];
      for (int i = len1; i < len; ++i) buf[i] = C(0);
    }
    std::uint64_t partners = adj_[static_cast<std::size_t>(u)] & s1;
    while (partners) {
      const int v = std::countr_zero(partners);
      partners &= partners - 1;
      const std::uint32_t o2 = solve(s1 & ~(1ULL << v));
      const int len2 = len - 1;
      for (int i = 0; i < len2; ++i)
        CoefOps<C>::add(buf[i + 1], arena_[o2 + i]);
    }
    const auto off = static_cast<std::uint32_t>(arena_.size());
    for (int i = 0; i < len; ++i) arena_.push_back(buf[i]);
    insert(s, off);
    return off;
  }

  std::optional<std::uint32_t> lookup(std::uint64_t key) const {
    std::size_t i = mix64(key) & (capacity_ - 1);
    while (keys_[i] != 0) {
      if (keys_[i] == key) return offs_[i];
      i = (i + 1) & (capacity_ - 1);
    }
    return std::nullopt;
  }

  void insert(std::uint64_t key, std::uint32_t off) {
    if (count_ * 10 >= capacity_ * 7) grow();
    std::size_t i = mix64(key) & (capacity_ - 1);
    while (keys_[i] != 0) i = (i + 1) & (capacity_ - 1);
    keys_[i] = key;
    offs_[i] = off;
    ++count_;
  }

  void grow() {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<std::uint32_t> old_offs = std::move(offs_);
    capacity_ *= 2;
    keys_.assign(capacity_, 0);
    offs_.assign(capacity_, 0);
    for (std::size_t j = 0; j < old_keys.size(); ++j) {
      if (old_keys[j] == 0) continue;
      std::size_t i = mix64(old_keys[j]) & (capacity_ - 1);
      while (keys_[i] != 0) i = (i + 1) & (capacity_ - 1);
      keys_[i] = old_keys[j];
      offs_[i] = old_offs[j];
    }
  }

  const std::vector<std::uint64_t>& adj_;
  int n_;
  std::size_t capacity_ = 1 << 12;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> keys_;  // 0 marks an empty slot; subsets with
                                     // popcount >= 2 are never the zero key
  std::vector<std::uint32_t> offs_;
  std::vector<C> arena_;
};

// BFS relabeling (per component, min-degree start) keeps reachable DP
// subsets clustered near the working prefix, shrinking the memo. Matching
// counts are invariant under relabeling.
std::vector<std::uint64_t> relabeled_adjacency(const Graph& g) {
  const int n = g.order();
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (;;) {
    int start = -1;
    for (int v = 0; v < n; ++v)
      if (!seen[v] && (start == -1 || g.degree(v) < g.degree(start)))
        start = v;
    if (start == -1) break;
    seen[static_cast<std::size_t>(start)] = 1;
    std::size_t head = order.size();
    order.push_back(start);
    while (head < order.size()) {
      const int u = order[head++];
      g.for_each_neighbor(u, [&](int v) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          order.push_back(v);
        }
      });
    }
  }
  std::vector<int> newlab(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    newlab[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.edges()) {
    const int a = newlab[static_cast<std::size_t>(u)];
    const int b = newlab[static_cast<std::size_t>(v)];
    adj[static_cast<std::size_t>(a)] |= 1ULL << b;
    adj[static_cast<std::size_t>(b)] |= 1ULL << a;
  }
  return adj;
}

}  // namespace

MatchingPolynomial counts_subset_dp(const Graph& g, const EngineOptions& opt) {
  const int n = g.order();
  const int cap = std::min(opt.dp_cap, 64);
  if (n > cap)
    throw CapacityError("counts_subset_dp: order " + std::to_string(n) +
                        " exceeds cap " + std::to_string(cap));
  const std::vector<std::uint64_t> adj = relabeled_adjacency(g);
  std::vector<mpz_class> counts;
  // Max coefficient over any vertex subset is at most the telephone number
  // T(n): T(30) < 2^63 and T(50) < 2^127, so the narrow paths are safe in
  // those ranges; overflow detection covers unusual caps anyway.
  try {
    if (n <= 30)
      counts = SubsetDp<std::uint64_t>(adj, n).run();
    else if (n <= 50)
      counts = SubsetDp<unsigned __int128>(adj, n).run();
    else
      counts = SubsetDp<mpz_class>(adj, n).run();
  } catch (const CoefOverflow&) {
    try {
      counts = SubsetDp<unsigned __int128>(adj, n).run();
    } catch (const CoefOverflow&) {
      counts = SubsetDp<mpz_class>(adj, n).run();
    }
  }
  return MatchingPolynomial(n, std::move(counts));
}

// ---------------------------------------------------------------------------
// Edge recursion engine.
//
// m(G) = m(G-e) + (one-edge shift of) m(G-u-v) for a chosen edge e = {u,v},
// with splitting into connected components (matching polynomials multiply
// across components) and memoization of connected states. A state is the
// pair (vertex subset, deleted-edge subset restricted to that component),
// both as bitsets.
// ---------------------------------------------------------------------------

namespace {

struct StateKey {
  std::vector<std::uint64_t> words;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::uint64_t h = 0x9AE16A3B2F90404FULL;
    for (std::uint64_t w : k.words) h = mix64(h ^ w);
    return static_cast<std::size_t>(h);
  }
};

inline bool test_bit(const std::vector<std::uint64_t>& w, int i) {
  return (w[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1;
}
inline void set_bit(std::vector<std::uint64_t>& w, int i) {
  w[static_cast<std::size_t>(i / 64)] |= 1ULL << (i % 64);
}
inline void clear_bit(std::vector<std::uint64_t>& w, int i) {
  w[static_cast<std::size_t>(i / 64)] &= ~(1ULL << (i % 64));
}

class EdgeRecursion {
 public:
  EdgeRecursion(const Graph& g, const EngineOptions& opt) : g_(g), opt_(opt) {
    const int n = g.order();
    nv_words_ = (n + 63) / 64;
    ne_words_ = (g.size() + 63) / 64;
    incident_.resize(static_cast<std::size_t>(n));
    for (int e = 0; e < g.size(); ++e) {
      const auto& [u, v] = g.edges()[static_cast<std::size_t>(e)];
      incident_[static_cast<std::size_t>(u)].push_back({v, e});
      incident_[static_cast<std::size_t>(v)].push_back({u, e});
    }
  }

  std::vector<mpz_class> run() {
    std::vector<std::uint64_t> s(static_cast<std::size_t>(nv_words_), 0);
    for (int v = 0; v < g_.order(); ++v) set_bit(s, v);
    std::vector<std::uint64_t> d(static_cast<std::size_t>(ne_words_), 0);
    auto out = solve_set(s, d);
    trim_trailing_zeros(out);
    return out;
  }

 private:
  void charge_node() {
    if (++nodes_ > opt_.recursion_node_budget)
      throw ResourceError(
          "counts_edge_recursion: node budget " +
          std::to_string(opt_.recursion_node_budget) + " exhausted");
  }

  // Any vertex subset minus deleted edges; splits into components.
  std::vector<mpz_class> solve_set(const std::vector<std::uint64_t>& s,
                                   const std::vector<std::uint64_t>& d) {
    charge_node();
    std::vector<mpz_class> result{1};
    std::vector<char> visited(static_cast<std::size_t>(g_.order()), 0);
    for (int v0 = 0; v0 < g_.order(); ++v0) {
      if (visited[static_cast<std::size_t>(v0)] || !test_bit(s, v0)) continue;
      // BFS this component under (s, d).
      std::vector<int> comp{v0};
      visited[static_cast<std::size_t>(v0)] = 1;
      std::size_t head = 0;
      bool has_edge = false;
      while (head < comp.size()) {
        const int u = comp[head++];
        for (const auto& [w, e] : incident_[static_cast<std::size_t>(u)]) {
          if (!test_bit(s, w) || test_bit(d, e)) continue;
          has_edge = true;
          if (!visited[static_cast<std::size_t>(w)]) {
            visited[static_cast<std::size_t>(w)] = 1;
            comp.push_back(w);
          }
        }
      }
      if (!has_edge) continue;  // isolated vertices contribute the factor 1
      std::vector<std::uint64_t> sc(static_cast<std::size_t>(nv_words_), 0);
      for (int v : comp) set_bit(sc, v);
      // Canonical deleted set: only bits for edges inside this component.
      std::vector<std::uint64_t> dc(static_cast<std::size_t>(ne_words_), 0);
      for (int e = 0; e < g_.size(); ++e) {
        if (!test_bit(d, e)) continue;
        const auto& [a, b] = g_.edges()[static_cast<std::size_t>(e)];
        if (test_bit(sc, a) && test_bit(sc, b)) set_bit(dc, e);
      }
      result = convolve(result, solve_component(sc, dc));
    }
    return result;
  }

  // Connected with at least one live edge; memoized.
  std::vector<mpz_class> solve_component(const std::vector<std::uint64_t>& sc,
                                         const std::vector<std::uint64_t>& dc) {
    charge_node();
    StateKey key;
    key.words.reserve(sc.size() + dc.size());
    key.words.insert(key.words.end(), sc.begin(), sc.end());
    key.words.insert(key.words.end(), dc.begin(), dc.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Prefer an edge at a degree-1 vertex (one branch collapses); otherwise
    // take an edge at a max-degree vertex to shed density fast.
    int pick_u = -1, pick_v = -1, pick_e = -1;
    int best_leaf = -1, best_dense = -1, best_deg = 0;
    for (int u = 0; u < g_.order(); ++u) {
      if (!test_bit(sc, u)) continue;
      int deg = 0;
      for (const auto& [w, e] : incident_[static_cast<std::size_t>(u)])
        if (test_bit(sc, w) && !test_bit(dc, e)) ++deg;
      if (deg == 1 && best_leaf == -1) best_leaf = u;
      if (deg > best_deg) {
        best_deg = deg;
        best_dense = u;
      }
    }
    pick_u = best_leaf != -1 ? best_leaf : best_dense;
    for (const auto& [w, e] : incident_[static_cast<std::size_t>(pick_u)]) {
      if (test_bit(sc, w) && !test_bit(dc, e)) {
        pick_v = w;
        pick_e = e;
        break;
      }
    }

    std::vector<std::uint64_t> d1 = dc;
    set_bit(d1, pick_e);
    std::vector<mpz_class> res = solve_set(sc, d1);

    std::vector<std::uint64_t> s2 = sc;
    clear_bit(s2, pick_u);
    clear_bit(s2, pick_v);
    const std::vector<mpz_class> b = solve_set(s2, dc);
    if (res.size() < b.size() + 1) res.resize(b.size() + 1, kZero);
    for (std::size_t k = 0; k < b.size(); ++k) res[k + 1] += b[k];
    trim_trailing_zeros(res);

    if (memo_.size() >= opt_.recursion_memo_budget)
      throw ResourceError("counts_edge_recursion: memo budget " +
                          std::to_string(opt_.recursion_memo_budget) +
                          " exhausted");
    memo_.emplace(std::move(key), res);
    return res;
  }

  const Graph& g_;
  const EngineOptions& opt_;
  int nv_words_ = 0;
  int ne_words_ = 0;
  std::vector<std::vector<std::pair<int, int>>> incident_;  // (other, edge id)
  std::unordered_map<StateKey, std::vector<mpz_class>, StateKeyHash> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

MatchingPolynomial counts_edge_recursion(const Graph& g,
                                         const EngineOptions& opt) {
  return MatchingPolynomial(g.order(), EdgeRecursion(g, opt).run());
}

// ---------------------------------------------------------------------------
// Forest engine: per rooted tree, A(v) = counts of the subtree at v and
// B(v) = counts with v left uncovered satisfy
//   B(v) = prod_c A(c),
//   A(v) = B(v) + shift of sum_c B(c) prod_{c' != c} A(c'),
// where the shift adds the matched edge (v,c). Components multiply.
// ---------------------------------------------------------------------------

MatchingPolynomial counts_forest(const Graph& g) {
  if (!is_acyclic(g)) throw DomainError("counts_forest: input has a cycle");
  std::vector<mpz_class> result{1};
  for (const auto& comp : components(g)) {
    const Graph& t = comp.graph;
    const int n = t.order();
    if (n <= 1) continue;
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> bfs{0};
    parent[0] = 0;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
      const int u = bfs[head];
      t.for_each_neighbor(u, [&](int v) {
        if (parent[static_cast<std::size_t>(v)] == -1) {
          parent[static_cast<std::size_t>(v)] = u;
          bfs.push_back(v);
        }
      });
    }
    std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(n)),
        b(static_cast<std::size_t>(n));
    for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
      const int v = *it;
      std::vector<mpz_class> b_acc{1};
      std::vector<mpz_class> m_acc;  // empty = zero polynomial
      t.for_each_neighbor(v, [&](int c) {
        if (v != 0 && c == parent[static_cast<std::size_t>(v)]) return;
        auto& ac = a[static_cast<std::size_t>(c)];
        auto& bc = b[static_cast<std::size_t>(c)];
        std::vector<mpz_class> m_next =
            m_acc.empty() ? std::vector<mpz_class>{} : convolve(m_acc, ac);
        const std::vector<mpz_class> cross = convolve(b_acc, bc);
        if (m_next.size() < cross.size()) m_next.resize(cross.size(), kZero);
        for (std::size_t i = 0; i < cross.size(); ++i) m_next[i] += cross[i];
        m_acc = std::move(m_next);
        b_acc = convolve(b_acc, ac);
        ac.clear();
        ac.shrink_to_fit();
        bc.clear();
        bc.shrink_to_fit();
      });
      std::vector<mpz_class> av = b_acc;
      if (!m_acc.empty()) {
        if (av.size() < m_acc.size() + 1) av.resize(m_acc.size() + 1, kZero);
        for (std::size_t i = 0; i < m_acc.size(); ++i) av[i + 1] += m_acc[i];
      }
      a[static_cast<std::size_t>(v)] = std::move(av);
      b[static_cast<std::size_t>(v)] = std::move(b_acc);
    }
    result = convolve(result, a[0]);
  }
  trim_trailing_zeros(result);
  return MatchingPolynomial(g.order(), std::move(result));
}

MatchingPolynomial closed_form(Family family, int n) {
  if (n < 0) throw DomainError("closed_form: negative order");
  std::vector<mpz_class> c;
  switch (family) {
    case Family::Path: {
      c.resize(static_cast<std::size_t>(n / 2) + 1);
      for (int k = 0; k <= n / 2; ++k)
        mpz_bin_uiui(c[static_cast<std::size_t>(k)].get_mpz_t(),
                     static_cast<unsigned long>(n - k),
                     static_cast<unsigned long>(k));
      break;
    }
    case Family::Cycle: {
      if (n < 3) throw DomainError("closed_form: cycles need n >= 3");
      c.resize(static_cast<std::size_t>(n / 2) + 1);
      for (int k = 0; k <= n / 2; ++k) {
        mpz_class t;
        mpz_bin_uiui(t.get_mpz_t(), static_cast<unsigned long>(n - k),
                     static_cast<unsigned long>(k));
        t *= n;
        mpz_divexact_ui(c[static_cast<std::size_t>(k)].get_mpz_t(),
                        t.get_mpz_t(), static_cast<unsigned long>(n - k));
      }
      break;
    }
    case Family::Complete: {
      c.resize(static_cast<std::size_t>(n / 2) + 1);
      c[0] = 1;
      // m_k = m_{k-1} (n-2k+2)(n-2k+1) / (2k)
      for (int k = 1; k <= n / 2; ++k) {
        mpz_class t = c[static_cast<std::size_t>(k - 1)];
        t *= (n - 2 * k + 2);
        t *= (n - 2 * k + 1);
        mpz_divexact_ui(c[static_cast<std::size_t>(k)].get_mpz_t(),
                        t.get_mpz_t(), static_cast<unsigned long>(2 * k));
      }
      break;
    }
  }
  trim_trailing_zeros(c);
  return MatchingPolynomial(n, std::move(c));
}

MatchingPolynomial complete_by_recurrence(int n) {
  if (n < 0) throw DomainError("complete_by_recurrence: negative order");
  // prev2 = K_{i-2}, prev1 = K_{i-1} coefficient rows, untrimmed.
  std::vector<mpz_class> prev2{1}, prev1{1};
  if (n <= 1) return MatchingPolynomial(n, {1});
  for (int i = 2; i <= n; ++i) {
    std::vector<mpz_class> cur(static_cast<std::size_t>(i / 2) + 1, kZero);
    for (int k = 0; k <= i / 2; ++k) {
      if (k < static_cast<int>(prev1.size()))
        cur[static_cast<std::size_t>(k)] += prev1[static_cast<std::size_t>(k)];
      if (k >= 1 && k - 1 < static_cast<int>(prev2.size()))
        cur[static_cast<std::size_t>(k)] +=
            (i - 1) * prev2[static_cast<std::size_t>(k - 1)];
    }
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  trim_trailing_zeros(prev1);
  return MatchingPolynomial(n, std::move(prev1));
}

MatchingPolynomial matching_counts(const Graph& g, Engine engine,
                                   const EngineOptions& opt) {
  switch (engine) {
    case Engine::SubsetDp:
      return counts_subset_dp(g, opt);
    case Engine::EdgeRecursion:
      return counts_edge_recursion(g, opt);
    case Engine::Forest:
      return counts_forest(g);
    case Engine::Auto:
      break;
  }
  if (is_acyclic(g)) return counts_forest(g);
  if (g.order() <= std::min(opt.dp_cap, 64)) return counts_subset_dp(g, opt);
  return counts_edge_recursion(g, opt);
}

}  // namespace met
