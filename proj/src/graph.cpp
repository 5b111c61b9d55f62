#include "met/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "met/errors.hpp"

namespace met {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 0) throw DomainError("graph order must be nonnegative");
  adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

void Graph::add_edge_unchecked(int u, int v) {
  adj_[static_cast<std::size_t>(u) * words_ + v / 64] |= 1ULL << (v % 64);
  adj_[static_cast<std::size_t>(v) * words_ + u / 64] |= 1ULL << (u % 64);
  edges_.emplace_back(u, v);
}

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  Graph g(n);
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n)
      throw DomainError("edge endpoint out of range: {" + std::to_string(u) +
                        "," + std::to_string(v) + "} with n=" +
                        std::to_string(n));
    if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1])
      throw DomainError("duplicate edge {" + std::to_string(edges[i].first) +
                        "," + std::to_string(edges[i].second) + "}");
  for (const auto& [u, v] : edges) g.add_edge_unchecked(u, v);
  return g;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  return (adj_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1;
}

int Graph::degree(int v) const {
  const std::uint64_t* r = adj_.data() + static_cast<std::size_t>(v) * words_;
  int d = 0;
  for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

Graph gen_gnp(int n, double p, const SeedSpec& seed) {
  if (n < 0) throw DomainError("gen_gnp: n must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("gen_gnp: p must lie in [0,1]");
  RandomStream rng(seed);
  Graph g(n);
  // One variate per vertex pair in lexicographic order, consumed even when
  // the edge is rejected, so the graph is a pure function of (n, p, seed).
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_unit() < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_path(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_cycle(int n) {
  if (n < 3) throw DomainError("gen_cycle: need n >= 3");
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, n - 1);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_star(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_random_tree(int n, const SeedSpec& seed) {
  if (n < 1) throw DomainError("gen_random_tree: need n >= 1");
  if (n == 1) return Graph(1);
  RandomStream rng(seed);
  // Uniform labeled tree via a random sequence decoded with the usual
  // linear-time pointer scan.
  std::vector<int> seq(static_cast<std::size_t>(n) - 2);
  for (int& x : seq) x = static_cast<int>(rng.next_below(n));
  std::vector<int> deg(n, 1);
  for (int x : seq) ++deg[x];
  std::vector<Edge> edges;
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : seq) {
    edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(std::min(leaf, n - 1), std::max(leaf, n - 1));
  return Graph::from_edges(n, std::move(edges));
}

Graph delete_edge(const Graph& g, int u, int v) {
  if (u > v) std::swap(u, v);
  if (!g.has_edge(u, v))
    throw NotFoundError("delete_edge: no edge {" + std::to_string(u) + "," +
                        std::to_string(v) + "}");
  std::vector<Edge> edges;
  edges.reserve(g.edges().size() - 1);
  for (const auto& e : g.edges())
    if (e != Edge{u, v}) edges.push_back(e);
  return Graph::from_edges(g.order(), std::move(edges));
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  std::vector<Edge> edges = g.edges();
  const int off = g.order();
  for (const auto& [u, v] : h.edges()) edges.emplace_back(u + off, v + off);
  return Graph::from_edges(g.order() + h.order(), std::move(edges));
}

std::vector<Component> components(const Graph& g) {
  const int n = g.order();
  std::vector<int> comp(n, -1);
  std::vector<Component> out;
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    const int id = static_cast<int>(out.size());
    queue.assign(1, s);
    comp[s] = id;
    std::vector<int> verts{s};
    while (!queue.empty()) {
      const int u = queue.back();
      queue.pop_back();
      g.for_each_neighbor(u, [&](int v) {
        if (comp[v] == -1) {
          comp[v] = id;
          verts.push_back(v);
          queue.push_back(v);
        }
      });
    }
    std::sort(verts.begin(), verts.end());
    out.push_back({std::move(verts), Graph()});
  }
  // Induce local-label subgraphs.
  std::vector<int> local(n);
  for (const auto& c : out)
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
      local[c.vertices[i]] = static_cast<int>(i);
  std::vector<std::vector<Edge>> comp_edges(out.size());
  for (const auto& [u, v] : g.edges())
    comp_edges[comp[u]].emplace_back(local[u], local[v]);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].graph = Graph::from_edges(static_cast<int>(out[i].vertices.size()),
                                     std::move(comp_edges[i]));
  return out;
}

bool is_acyclic(const Graph& g) {
  // A graph is a forest iff every component has |E| = |V| - 1; equivalently
  // |E| = |V| - #components overall.
  long long m = g.size();
  long long n = g.order();
  return m == n - static_cast<long long>(components(g).size());
}

bool is_connected(const Graph& g) {
  return g.order() <= 1 || components(g).size() == 1;
}

namespace {

// Strict "u v" line parse; rejects trailing garbage.
bool parse_ints(const std::string& line, std::vector<long long>& out) {
  out.clear();
  std::istringstream iss(line);
  long long x;
  while (iss >> x) out.push_back(x);
  if (!iss.eof()) return false;
  return true;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::vector<long long> nums;
  int lineno = 0;

  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError(1, "missing header");
  if (!parse_ints(line, nums) || nums.size() != 2)
    throw ParseError(lineno, "expected header \"n m\"");
  const long long n = nums[0], m = nums[1];
  if (n < 0 || m < 0)
    throw ParseError(lineno, "header values must be nonnegative");
  if (n > 1'000'000 || m > 100'000'000)
    throw ParseError(lineno, "header values implausibly large");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line())
      throw ParseError(lineno + 1, "expected " + std::to_string(m) +
                                       " edges, got " + std::to_string(i));
    if (!parse_ints(line, nums) || nums.size() != 2)
      throw ParseError(lineno, "expected edge line \"u v\"");
    const long long u = nums[0], v = nums[1];
    if (u < 0 || v >= n)
      throw ParseError(lineno, "edge endpoint out of range");
    if (u >= v)
      throw ParseError(lineno, "edge endpoints must satisfy u < v");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (next_content_line())
    throw ParseError(lineno, "unexpected content after edge list");

  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1])
      throw ParseError(lineno, "duplicate edge {" +
                                   std::to_string(edges[i].first) + "," +
                                   std::to_string(edges[i].second) + "}");
  return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open " + path);
  return read_edge_list(in);
}

}  // namespace met
