#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "met/rng.hpp"

namespace met {

// Undirected edge, stored with first < second.
using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1: bitset adjacency rows plus a
// sorted edge list. No self-loops, no parallel edges. Immutable once built,
// so instances are safe to share across threads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Validates and normalizes the edge list (orders endpoints, sorts,
  // rejects loops / duplicates / out-of-range endpoints).
  static Graph from_edges(int n, std::vector<Edge> edges);

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int u, int v) const;
  int degree(int v) const;
  int max_degree() const;

  int words() const { return words_; }
  std::span<const std::uint64_t> row(int v) const {
    return {adj_.data() + static_cast<std::size_t>(v) * words_,
            static_cast<std::size_t>(words_)};
  }

  template <class F>
  void for_each_neighbor(int v, F&& f) const {
    const std::uint64_t* r = adj_.data() + static_cast<std::size_t>(v) * words_;
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        f(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

 private:
  void add_edge_unchecked(int u, int v);

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> adj_;  // n_ rows of words_ words
  std::vector<Edge> edges_;         // sorted, u < v
};

// A connected component: original vertex ids plus the induced subgraph in
// local labels (vertices[i] is the original id of local vertex i).
struct Component {
  std::vector<int> vertices;
  Graph graph;
};

// Deterministic generators.
Graph gen_gnp(int n, double p, const SeedSpec& seed);
Graph gen_complete(int n);
Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_star(int n);
Graph gen_random_tree(int n, const SeedSpec& seed);

// Copy of g without edge {u,v}; the edge must exist.
Graph delete_edge(const Graph& g, int u, int v);

// New graph with the vertices of h relabeled after those of g.
Graph disjoint_union(const Graph& g, const Graph& h);

std::vector<Component> components(const Graph& g);
bool is_acyclic(const Graph& g);
bool is_connected(const Graph& g);

// Plain text format: header "n m", then one "u v" line per edge with
// 0 <= u < v < n. Parse failures throw ParseError with the line number.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list_file(const std::string& path);

}  // namespace met
