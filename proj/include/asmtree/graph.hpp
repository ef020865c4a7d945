#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace asmtree {

// Vertex subsets are bitsets over one machine word, so a Graph holds at most
// 64 vertices. Counting operations impose much smaller caps.
using VertexSet = std::uint64_t;

inline constexpr int kMaxGraphVertices = 64;

inline int popcount(VertexSet s) { return std::popcount(s); }
inline int lowest_vertex(VertexSet s) { return std::countr_zero(s); }
inline VertexSet singleton(int v) { return VertexSet{1} << v; }
inline VertexSet full_set(int n) { return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1; }

using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  int order() const { return static_cast<int>(adj_.size()); }
  VertexSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  VertexSet vertices() const { return full_set(order()); }
  bool adjacent(int u, int v) const { return (neighbors(u) >> v) & 1U; }
  int degree(int v) const { return popcount(neighbors(v)); }

  std::size_t edge_count() const;
  // Edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;
  std::vector<int> degree_sequence() const;  // sorted descending

  bool is_connected() const;

  // Graph whose vertex perm[v] corresponds to vertex v of this graph.
  Graph relabeled(const std::vector<int>& perm) const;

  friend bool operator==(const Graph&, const Graph&) = default;

  friend Graph from_edge_list(int n, const std::vector<Edge>& edges);

 private:
  std::vector<VertexSet> adj_;
};

// Throws InputError for out-of-range endpoints, loops, n < 0 or n > 64.
// Duplicate edges are collapsed.
Graph from_edge_list(int n, const std::vector<Edge>& edges);

// Template for an (H, phi)-graph: each vertex i of `base` is blown up into
// mult[i] vertices forming a clique (phi[i] = 1) or an independent set
// (phi[i] = 0); every edge of `base` becomes a complete join.
struct HSpec {
  Graph base;
  std::vector<int> phi;
  std::vector<int> mult;

  int template_order() const { return base.order(); }
  int total_vertices() const;
  // Throws InputError unless phi and mult have one entry per base vertex,
  // phi entries are 0/1 and multiplicities are non-negative.
  void validate() const;
};

// Vertex (i, j) (block i, offset j) gets linear index
// mult[0] + ... + mult[i-1] + j.
Graph build_h_graph(const HSpec& spec);

int h_vertex_index(const HSpec& spec, int block, int offset);

enum class Family { path, cycle, star, star2, complete, complete_multipartite, caterpillar };

Family parse_family(const std::string& name);
std::string family_name(Family f);

// path [n], cycle [n >= 3], star [n] (K_{1,n}), star2 [n] (n arms of length
// 2), complete [n], complete_multipartite [n1, ..., nN], caterpillar [n]
// (spine P_n, one pendant leaf per spine vertex, 2n vertices).
//
// star2 numbering: 0 is the center, 1..n the middle vertices, n+1..2n the
// tips with tip n+i attached to middle i. caterpillar numbering: spine
// 0..n-1, leaf n+i attached to spine vertex i.
Graph family(Family f, const std::vector<int>& params);
Graph family(const std::string& name, const std::vector<int>& params);

// True iff the subgraph induced by `subset` is connected. Empty set is not
// connected; a singleton is.
bool is_connected_subset(const Graph& g, VertexSet subset);

}  // namespace asmtree
