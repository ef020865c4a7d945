#pragma once

#include "asmtree/exact.hpp"
#include "asmtree/graph.hpp"

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace asmtree {

// Size caps for the counting engines. The subset recursion visits up to 2^n
// subsets; the explicit enumerators materialize every tree.
struct Limits {
  int max_subset_bits = 24;
  int max_explicit_vertices = 9;

  // Defaults, with ASMTREE_MAX_SUBSET_BITS overriding max_subset_bits.
  static Limits from_environment();
};

// Rooted tree whose nodes are labeled by vertex subsets.
struct AssemblyTree {
  VertexSet label = 0;
  std::vector<AssemblyTree> children;

  bool is_leaf() const { return children.empty(); }
};

// Order-independent serialization of an AssemblyTree. A leaf is its vertex
// id in decimal; an internal node is "(" child codes joined by " " ")", with
// children ordered by (min vertex, label bitset, code). Two trees have equal
// codes iff some label-preserving isomorphism maps one onto the other.
struct CanonicalCode {
  std::string text;

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_code(const AssemblyTree& tree);

// Inverse of canonical_code. Labels are rebuilt from the leaves. Throws
// InputError on malformed text or repeated vertices.
AssemblyTree parse_canonical_code(const std::string& text);

enum class GluingRule { edge, connected };

// Checks the defining properties of an assembly tree of g: singleton leaves
// covering every vertex once, root label V, every internal label the
// disjoint union of its >= 2 children. Under the edge rule each internal node
// has exactly two children joined by an edge of g; under the connected rule
// every label induces a connected subgraph.
bool is_assembly_tree(const Graph& g, const AssemblyTree& tree, GluingRule rule);

// Number of edge-rule assembly trees, by memoized recursion over vertex
// subsets. Throws RefusedError if g is empty, disconnected, or larger than
// limits.max_subset_bits.
BigInt count_edge_rule(const Graph& g, const Limits& limits = Limits::from_environment());

// All distinct edge-rule trees, built top-down over connected bipartitions.
std::set<CanonicalCode> enumerate_edge_rule(const Graph& g, const Limits& limits = Limits::from_environment());

struct GluingSequenceTrees {
  std::set<CanonicalCode> trees;
  BigInt sequences;       // gluing sequences over all spanning trees
  BigInt spanning_trees;  // sequences / (n-1)!
};

// All trees induced bottom-up by gluing sequences. Every ordering of every
// spanning tree is a sequence of edges each joining two current components,
// and vice versa, so the search walks those edge sequences, merging
// sequences that reach the same forest of partial trees.
GluingSequenceTrees trees_from_gluing_sequences(const Graph& g, const Limits& limits = Limits::from_environment());

// Connected-rule trees: each internal node has >= 2 children that partition
// its label into parts inducing connected subgraphs.
BigInt count_connected_rule(const Graph& g, const Limits& limits = Limits::from_environment());
std::set<CanonicalCode> enumerate_connected_rule(const Graph& g, const Limits& limits = Limits::from_environment());

// Closed-form counts for star, star2, path, cycle and complete graphs.
// Throws InputError for other families or out-of-range n.
BigInt closed_form(Family family, int n);

}  // namespace asmtree
