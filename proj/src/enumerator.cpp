#include "asmtree/enumerator.hpp"

#include "asmtree/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <tuple>
#include <unordered_map>

namespace asmtree {

Limits Limits::from_environment() {
  Limits limits;
  if (const char* env = std::getenv("ASMTREE_MAX_SUBSET_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 62) {
      throw InputError("ASMTREE_MAX_SUBSET_BITS must be an integer in [1, 62]");
    }
    limits.max_subset_bits = static_cast<int>(v);
  }
  return limits;
}

namespace {

// A subtree during construction: its label and canonical code.
struct Node {
  VertexSet label;
  std::string code;
};

bool node_less(const Node& a, const Node& b) {
  return std::forward_as_tuple(lowest_vertex(a.label), a.label, a.code) <
         std::forward_as_tuple(lowest_vertex(b.label), b.label, b.code);
}

Node leaf_node(int v) { return {singleton(v), std::to_string(v)}; }

Node join_nodes(std::vector<Node> children) {
  std::sort(children.begin(), children.end(), node_less);
  Node out{0, "("};
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i > 0) out.code += ' ';
    out.code += children[i].code;
    out.label |= children[i].label;
  }
  out.code += ')';
  return out;
}

Node join_pair(const Node& a, const Node& b) {
  const bool a_first = node_less(a, b);
  const Node& x = a_first ? a : b;
  const Node& y = a_first ? b : a;
  return {a.label | b.label, "(" + x.code + " " + y.code + ")"};
}

void require_countable(const Graph& g, int cap, const char* what) {
  if (g.order() == 0) throw RefusedError(std::string(what) + ": the empty graph has no assembly trees");
  if (g.order() > cap) {
    throw RefusedError(std::string(what) + ": " + std::to_string(g.order()) + " vertices exceeds the cap of " +
                       std::to_string(cap));
  }
  if (!g.is_connected()) throw RefusedError(std::string(what) + ": graph is disconnected");
}

// Nonempty proper submasks of u.
template <typename Fn>
void for_each_proper_submask(VertexSet u, Fn&& fn) {
  for (VertexSet s = (u - 1) & u; s != 0; s = (s - 1) & u) fn(s);
}

class EdgeRuleCounter {
 public:
  explicit EdgeRuleCounter(const Graph& g) : g_(g) {}

  BigInt count(VertexSet u) {
    if (popcount(u) == 1) return 1;
    if (!is_connected_subset(g_, u)) return 0;
    if (auto it = memo_.find(u); it != memo_.end()) return it->second;
    BigInt ordered = 0;
    for_each_proper_submask(u, [&](VertexSet s) {
      BigInt left = count(s);
      if (left == 0) return;
      ordered += left * count(u & ~s);
    });
    // Every unordered split is seen twice, once per orientation.
    if (!mpz_even_p(ordered.get_mpz_t())) {
      throw std::logic_error("edge-rule recursion produced an odd ordered sum");
    }
    BigInt result = ordered / 2;
    memo_.emplace(u, result);
    return result;
  }

 private:
  const Graph& g_;
  std::unordered_map<VertexSet, BigInt> memo_;
};

class EdgeRuleEnumerator {
 public:
  explicit EdgeRuleEnumerator(const Graph& g) : g_(g) {}

  const std::vector<Node>& trees(VertexSet u) {
    if (auto it = memo_.find(u); it != memo_.end()) return it->second;
    std::vector<Node> out;
    if (popcount(u) == 1) {
      out.push_back(leaf_node(lowest_vertex(u)));
    } else {
      const VertexSet low = u & (~u + 1);
      for_each_proper_submask(u, [&](VertexSet s) {
        if ((s & low) == 0) return;  // each unordered split once
        const VertexSet rest = u & ~s;
        if (!is_connected_subset(g_, s) || !is_connected_subset(g_, rest)) return;
        const auto& left = trees(s);
        const auto& right = trees(rest);
        for (const auto& a : left) {
          for (const auto& b : right) out.push_back(join_pair(a, b));
        }
      });
    }
    return memo_.emplace(u, std::move(out)).first->second;
  }

 private:
  const Graph& g_;
  std::unordered_map<VertexSet, std::vector<Node>> memo_;
};

// Calls fn(blocks) for every partition of `u` into connected blocks, with
// blocks listed in order of their lowest vertex.
template <typename Fn>
void for_each_connected_partition(const Graph& g, VertexSet u, std::vector<VertexSet>& blocks, Fn&& fn) {
  if (u == 0) {
    fn(blocks);
    return;
  }
  const VertexSet low = u & (~u + 1);
  const VertexSet rest = u & ~low;
  // Blocks containing `low`: low plus any subset of the rest.
  VertexSet extra = rest;
  while (true) {
    const VertexSet block = low | extra;
    if (is_connected_subset(g, block)) {
      blocks.push_back(block);
      for_each_connected_partition(g, u & ~block, blocks, fn);
      blocks.pop_back();
    }
    if (extra == 0) break;
    extra = (extra - 1) & rest;
  }
}

class ConnectedRuleCounter {
 public:
  explicit ConnectedRuleCounter(const Graph& g) : g_(g) {}

  // Trees rooted at a connected set u.
  BigInt trees(VertexSet u) {
    if (popcount(u) == 1) return 1;
    if (auto it = tree_memo_.find(u); it != tree_memo_.end()) return it->second;
    // First child holds the lowest vertex and must be a proper subset.
    const VertexSet low = u & (~u + 1);
    BigInt total = 0;
    for_each_proper_submask(u, [&](VertexSet s) {
      if ((s & low) == 0 || !is_connected_subset(g_, s)) return;
      total += trees(s) * forests(u & ~s);
    });
    tree_memo_.emplace(u, total);
    return total;
  }

 private:
  // Sum over partitions of r into connected blocks of the product of the
  // blocks' tree counts; the single-block partition is included.
  BigInt forests(VertexSet r) {
    if (r == 0) return 1;
    if (auto it = forest_memo_.find(r); it != forest_memo_.end()) return it->second;
    const VertexSet low = r & (~r + 1);
    BigInt total = 0;
    const VertexSet rest = r & ~low;
    VertexSet extra = rest;
    while (true) {
      const VertexSet block = low | extra;
      if (is_connected_subset(g_, block)) total += trees(block) * forests(r & ~block);
      if (extra == 0) break;
      extra = (extra - 1) & rest;
    }
    forest_memo_.emplace(r, total);
    return total;
  }

  const Graph& g_;
  std::unordered_map<VertexSet, BigInt> tree_memo_;
  std::unordered_map<VertexSet, BigInt> forest_memo_;
};

class ConnectedRuleEnumerator {
 public:
  explicit ConnectedRuleEnumerator(const Graph& g) : g_(g) {}

  const std::vector<Node>& trees(VertexSet u) {
    if (auto it = memo_.find(u); it != memo_.end()) return it->second;
    std::vector<Node> out;
    if (popcount(u) == 1) {
      out.push_back(leaf_node(lowest_vertex(u)));
    } else {
      std::vector<VertexSet> blocks;
      for_each_connected_partition(g_, u, blocks, [&](const std::vector<VertexSet>& parts) {
        if (parts.size() < 2) return;
        std::vector<const std::vector<Node>*> choices;
        for (VertexSet p : parts) choices.push_back(&trees(p));
        std::vector<std::size_t> pick(parts.size(), 0);
        // Cartesian product of the children's tree lists.
        while (true) {
          std::vector<Node> children;
          children.reserve(parts.size());
          for (std::size_t i = 0; i < parts.size(); ++i) children.push_back((*choices[i])[pick[i]]);
          out.push_back(join_nodes(std::move(children)));
          std::size_t i = 0;
          while (i < pick.size() && ++pick[i] == choices[i]->size()) pick[i++] = 0;
          if (i == pick.size()) break;
        }
      });
    }
    return memo_.emplace(u, std::move(out)).first->second;
  }

 private:
  const Graph& g_;
  std::unordered_map<VertexSet, std::vector<Node>> memo_;
};

struct Forest {
  std::vector<Node> parts;  // ordered by lowest vertex
  BigInt sequences;
};

std::string forest_key(const std::vector<Node>& parts) {
  std::string key;
  for (const auto& p : parts) {
    key += p.code;
    key += '|';
  }
  return key;
}

// Parser for canonical codes.
class CodeParser {
 public:
  explicit CodeParser(const std::string& text) : s_(text) {}

  AssemblyTree parse() {
    AssemblyTree t = node();
    if (pos_ != s_.size()) fail("trailing characters");
    return t;
  }

 private:
  AssemblyTree node() {
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_[pos_] == '(') {
      ++pos_;
      AssemblyTree t;
      t.children.push_back(node());
      while (pos_ < s_.size() && s_[pos_] == ' ') {
        ++pos_;
        t.children.push_back(node());
      }
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      for (const auto& c : t.children) {
        if ((t.label & c.label) != 0) fail("vertex repeated");
        t.label |= c.label;
      }
      return t;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 2) fail("expected a vertex id");
    int v = std::stoi(s_.substr(start, pos_ - start));
    if (v >= kMaxGraphVertices) fail("vertex id out of range");
    return AssemblyTree{singleton(v), {}};
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("bad canonical code at offset " + std::to_string(pos_) + ": " + why);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Node to_node(const AssemblyTree& t) {
  if (t.is_leaf()) return leaf_node(lowest_vertex(t.label));
  std::vector<Node> children;
  children.reserve(t.children.size());
  for (const auto& c : t.children) children.push_back(to_node(c));
  return join_nodes(std::move(children));
}

bool check_node(const Graph& g, const AssemblyTree& t, GluingRule rule) {
  if (t.is_leaf()) return popcount(t.label) == 1;
  if (t.children.size() < 2) return false;
  if (rule == GluingRule::edge && t.children.size() != 2) return false;
  VertexSet seen = 0;
  for (const auto& c : t.children) {
    if ((seen & c.label) != 0 || c.label == 0) return false;
    seen |= c.label;
    if (!check_node(g, c, rule)) return false;
  }
  if (seen != t.label) return false;
  if (rule == GluingRule::connected) return is_connected_subset(g, t.label);
  // Edge rule: some edge of g crosses between the two children.
  const VertexSet left = t.children[0].label;
  const VertexSet right = t.children[1].label;
  for (VertexSet l = left; l != 0; l &= l - 1) {
    if ((g.neighbors(lowest_vertex(l)) & right) != 0) return true;
  }
  return false;
}

}  // namespace

CanonicalCode canonical_code(const AssemblyTree& tree) { return {to_node(tree).code}; }

AssemblyTree parse_canonical_code(const std::string& text) { return CodeParser(text).parse(); }

bool is_assembly_tree(const Graph& g, const AssemblyTree& tree, GluingRule rule) {
  if (tree.label != g.vertices() || g.order() == 0) return false;
  if (rule == GluingRule::connected && !is_connected_subset(g, tree.label)) return false;
  return check_node(g, tree, rule);
}

BigInt count_edge_rule(const Graph& g, const Limits& limits) {
  require_countable(g, limits.max_subset_bits, "count_edge_rule");
  EdgeRuleCounter counter(g);
  return counter.count(g.vertices());
}

std::set<CanonicalCode> enumerate_edge_rule(const Graph& g, const Limits& limits) {
  require_countable(g, limits.max_explicit_vertices, "enumerate_edge_rule");
  EdgeRuleEnumerator e(g);
  std::set<CanonicalCode> out;
  for (const auto& node : e.trees(g.vertices())) out.insert(CanonicalCode{node.code});
  return out;
}

GluingSequenceTrees trees_from_gluing_sequences(const Graph& g, const Limits& limits) {
  require_countable(g, limits.max_explicit_vertices, "trees_from_gluing_sequences");
  const auto edges = g.edges();
  std::map<std::string, Forest> level;
  {
    Forest start;
    for (int v = 0; v < g.order(); ++v) start.parts.push_back(leaf_node(v));
    start.sequences = 1;
    level.emplace(forest_key(start.parts), std::move(start));
  }
  for (int step = 1; step < g.order(); ++step) {
    std::map<std::string, Forest> next;
    for (const auto& [key, forest] : level) {
      for (auto [u, v] : edges) {
        std::size_t iu = 0;
        std::size_t iv = 0;
        for (std::size_t i = 0; i < forest.parts.size(); ++i) {
          if (forest.parts[i].label & singleton(u)) iu = i;
          if (forest.parts[i].label & singleton(v)) iv = i;
        }
        if (iu == iv) continue;  // edge would close a cycle
        std::vector<Node> parts;
        parts.reserve(forest.parts.size() - 1);
        Node merged = join_pair(forest.parts[iu], forest.parts[iv]);
        for (std::size_t i = 0; i < forest.parts.size(); ++i) {
          if (i != iu && i != iv) parts.push_back(forest.parts[i]);
        }
        parts.insert(std::upper_bound(parts.begin(), parts.end(), merged, node_less), std::move(merged));
        std::string k = forest_key(parts);
        auto it = next.find(k);
        if (it == next.end()) {
          next.emplace(std::move(k), Forest{std::move(parts), forest.sequences});
        } else {
          it->second.sequences += forest.sequences;
        }
      }
    }
    level = std::move(next);
  }
  GluingSequenceTrees out;
  out.sequences = 0;
  for (const auto& [key, forest] : level) {
    out.trees.insert(CanonicalCode{forest.parts.front().code});
    out.sequences += forest.sequences;
  }
  out.spanning_trees = out.sequences / factorial(static_cast<unsigned long>(g.order() - 1));
  return out;
}

BigInt count_connected_rule(const Graph& g, const Limits& limits) {
  require_countable(g, limits.max_explicit_vertices, "count_connected_rule");
  ConnectedRuleCounter counter(g);
  return counter.trees(g.vertices());
}

std::set<CanonicalCode> enumerate_connected_rule(const Graph& g, const Limits& limits) {
  require_countable(g, limits.max_explicit_vertices, "enumerate_connected_rule");
  ConnectedRuleEnumerator e(g);
  std::set<CanonicalCode> out;
  for (const auto& node : e.trees(g.vertices())) out.insert(CanonicalCode{node.code});
  return out;
}

BigInt closed_form(Family family, int n) {
  const auto min_n = family == Family::cycle ? 3 : 1;
  if (n < min_n) throw InputError(family_name(family) + " closed form needs n >= " + std::to_string(min_n));
  const auto un = static_cast<unsigned long>(n);
  switch (family) {
    case Family::star:
      return factorial(un);
    case Family::star2: {
      BigInt total = 0;
      for (unsigned long k = 0; k <= un; ++k) {
        BigInt term = binomial(un, k) * factorial(2 * un - k);
        mpz_fdiv_q_2exp(term.get_mpz_t(), term.get_mpz_t(), un - k);
        total += term;
      }
      return total;
    }
    case Family::path:
      return binomial(2 * un - 2, un - 1) / n;
    case Family::cycle:
      return binomial(2 * un - 2, un - 1) / 2;
    case Family::complete: {
      BigInt v = factorial(2 * un - 2) / factorial(un - 1);
      mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), un - 1);
      return v;
    }
    default:
      throw InputError("no closed form for family " + family_name(family));
  }
}

}  // namespace asmtree
