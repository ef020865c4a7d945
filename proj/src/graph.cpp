#include "asmtree/graph.hpp"

#include "asmtree/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace asmtree {

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (VertexSet a : adj_) twice += static_cast<std::size_t>(popcount(a));
  return twice / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < order(); ++u) {
    for (int v = u + 1; v < order(); ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> d;
  d.reserve(adj_.size());
  for (int v = 0; v < order(); ++v) d.push_back(degree(v));
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

bool Graph::is_connected() const { return is_connected_subset(*this, vertices()); }

Graph Graph::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != order()) throw InputError("permutation size mismatch");
  std::vector<Edge> e;
  for (auto [u, v] : edges()) e.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return from_edge_list(order(), e);
}

Graph from_edge_list(int n, const std::vector<Edge>& edges) {
  if (n < 0 || n > kMaxGraphVertices) {
    throw InputError("vertex count must be in [0, 64], got " + std::to_string(n));
  }
  Graph g;
  g.adj_.assign(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") has an endpoint outside 0.." +
                       std::to_string(n - 1));
    }
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
    g.adj_[static_cast<std::size_t>(u)] |= singleton(v);
    g.adj_[static_cast<std::size_t>(v)] |= singleton(u);
  }
  return g;
}

int HSpec::total_vertices() const { return std::accumulate(mult.begin(), mult.end(), 0); }

void HSpec::validate() const {
  const auto n = static_cast<std::size_t>(base.order());
  if (phi.size() != n) throw InputError("phi must have one entry per template vertex");
  if (mult.size() != n) throw InputError("mult must have one entry per template vertex");
  for (int p : phi) {
    if (p != 0 && p != 1) throw InputError("phi entries must be 0 or 1");
  }
  long total = 0;
  for (int m : mult) {
    if (m < 0) throw InputError("multiplicities must be non-negative");
    total += m;
  }
  if (total > kMaxGraphVertices) throw InputError("(H,phi)-graph would exceed 64 vertices");
}

int h_vertex_index(const HSpec& spec, int block, int offset) {
  int base = 0;
  for (int i = 0; i < block; ++i) base += spec.mult[static_cast<std::size_t>(i)];
  return base + offset;
}

Graph build_h_graph(const HSpec& spec) {
  spec.validate();
  const int N = spec.template_order();
  std::vector<int> start(static_cast<std::size_t>(N) + 1, 0);
  for (int i = 0; i < N; ++i) start[i + 1] = start[i] + spec.mult[i];
  std::vector<Edge> edges;
  for (int i = 0; i < N; ++i) {
    if (spec.phi[i] == 1) {
      for (int a = start[i]; a < start[i + 1]; ++a) {
        for (int b = a + 1; b < start[i + 1]; ++b) edges.emplace_back(a, b);
      }
    }
    for (int k = i + 1; k < N; ++k) {
      if (!spec.base.adjacent(i, k)) continue;
      for (int a = start[i]; a < start[i + 1]; ++a) {
        for (int b = start[k]; b < start[k + 1]; ++b) edges.emplace_back(a, b);
      }
    }
  }
  return from_edge_list(start[N], edges);
}

Family parse_family(const std::string& name) {
  if (name == "path") return Family::path;
  if (name == "cycle") return Family::cycle;
  if (name == "star") return Family::star;
  if (name == "star2") return Family::star2;
  if (name == "complete") return Family::complete;
  if (name == "complete_multipartite") return Family::complete_multipartite;
  if (name == "caterpillar") return Family::caterpillar;
  throw InputError("unknown graph family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::star: return "star";
    case Family::star2: return "star2";
    case Family::complete: return "complete";
    case Family::complete_multipartite: return "complete_multipartite";
    case Family::caterpillar: return "caterpillar";
  }
  return "?";
}

namespace {

int single_param(Family f, const std::vector<int>& params, int min_value) {
  if (params.size() != 1) throw InputError(family_name(f) + " takes exactly one parameter");
  if (params[0] < min_value) {
    throw InputError(family_name(f) + " requires n >= " + std::to_string(min_value) + ", got " +
                     std::to_string(params[0]));
  }
  return params[0];
}

}  // namespace

Graph family(Family f, const std::vector<int>& params) {
  std::vector<Edge> e;
  switch (f) {
    case Family::path: {
      int n = single_param(f, params, 1);
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      return from_edge_list(n, e);
    }
    case Family::cycle: {
      int n = single_param(f, params, 3);
      for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
      return from_edge_list(n, e);
    }
    case Family::star: {
      int n = single_param(f, params, 1);
      for (int i = 1; i <= n; ++i) e.emplace_back(0, i);
      return from_edge_list(n + 1, e);
    }
    case Family::star2: {
      int n = single_param(f, params, 1);
      for (int i = 1; i <= n; ++i) {
        e.emplace_back(0, i);
        e.emplace_back(i, n + i);
      }
      return from_edge_list(2 * n + 1, e);
    }
    case Family::complete: {
      int n = single_param(f, params, 1);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
      }
      return from_edge_list(n, e);
    }
    case Family::complete_multipartite: {
      if (params.empty()) throw InputError("complete_multipartite needs at least one part size");
      HSpec spec;
      const int N = static_cast<int>(params.size());
      std::vector<Edge> he;
      for (int i = 0; i < N; ++i) {
        for (int k = i + 1; k < N; ++k) he.emplace_back(i, k);
      }
      spec.base = from_edge_list(N, he);
      spec.phi.assign(params.size(), 0);
      spec.mult = params;
      for (int p : params) {
        if (p < 1) throw InputError("complete_multipartite part sizes must be >= 1");
      }
      return build_h_graph(spec);
    }
    case Family::caterpillar: {
      int n = single_param(f, params, 1);
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      for (int i = 0; i < n; ++i) e.emplace_back(i, n + i);
      return from_edge_list(2 * n, e);
    }
  }
  throw InputError("unknown family");
}

Graph family(const std::string& name, const std::vector<int>& params) { return family(parse_family(name), params); }

bool is_connected_subset(const Graph& g, VertexSet subset) {
  if (subset == 0) return false;
  VertexSet seen = singleton(lowest_vertex(subset));
  VertexSet frontier = seen;
  while (frontier != 0) {
    VertexSet next = 0;
    for (VertexSet f = frontier; f != 0; f &= f - 1) next |= g.neighbors(lowest_vertex(f));
    next &= subset & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == subset;
}

}  // namespace asmtree
