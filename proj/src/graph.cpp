#include "sleepmis/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sleepmis/random.hpp"

namespace sleepmis {

Graph Graph::from_edges(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges) {
  if (n < 1) throw ParamError("graph needs at least one node");
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw ParamError("edge endpoint out of range");
    if (u == v) throw ParamError("self-loop rejected");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (NodeId i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adj_.resize(2 * edges.size());
  std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adj_[cursor[u]++] = v;
    g.adj_[cursor[v]++] = u;
  }
  // per-bucket inputs arrive sorted because edges are sorted, except the
  // second endpoints; sort each list to restore the invariant
  for (NodeId v = 0; v < n; ++v) {
    std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
    g.max_degree_ = std::max(g.max_degree_, g.degree(v));
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

// G(n,p) by geometric skips over the row-major upper triangle, so the edge
// sequence is a fixed function of the rng stream.
void gen_gnp(NodeId n, double p, Rng& rng, std::vector<std::pair<NodeId, NodeId>>& out) {
  if (p < 0.0 || p > 1.0) throw ParamError("gnp needs p in [0,1]");
  if (p == 0.0 || n < 2) return;
  if (p == 1.0) {
    for (NodeId u = 0; u + 1 < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) out.emplace_back(u, v);
    return;
  }
  const double log1mp = std::log1p(-p);
  std::uint64_t idx = 0;  // position in the flattened upper triangle
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  // invert idx -> (u,v) by walking rows
  NodeId u = 0;
  std::uint64_t row_start = 0;
  std::uint64_t row_len = n - 1;
  while (true) {
    const double r = rng.next_double();
    const double skip = std::floor(std::log1p(-r) / log1mp);
    idx += static_cast<std::uint64_t>(skip) + 1;
    if (idx > total) break;
    while (idx - 1 >= row_start + row_len) {
      row_start += row_len;
      ++u;
      row_len = n - 1 - u;
    }
    const NodeId v = static_cast<NodeId>(u + 1 + (idx - 1 - row_start));
    out.emplace_back(u, v);
  }
}

void gen_random_regular(NodeId n, NodeId d, Rng& rng,
                        std::vector<std::pair<NodeId, NodeId>>& out) {
  if (d >= n && !(d == 0 && n == 1)) throw InfeasibleError("regular degree must be < n");
  if ((static_cast<std::uint64_t>(d) * n) % 2 != 0) throw ParamError("d*n must be even");
  if (d == 0) return;
  // configuration model with whole-shuffle retries
  std::vector<NodeId> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId j = 0; j < d; ++j) stubs.push_back(v);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      const std::size_t j = rng.next_below(i + 1);
      std::swap(stubs[i], stubs[j]);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(stubs.size() / 2);
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      NodeId u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    out = std::move(edges);
    return;
  }
  throw InfeasibleError("random_regular pairing did not converge");
}

// Hubs 0..h-1 each pick hub_degree distinct non-hub neighbors; hubs are
// additionally wired among themselves with gnp(hub_p).
void gen_hub(const GenParams& prm, Rng& rng, std::vector<std::pair<NodeId, NodeId>>& out) {
  const NodeId n = prm.n, h = prm.hub_count;
  if (h == 0 || h >= n) throw ParamError("hub model needs 0 < hub_count < n");
  const NodeId leaves = n - h;
  if (prm.hub_degree > leaves) throw InfeasibleError("hub_degree exceeds available leaves");
  std::vector<NodeId> pool(leaves);
  for (NodeId i = 0; i < leaves; ++i) pool[i] = h + i;
  for (NodeId hub = 0; hub < h; ++hub) {
    // partial Fisher-Yates gives hub_degree distinct picks
    for (NodeId j = 0; j < prm.hub_degree; ++j) {
      const std::size_t k = j + rng.next_below(leaves - j);
      std::swap(pool[j], pool[k]);
      out.emplace_back(hub, pool[j]);
    }
  }
  if (prm.hub_p > 0.0 && h >= 2) {
    std::vector<std::pair<NodeId, NodeId>> hub_edges;
    gen_gnp(h, prm.hub_p, rng, hub_edges);
    out.insert(out.end(), hub_edges.begin(), hub_edges.end());
  }
}

}  // namespace

Graph generate_graph(GraphModel model, const GenParams& prm, std::uint64_t seed) {
  if (prm.n < 1) throw ParamError("n must be >= 1");
  std::uint64_t s = seed ^ 0x5eedb01dfacefeedULL;
  Rng rng(splitmix64(s));
  std::vector<std::pair<NodeId, NodeId>> edges;
  switch (model) {
    case GraphModel::gnp:
      gen_gnp(prm.n, prm.p, rng, edges);
      break;
    case GraphModel::random_regular:
      gen_random_regular(prm.n, prm.d, rng, edges);
      break;
    case GraphModel::star:
      for (NodeId v = 1; v < prm.n; ++v) edges.emplace_back(0, v);
      break;
    case GraphModel::path:
      for (NodeId v = 0; v + 1 < prm.n; ++v) edges.emplace_back(v, v + 1);
      break;
    case GraphModel::complete:
      for (NodeId u = 0; u + 1 < prm.n; ++u)
        for (NodeId v = u + 1; v < prm.n; ++v) edges.emplace_back(u, v);
      break;
    case GraphModel::hub:
      gen_hub(prm, rng, edges);
      break;
  }
  return Graph::from_edges(prm.n, std::move(edges));
}

bool is_independent(const Graph& g, const NodeSet& s) {
  bool ok = true;
  s.for_each([&](NodeId v) {
    if (!ok) return;
    for (NodeId u : g.neighbors(v)) {
      if (u > v) break;  // sorted lists: checking u < v covers each edge once
      if (s.test(u)) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

bool is_maximal_independent(const Graph& g, const NodeSet& s) {
  if (!is_independent(g, s)) return false;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (s.test(v)) continue;
    bool dominated = false;
    for (NodeId u : g.neighbors(v)) {
      if (s.test(u)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return false;
  }
  return true;
}

ResidualGraph residual_graph(const Graph& g, const NodeSet& s) {
  if (!is_independent(g, s)) throw ContractError("residual_graph needs an independent set");
  const NodeId n = g.num_nodes();
  std::vector<bool> removed(n, false);
  s.for_each([&](NodeId v) {
    removed[v] = true;
    for (NodeId u : g.neighbors(v)) removed[u] = true;
  });
  std::vector<NodeId> to_new(n, kNoNode);
  ResidualGraph out;
  for (NodeId v = 0; v < n; ++v) {
    if (!removed[v]) {
      to_new[v] = static_cast<NodeId>(out.to_original.size());
      out.to_original.push_back(v);
    }
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v < n; ++v) {
    if (removed[v]) continue;
    for (NodeId u : g.neighbors(v)) {
      if (u > v && !removed[u]) edges.emplace_back(to_new[v], to_new[u]);
    }
  }
  const NodeId nn = static_cast<NodeId>(out.to_original.size());
  out.graph = Graph::from_edges(std::max<NodeId>(nn, 1), std::move(edges));
  if (nn == 0) out.graph = Graph();
  return out;
}

std::string write_edge_list(const Graph& g) {
  std::string out;
  out += std::to_string(g.num_nodes());
  out += ' ';
  out += std::to_string(g.num_edges());
  out += '\n';
  char buf[32];
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (u > v) {
        std::snprintf(buf, sizeof(buf), "%u %u\n", v, u);
        out += buf;
      }
    }
  }
  return out;
}

Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::uint64_t n = 0, m = 0;
  if (!(in >> n >> m)) throw ParamError("edge list: bad header");
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t u, v;
    if (!(in >> u >> v)) throw ParamError("edge list: truncated");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return Graph::from_edges(static_cast<NodeId>(n), std::move(edges));
}

GraphModel parse_graph_model(const std::string& name) {
  if (name == "gnp") return GraphModel::gnp;
  if (name == "random_regular") return GraphModel::random_regular;
  if (name == "star") return GraphModel::star;
  if (name == "path") return GraphModel::path;
  if (name == "complete") return GraphModel::complete;
  if (name == "hub") return GraphModel::hub;
  throw ParamError("unknown graph model: " + name);
}

const char* graph_model_name(GraphModel m) {
  switch (m) {
    case GraphModel::gnp: return "gnp";
    case GraphModel::random_regular: return "random_regular";
    case GraphModel::star: return "star";
    case GraphModel::path: return "path";
    case GraphModel::complete: return "complete";
    case GraphModel::hub: return "hub";
  }
  return "?";
}

}  // namespace sleepmis
