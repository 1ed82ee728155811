#include "sleepmis/oracle.hpp"

#include "sleepmis/random.hpp"

namespace sleepmis {

namespace {

Graph graph_from_pair_mask(NodeId n, std::uint64_t mask) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::uint32_t bit = 0;
  for (NodeId u = 0; u + 1 < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v, ++bit) {
      if ((mask >> bit) & 1) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace

void enumerate_small_graphs(NodeId n, const std::function<void(const Graph&)>& fn) {
  if (n < 1 || n > 5) throw ParamError("enumerate_small_graphs handles 1 <= n <= 5");
  const std::uint32_t pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) fn(graph_from_pair_mask(n, mask));
}

void sample_small_graphs(NodeId n, std::size_t count, std::uint64_t seed,
                         const std::function<void(const Graph&)>& fn) {
  if (n < 6 || n > 8) throw ParamError("sample_small_graphs handles 6 <= n <= 8");
  const std::uint32_t pairs = n * (n - 1) / 2;
  Rng rng(seed ^ 0x57a77ab1e5ULL);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t mask = rng.next_u64() & ((1ULL << pairs) - 1);
    fn(graph_from_pair_mask(n, mask));
  }
}

std::vector<std::uint32_t> oracle_all_mis(const Graph& g) {
  const NodeId n = g.num_nodes();
  if (n > 20) throw ParamError("oracle_all_mis refuses n > 20");
  std::vector<std::uint32_t> adj(n, 0);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u : g.neighbors(v)) adj[v] |= 1u << u;
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool independent = true;
    std::uint32_t dominated = mask;
    for (std::uint32_t rest = mask; rest && independent; rest &= rest - 1) {
      const int v = __builtin_ctz(rest);
      if (adj[v] & mask) independent = false;
      dominated |= adj[v];
    }
    if (independent && dominated == (1u << n) - 1) out.push_back(mask);
  }
  return out;
}

std::uint32_t nodeset_mask(const NodeSet& s) {
  std::uint32_t mask = 0;
  s.for_each([&](NodeId v) { mask |= 1u << v; });
  return mask;
}

}  // namespace sleepmis
