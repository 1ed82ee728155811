#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sleepmis {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct ParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Undirected simple graph, CSR adjacency, ids 0..n-1, neighbor lists sorted.
class Graph {
 public:
  Graph() = default;
  // edges given once per undirected pair; duplicates collapse, self-loops rejected
  static Graph from_edges(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges);

  NodeId num_nodes() const { return n_; }
  std::uint64_t num_edges() const { return adj_.size() / 2; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  NodeId degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  NodeId max_degree() const { return max_degree_; }
  bool has_edge(NodeId u, NodeId v) const;

  // CSR internals, used by protocols that keep per-directed-edge state
  std::uint32_t edge_offset(NodeId v) const { return offsets_[v]; }
  std::uint64_t num_directed_edges() const { return adj_.size(); }

 private:
  NodeId n_ = 0;
  NodeId max_degree_ = 0;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<NodeId> adj_;
};

// Membership bitmap over 0..n-1 with O(1) queries.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(NodeId n) : n_(n), bits_((n + 63) / 64, 0) {}

  NodeId size_universe() const { return n_; }
  NodeId count() const { return count_; }
  bool test(NodeId v) const { return (bits_[v >> 6] >> (v & 63)) & 1; }
  void add(NodeId v) {
    std::uint64_t& w = bits_[v >> 6];
    const std::uint64_t m = 1ULL << (v & 63);
    if (!(w & m)) {
      w |= m;
      ++count_;
    }
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        const int b = __builtin_ctzll(word);
        f(static_cast<NodeId>(w * 64 + b));
        word &= word - 1;
      }
    }
  }

 private:
  NodeId n_ = 0;
  NodeId count_ = 0;
  std::vector<std::uint64_t> bits_;
};

enum class GraphModel { gnp, random_regular, star, path, complete, hub };

struct GenParams {
  NodeId n = 1;
  double p = 0.0;           // gnp edge probability
  NodeId d = 0;             // random_regular degree
  NodeId hub_count = 0;     // hub model: nodes 0..hub_count-1 are hubs
  NodeId hub_degree = 0;    // leaves attached per hub
  double hub_p = 0.0;       // gnp among hubs
};

// Pure function of (model, params, seed); identical inputs give identical graphs.
Graph generate_graph(GraphModel model, const GenParams& params, std::uint64_t seed);

bool is_independent(const Graph& g, const NodeSet& s);
bool is_maximal_independent(const Graph& g, const NodeSet& s);

struct ResidualGraph {
  Graph graph;
  std::vector<NodeId> to_original;  // new id -> original id
};

// Induced subgraph on V minus (s and its neighbors); s must be independent.
ResidualGraph residual_graph(const Graph& g, const NodeSet& s);

// edge-list text format: header "n m", then one "u v" line per edge
std::string write_edge_list(const Graph& g);
Graph read_edge_list(const std::string& text);

GraphModel parse_graph_model(const std::string& name);
const char* graph_model_name(GraphModel m);

}  // namespace sleepmis
