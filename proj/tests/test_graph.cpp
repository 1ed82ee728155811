#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "sleepmis/graph.hpp"
#include "sleepmis/random.hpp"

using namespace sleepmis;

namespace {

NodeSet set_of(NodeId n, std::initializer_list<NodeId> members) {
  NodeSet s(n);
  for (NodeId v : members) s.add(v);
  return s;
}

void check_invariants(const Graph& g) {
  NodeId maxdeg = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto nb = g.neighbors(v);
    maxdeg = std::max<NodeId>(maxdeg, nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      CHECK(nb[i] != v);                       // no self-loops
      if (i > 0) CHECK(nb[i] > nb[i - 1]);     // sorted, no duplicates
      CHECK(g.has_edge(nb[i], v));             // symmetric
    }
  }
  CHECK(g.max_degree() == maxdeg);
}

}  // namespace

TEST_CASE("complete graph K4") {
  Graph g = generate_graph(GraphModel::complete, {.n = 4}, 123);
  CHECK(g.num_edges() == 6);
  for (NodeId v = 0; v < 4; ++v) CHECK(g.degree(v) == 3);
  check_invariants(g);
}

TEST_CASE("gnp p=0 is edgeless") {
  Graph g = generate_graph(GraphModel::gnp, {.n = 5, .p = 0.0}, 99);
  CHECK(g.num_edges() == 0);
}

TEST_CASE("random regular n=6 d=2 has degree exactly 2") {
  GenParams prm;
  prm.n = 6;
  prm.d = 2;
  Graph g = generate_graph(GraphModel::random_regular, prm, 7);
  for (NodeId v = 0; v < 6; ++v) CHECK(g.degree(v) == 2);
  check_invariants(g);
}

TEST_CASE("random regular rejects odd d*n and d >= n") {
  GenParams prm;
  prm.n = 5;
  prm.d = 3;
  CHECK_THROWS_AS(generate_graph(GraphModel::random_regular, prm, 1), ParamError);
  prm.n = 4;
  prm.d = 4;
  CHECK_THROWS_AS(generate_graph(GraphModel::random_regular, prm, 1), InfeasibleError);
}

TEST_CASE("generators are deterministic in (model, params, seed)") {
  GenParams prm;
  prm.n = 200;
  prm.p = 0.05;
  Graph a = generate_graph(GraphModel::gnp, prm, 42);
  Graph b = generate_graph(GraphModel::gnp, prm, 42);
  Graph c = generate_graph(GraphModel::gnp, prm, 43);
  CHECK(write_edge_list(a) == write_edge_list(b));
  CHECK(write_edge_list(a) != write_edge_list(c));
  check_invariants(a);
}

TEST_CASE("gnp edge count is near expectation") {
  GenParams prm;
  prm.n = 4096;
  prm.p = 16.0 / 4095.0;
  double sum = 0;
  for (std::uint64_t s = 0; s < 10; ++s) sum += generate_graph(GraphModel::gnp, prm, s).num_edges();
  const double mean = sum / 10.0;
  const double expect = 0.5 * 4096 * 16;  // n*(n-1)/2 * p
  CHECK(mean > expect * 0.9);
  CHECK(mean < expect * 1.1);
}

TEST_CASE("independence oracle on a path") {
  Graph g = generate_graph(GraphModel::path, {.n = 3}, 0);  // a-b-c
  CHECK(is_independent(g, set_of(3, {0, 2})));
  CHECK(!is_independent(g, set_of(3, {0, 1})));
  CHECK(is_independent(g, set_of(3, {})));
}

TEST_CASE("maximality oracle") {
  Graph path3 = generate_graph(GraphModel::path, {.n = 3}, 0);
  CHECK(is_maximal_independent(path3, set_of(3, {1})));
  CHECK(!is_maximal_independent(path3, set_of(3, {0})));
  Graph edgeless = generate_graph(GraphModel::gnp, {.n = 5, .p = 0.0}, 0);
  CHECK(is_maximal_independent(edgeless, set_of(5, {0, 1, 2, 3, 4})));
  CHECK(!is_maximal_independent(edgeless, set_of(5, {0, 1, 2, 3})));
}

TEST_CASE("maximal implies independent on random sets") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    GenParams prm;
    prm.n = 12;
    prm.p = 0.25;
    Graph g = generate_graph(GraphModel::gnp, prm, rng.next_u64());
    NodeSet s(12);
    for (NodeId v = 0; v < 12; ++v)
      if (rng.bernoulli(0.3)) s.add(v);
    if (is_maximal_independent(g, s)) CHECK(is_independent(g, s));
  }
}

TEST_CASE("residual graph removes the set and its neighborhood") {
  Graph star = generate_graph(GraphModel::star, {.n = 6}, 0);  // center 0
  auto r1 = residual_graph(star, set_of(6, {0}));
  CHECK(r1.to_original.empty());

  Graph path5 = generate_graph(GraphModel::path, {.n = 5}, 0);
  auto r2 = residual_graph(path5, set_of(5, {0}));
  REQUIRE(r2.to_original.size() == 3);
  CHECK(r2.to_original[0] == 2);
  CHECK(r2.to_original[2] == 4);
  CHECK(r2.graph.num_edges() == 2);

  Graph k4 = generate_graph(GraphModel::complete, {.n = 4}, 0);
  auto r3 = residual_graph(k4, set_of(4, {0}));
  CHECK(r3.to_original.empty());

  CHECK_THROWS_AS(residual_graph(path5, set_of(5, {0, 1})), ContractError);
}

TEST_CASE("residual graph contains no neighbor of the set") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    GenParams prm;
    prm.n = 40;
    prm.p = 0.1;
    Graph g = generate_graph(GraphModel::gnp, prm, rng.next_u64());
    // greedily build an independent set
    NodeSet s(40);
    for (NodeId v = 0; v < 40; ++v) {
      bool blocked = false;
      for (NodeId u : g.neighbors(v)) blocked |= s.test(u);
      if (!blocked && rng.bernoulli(0.5)) s.add(v);
    }
    auto res = residual_graph(g, s);
    for (NodeId nv : res.to_original) {
      CHECK(!s.test(nv));
      for (NodeId u : g.neighbors(nv)) CHECK(!s.test(u));
    }
  }
}

TEST_CASE("edge list round trip") {
  GenParams prm;
  prm.n = 30;
  prm.p = 0.2;
  Graph g = generate_graph(GraphModel::gnp, prm, 3);
  Graph h = read_edge_list(write_edge_list(g));
  CHECK(write_edge_list(g) == write_edge_list(h));
}

TEST_CASE("hub generator shapes") {
  GenParams prm;
  prm.n = 1000;
  prm.hub_count = 10;
  prm.hub_degree = 200;
  prm.hub_p = 0.5;
  Graph g = generate_graph(GraphModel::hub, prm, 11);
  for (NodeId h = 0; h < 10; ++h) CHECK(g.degree(h) >= 200);
  CHECK(g.max_degree() <= 200 + 9 + 1);
  check_invariants(g);
}
