#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sleepmis/engine.hpp"

using namespace sleepmis;

namespace {

// wake round 1, record "in", done
struct OneShot : Protocol {
  std::vector<int> output;
  void attach(Engine& eng) override {
    output.assign(eng.graph().num_nodes(), 0);
    for (NodeId v = 0; v < eng.graph().num_nodes(); ++v) eng.wake(v, 1);
  }
  void on_round(Context& ctx) override { output[ctx.self()] = 1; }
};

struct PingExchange : Protocol {
  int received = 0;
  void attach(Engine& eng) override {
    eng.wake(0, 1);
    eng.wake(1, 1);
    eng.wake(0, 2);
    eng.wake(1, 2);
  }
  void on_round(Context& ctx) override {
    if (ctx.round() == 1) {
      ctx.send(ctx.self() == 0 ? 1 : 0, Payload::of(1, 1));
    } else {
      ctx.for_each_message([&](NodeId, const Payload& p) {
        if (p.get(0, 1) == 1) ++received;
      });
    }
  }
};

struct DropSend : Protocol {
  bool faf;
  explicit DropSend(bool f) : faf(f) {}
  void attach(Engine& eng) override { eng.wake(0, 1); }
  void on_round(Context& ctx) override { ctx.send(1, Payload::of(1, 1), faf); }
};

struct BigSend : Protocol {
  void attach(Engine& eng) override {
    eng.wake(0, 1);
    eng.wake(1, 1);
  }
  void on_round(Context& ctx) override {
    if (ctx.self() == 0) {
      Payload p;
      p.append(~0ULL, 64);
      p.append(~0ULL, 60);  // 124 bits > B for small n
      ctx.send(1, p);
    }
  }
};

struct DoubleSend : Protocol {
  void attach(Engine& eng) override {
    eng.wake(0, 1);
    eng.wake(1, 1);
  }
  void on_round(Context& ctx) override {
    if (ctx.self() == 0) {
      ctx.send(1, Payload::of(0, 1));
      ctx.send(1, Payload::of(1, 1));
    }
  }
};

}  // namespace

TEST_CASE("one-node run: one round, one awake") {
  Graph g = Graph::from_edges(1, {});
  OneShot p;
  auto t = run_simulation(g, p, 7);
  CHECK(t.ledger.total_rounds == 1);
  CHECK(t.ledger.awake[0] == 1);
  CHECK(p.output[0] == 1);
  CHECK(t.conforming());
}

TEST_CASE("two awake nodes exchange one bit") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  PingExchange p;
  auto t = run_simulation(g, p, 1);
  CHECK(p.received == 2);
  CHECK(t.messages_sent == 2);
  CHECK(t.messages_delivered == 2);
  CHECK(t.conforming());
  auto rep = energy_report(t.ledger);
  CHECK(rep.max_awake == 2);
  CHECK(rep.total_rounds == 2);
}

TEST_CASE("message to a sleeping receiver is dropped") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  DropSend p(false);
  auto t = run_simulation(g, p, 1);
  CHECK(t.unintended_drops == 1);
  CHECK(t.drop_log.size() == 1);
  CHECK(t.messages_delivered == 0);

  DropSend q(true);
  auto t2 = run_simulation(g, q, 1);
  CHECK(t2.unintended_drops == 0);
  CHECK(t2.faf_drops == 1);
  CHECK(t2.conforming());
}

TEST_CASE("payload over budget aborts and records a violation") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  BigSend p;
  auto t = run_simulation(g, p, 1);
  REQUIRE(t.violation_count == 1);
  CHECK(t.violations[0].kind == ViolationKind::budget_exceeded);
}

TEST_CASE("two messages on one edge in one round is a protocol error") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  DoubleSend p;
  auto t = run_simulation(g, p, 1);
  REQUIRE(t.violation_count == 1);
  CHECK(t.violations[0].kind == ViolationKind::duplicate_edge_message);
}

TEST_CASE("energy report arithmetic") {
  EnergyLedger l;
  l.awake = {3, 1, 0, 0};
  l.total_rounds = 5;
  auto r = energy_report(l);
  CHECK(r.max_awake == 3);
  CHECK(r.mean_awake == doctest::Approx(1.0));
  l.awake = {5, 5};
  l.total_rounds = 7;
  r = energy_report(l);
  CHECK(r.max_awake == 5);
  CHECK(r.mean_awake == doctest::Approx(5.0));
  CHECK(r.total_rounds == 7);
}

TEST_CASE("identical seeds give identical transcripts") {
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});

  struct P : Protocol {
    void attach(Engine& eng) override {
      for (NodeId v = 0; v < 3; ++v)
        for (std::uint64_t r = 1; r <= 6; ++r)
          if (eng.node_rng(v).bernoulli(0.5)) eng.wake(v, r);
    }
    void on_round(Context& ctx) override {
      if (ctx.rng().bernoulli(0.7)) ctx.broadcast(Payload::of(ctx.round() & 1, 1), true);
    }
  };
  P p1, p2;
  auto t1 = run_simulation(g, p1, 99);
  auto t2 = run_simulation(g, p2, 99);
  CHECK(t1.messages_sent == t2.messages_sent);
  CHECK(t1.messages_delivered == t2.messages_delivered);
  CHECK(t1.faf_drops == t2.faf_drops);
  CHECK(t1.ledger.awake == t2.ledger.awake);
}

TEST_CASE("broadcast reaches exactly the awake neighbors") {
  // path 0-1-2, node1 broadcasts in round 1; node0 awake, node2 asleep
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  struct P : Protocol {
    int got = 0;
    void attach(Engine& eng) override {
      eng.wake(0, 1);
      eng.wake(1, 1);
      eng.wake(0, 2);
    }
    void on_round(Context& ctx) override {
      if (ctx.round() == 1 && ctx.self() == 1) ctx.broadcast(Payload::of(1, 1), true);
      if (ctx.round() == 2) ctx.for_each_message([&](NodeId, const Payload&) { ++got; });
    }
  } p;
  auto t = run_simulation(g, p, 1);
  CHECK(p.got == 1);
  CHECK(t.messages_sent == 2);
  CHECK(t.messages_delivered == 1);
  CHECK(t.faf_drops == 1);
}

TEST_CASE("far-future wakes survive ring paging") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  struct P : Protocol {
    std::uint64_t seen = 0;
    void attach(Engine& eng) override {
      eng.wake(0, 1);
      eng.wake(1, 200000);  // far beyond the ring
      eng.wake(0, 300001);
    }
    void on_round(Context& ctx) override { seen += ctx.round(); }
  } p;
  auto t = run_simulation(g, p, 1);
  CHECK(p.seen == 1 + 200000 + 300001);
  CHECK(t.ledger.total_rounds == 300001);
}
