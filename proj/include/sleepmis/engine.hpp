#pragma once

#include <array>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "sleepmis/graph.hpp"
#include "sleepmis/random.hpp"

namespace sleepmis {

// Message payload, at most 128 bits. The engine enforces
// nbits <= B = budget_factor * ceil(log2 n).
struct Payload {
  std::array<std::uint64_t, 2> words{};
  std::uint16_t nbits = 0;

  Payload& append(std::uint64_t value, unsigned width) {
    for (unsigned i = 0; i < width; ++i) {
      const unsigned pos = nbits + i;
      if (pos < 128 && ((value >> i) & 1)) words[pos >> 6] |= 1ULL << (pos & 63);
    }
    nbits += width;
    return *this;
  }
  std::uint64_t get(unsigned offset, unsigned width) const {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < width; ++i) {
      const unsigned pos = offset + i;
      if (pos < 128 && ((words[pos >> 6] >> (pos & 63)) & 1)) out |= 1ULL << i;
    }
    return out;
  }
  static Payload of(std::uint64_t value, unsigned width) {
    Payload p;
    p.append(value, width);
    return p;
  }
};

// compact inbox slot; payloads over 64 bits keep their high word in a side
// queue so dense 1-bit phases stay at 16 bytes per message
struct MessageIn {
  std::uint64_t w0;
  NodeId src;
  std::uint16_t nbits;
};

struct EnergyLedger {
  std::vector<std::uint32_t> awake;  // per-node count of rounds the handler ran
  std::uint64_t total_rounds = 0;
};

struct EnergyReport {
  std::uint32_t max_awake = 0;
  double mean_awake = 0.0;  // over all n nodes, never-awake nodes count as 0
  std::uint64_t total_rounds = 0;
};

enum class ViolationKind : std::uint8_t {
  budget_exceeded,
  duplicate_edge_message,
  not_an_edge,
  max_rounds_hit,
  protocol_stalled,
  structural,
};

struct Violation {
  ViolationKind kind;
  std::uint64_t round;
  NodeId node;
};

struct DropRecord {
  std::uint64_t round;
  NodeId src, dst;
};

struct Transcript {
  std::vector<Violation> violations;        // capped at 64 entries
  std::uint64_t violation_count = 0;
  std::vector<DropRecord> drop_log;         // unintended unicast drops, capped
  std::uint64_t unintended_drops = 0;       // drops outside fire-and-forget sends
  std::uint64_t faf_drops = 0;              // declared fire-and-forget, benign
  std::uint64_t messages_sent = 0;          // per-edge message instances
  std::uint64_t messages_delivered = 0;
  EnergyLedger ledger;                      // filled by run_simulation
  bool conforming() const { return violation_count == 0 && unintended_drops == 0; }
};

struct EngineConfig {
  std::uint64_t seed = 1;
  std::uint32_t budget_factor = 4;
  std::uint64_t max_rounds = 100'000'000;
  bool continue_on_violation = false;  // record-and-continue diagnostics mode
};

class Engine;

// Per-node view while its handler runs. Handlers read their own state plus
// the inbox and write their own state plus outgoing messages / wake times.
class Context {
 public:
  Context(Engine& eng, NodeId self, std::uint64_t round) : eng_(eng), self_(self), round_(round) {}

  NodeId self() const { return self_; }
  std::uint64_t round() const { return round_; }
  std::span<const NodeId> neighbors() const;
  NodeId degree() const;

  // messages delivered while awake since this node's previous handler run,
  // in delivery order
  std::size_t inbox_size() const;
  template <typename F>
  void for_each_message(F&& fn) const;  // fn(NodeId src, const Payload&)

  void send(NodeId dst, const Payload& p, bool fire_and_forget = false);
  // one message on every incident edge; drops to sleeping neighbors are
  // benign only when declared fire-and-forget
  void broadcast(const Payload& p, bool fire_and_forget = false);
  void wake_at(std::uint64_t round);
  Rng& rng();

 private:
  Engine& eng_;
  NodeId self_;
  std::uint64_t round_;
};

class Protocol {
 public:
  virtual ~Protocol() = default;
  // called once before the first round of this segment; wake scheduling and
  // local pre-computation here is free (no energy is charged)
  virtual void attach(Engine& eng) = 0;
  virtual void on_round(Context& ctx) = 0;
  // global termination, checked after every processed round
  virtual bool finished(const Engine&) const { return false; }
};

// Lock-step simulator with sleeping semantics. Only awake nodes run
// handlers; a message is delivered at the end of its round only if the
// receiver is awake in that round; sleeping nodes cannot be woken
// externally. Rounds and the ledger persist across run() calls, so a
// pipeline can execute protocol segments back to back.
class Engine {
 public:
  Engine(const Graph& g, const EngineConfig& cfg);

  void run(Protocol& p);
  // rounds elapse with every node asleep up to the given absolute round
  void advance_to(std::uint64_t round);

  const Graph& graph() const { return *g_; }
  std::uint64_t current_round() const { return ledger_.total_rounds; }
  std::uint32_t message_budget_bits() const { return budget_bits_; }
  const EnergyLedger& ledger() const { return ledger_; }
  const Transcript& transcript() const { return transcript_; }
  const EngineConfig& config() const { return cfg_; }

  void wake(NodeId v, std::uint64_t round);
  Rng& node_rng(NodeId v) { return rngs_[v]; }
  std::uint64_t run_seed() const { return cfg_.seed; }

  template <typename F>
  void for_each_inbox(NodeId v, F&& fn) const {
    std::size_t hi = 0;
    for (const MessageIn& m : inbox_[v]) {
      Payload p;
      p.words[0] = m.w0;
      p.nbits = m.nbits;
      if (m.nbits > 64) p.words[1] = inbox_hi_[v][hi++];
      fn(m.src, p);
    }
  }

  bool aborted() const { return aborted_; }

 private:
  friend class Context;
  struct OutMsg {
    NodeId src, dst;
    Payload payload;
    bool faf;
  };
  static constexpr std::uint32_t kRing = 1u << 15;  // near-future wake buckets

  void violation(ViolationKind kind, NodeId node);
  void process_round(Protocol& proto, std::uint64_t round);
  void deliver(NodeId dst, NodeId src, const Payload& p);
  std::uint64_t next_pending_round();
  std::uint64_t peek_next_round() const;
  std::vector<NodeId>& bucket_for(std::uint64_t round);

  const Graph* g_;
  EngineConfig cfg_;
  std::uint32_t budget_bits_;
  EnergyLedger ledger_;
  Transcript transcript_;
  std::vector<Rng> rngs_;

  std::vector<std::vector<NodeId>> ring_;
  std::vector<std::uint64_t> ring_round_;
  std::vector<std::pair<std::uint64_t, NodeId>> far_wakes_;  // beyond the ring
  std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> pending_;

  std::vector<std::vector<MessageIn>> inbox_;
  std::vector<std::vector<std::uint64_t>> inbox_hi_;  // high words for big payloads
  std::vector<OutMsg> out_;
  std::vector<Payload> bcast_payload_;
  std::vector<std::uint8_t> bcast_flag_;  // 0 none, 1 normal, 2 faf
  std::vector<NodeId> bcasters_;
  std::vector<NodeId> awake_list_;
  std::vector<std::uint8_t> awake_now_;
  std::vector<NodeId> sent_this_handler_;
  bool handler_broadcasted_ = false;
  NodeId current_node_ = kNoNode;
  bool aborted_ = false;
};

template <typename F>
void Context::for_each_message(F&& fn) const {
  eng_.for_each_inbox(self_, fn);
}

EnergyReport energy_report(const Engine& eng);
EnergyReport energy_report(const EnergyLedger& ledger);

// One protocol, one engine, one transcript; result is a pure function of
// (graph, protocol, seed, config).
Transcript run_simulation(const Graph& g, Protocol& proto, std::uint64_t seed,
                          EngineConfig cfg = {});

}  // namespace sleepmis
