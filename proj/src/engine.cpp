#include "sleepmis/engine.hpp"

#include <algorithm>

namespace sleepmis {

namespace {
std::uint32_t ceil_log2(std::uint64_t x) {
  std::uint32_t b = 0;
  while ((1ULL << b) < x) ++b;
  return b;
}
}  // namespace

Engine::Engine(const Graph& g, const EngineConfig& cfg) : g_(&g), cfg_(cfg) {
  const NodeId n = g.num_nodes();
  // floor of 6 id bits keeps messages with a few ids legal on tiny graphs
  budget_bits_ = cfg.budget_factor * std::max<std::uint32_t>(6, ceil_log2(n));
  ledger_.awake.assign(n, 0);
  rngs_.reserve(n);
  for (NodeId v = 0; v < n; ++v) rngs_.push_back(make_node_rng(cfg.seed, v));
  ring_.resize(kRing);
  ring_round_.assign(kRing, 0);
  inbox_.resize(n);
  inbox_hi_.resize(n);
  bcast_payload_.resize(n);
  bcast_flag_.assign(n, 0);
  awake_now_.assign(n, 0);
}

std::vector<NodeId>& Engine::bucket_for(std::uint64_t round) {
  auto& b = ring_[round & (kRing - 1)];
  if (ring_round_[round & (kRing - 1)] != round) {
    b.clear();
    ring_round_[round & (kRing - 1)] = round;
  }
  return b;
}

void Engine::wake(NodeId v, std::uint64_t round) {
  if (round <= ledger_.total_rounds)
    throw ContractError("wake must be scheduled in a future round");
  if (round - ledger_.total_rounds >= kRing) {
    far_wakes_.emplace_back(round, v);
    return;
  }
  auto& b = bucket_for(round);
  if (b.empty()) pending_.push(round);
  b.push_back(v);
}

std::uint64_t Engine::next_pending_round() {
  while (true) {
    while (!pending_.empty()) {
      const std::uint64_t r = pending_.top();
      if (ring_round_[r & (kRing - 1)] == r && !ring_[r & (kRing - 1)].empty()) break;
      pending_.pop();  // stale
    }
    const std::uint64_t best = pending_.empty() ? 0 : pending_.top();
    if (far_wakes_.empty()) return best;
    std::uint64_t fmin = far_wakes_.front().first;
    for (const auto& [r, v] : far_wakes_) fmin = std::min(fmin, r);
    if (best != 0 && best <= fmin) return best;
    // the nearest wake sits beyond the ring: let empty rounds elapse, then
    // move far wakes into buckets
    if (fmin - ledger_.total_rounds >= kRing) ledger_.total_rounds = fmin - kRing + 1;
    std::vector<std::pair<std::uint64_t, NodeId>> keep;
    keep.reserve(far_wakes_.size());
    for (const auto& [r, v] : far_wakes_) {
      if (r - ledger_.total_rounds < kRing) {
        auto& b = bucket_for(r);
        if (b.empty()) pending_.push(r);
        b.push_back(v);
      } else {
        keep.emplace_back(r, v);
      }
    }
    far_wakes_ = std::move(keep);
  }
}

std::uint64_t Engine::peek_next_round() const {
  std::uint64_t best = 0;
  // scan the ring lazily via the heap copy-free: the heap may hold stale
  // rounds, so validate against bucket contents
  std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> heap = pending_;
  while (!heap.empty()) {
    const std::uint64_t r = heap.top();
    if (ring_round_[r & (kRing - 1)] == r && !ring_[r & (kRing - 1)].empty()) {
      best = r;
      break;
    }
    heap.pop();
  }
  for (const auto& [r, v] : far_wakes_)
    if (best == 0 || r < best) best = r;
  return best;
}

void Engine::run(Protocol& proto) {
  if (aborted_) return;
  proto.attach(*this);
  while (!proto.finished(*this)) {
    const std::uint64_t r = next_pending_round();
    if (r == 0) break;
    if (r > cfg_.max_rounds) {
      violation(ViolationKind::max_rounds_hit, kNoNode);
      aborted_ = true;
      break;
    }
    process_round(proto, r);
    if (aborted_) break;
  }
}

void Engine::advance_to(std::uint64_t round) {
  if (round < ledger_.total_rounds) return;
  const std::uint64_t nxt = peek_next_round();
  if (nxt != 0 && nxt <= round) throw ContractError("advance_to would skip scheduled wakes");
  ledger_.total_rounds = round;
}

void Engine::violation(ViolationKind kind, NodeId node) {
  ++transcript_.violation_count;
  if (transcript_.violations.size() < 64)
    transcript_.violations.push_back({kind, ledger_.total_rounds, node});
  if (!cfg_.continue_on_violation &&
      (kind == ViolationKind::budget_exceeded || kind == ViolationKind::duplicate_edge_message ||
       kind == ViolationKind::not_an_edge))
    aborted_ = true;
}

void Engine::deliver(NodeId dst, NodeId src, const Payload& p) {
  inbox_[dst].push_back({p.words[0], src, p.nbits});
  if (p.nbits > 64) inbox_hi_[dst].push_back(p.words[1]);
  ++transcript_.messages_delivered;
}

void Engine::process_round(Protocol& proto, std::uint64_t round) {
  ledger_.total_rounds = round;
  auto& bucket = ring_[round & (kRing - 1)];
  pending_.pop();

  awake_list_.clear();
  for (NodeId v : bucket) {
    if (!awake_now_[v]) {
      awake_now_[v] = 1;
      awake_list_.push_back(v);
    }
  }
  bucket.clear();

  for (NodeId v : awake_list_) {
    ++ledger_.awake[v];
    Context ctx(*this, v, round);
    current_node_ = v;
    handler_broadcasted_ = false;
    sent_this_handler_.clear();
    proto.on_round(ctx);
    inbox_[v].clear();
    inbox_hi_[v].clear();
    if (aborted_) break;
  }
  current_node_ = kNoNode;

  if (!aborted_) {
    // unicasts: delivered only to receivers awake in this round
    for (const OutMsg& m : out_) {
      ++transcript_.messages_sent;
      if (awake_now_[m.dst]) {
        deliver(m.dst, m.src, m.payload);
      } else if (m.faf) {
        ++transcript_.faf_drops;
      } else {
        ++transcript_.unintended_drops;
        if (transcript_.drop_log.size() < 64) transcript_.drop_log.push_back({round, m.src, m.dst});
      }
    }
    // broadcasts: receiver-side scan over awake nodes
    if (!bcasters_.empty()) {
      std::uint64_t delivered_b = 0;
      for (NodeId u : awake_list_) {
        for (NodeId v : g_->neighbors(u)) {
          if (bcast_flag_[v]) {
            deliver(u, v, bcast_payload_[v]);
            ++delivered_b;
          }
        }
      }
      std::uint64_t sent_faf = 0, sent_norm = 0, delivered_faf = 0, delivered_norm = 0;
      for (NodeId v : bcasters_) {
        (bcast_flag_[v] == 2 ? sent_faf : sent_norm) += g_->degree(v);
      }
      // split delivered between the two classes only when needed
      if (sent_norm != 0 && sent_faf != 0) {
        for (NodeId u : awake_list_)
          for (NodeId v : g_->neighbors(u))
            if (bcast_flag_[v]) ++(bcast_flag_[v] == 2 ? delivered_faf : delivered_norm);
      } else if (sent_norm != 0) {
        delivered_norm = delivered_b;
      } else {
        delivered_faf = delivered_b;
      }
      transcript_.messages_sent += sent_faf + sent_norm;
      transcript_.faf_drops += sent_faf - delivered_faf;
      transcript_.unintended_drops += sent_norm - delivered_norm;
      for (NodeId v : bcasters_) bcast_flag_[v] = 0;
      bcasters_.clear();
    }
  }
  out_.clear();
  for (NodeId v : awake_list_) awake_now_[v] = 0;
}

std::span<const NodeId> Context::neighbors() const { return eng_.graph().neighbors(self_); }
NodeId Context::degree() const { return eng_.graph().degree(self_); }
std::size_t Context::inbox_size() const { return eng_.inbox_[self_].size(); }
Rng& Context::rng() { return eng_.node_rng(self_); }
void Context::wake_at(std::uint64_t round) { eng_.wake(self_, round); }

void Context::send(NodeId dst, const Payload& p, bool fire_and_forget) {
  if (p.nbits > eng_.budget_bits_) {
    eng_.violation(ViolationKind::budget_exceeded, self_);
    return;
  }
  if (!eng_.graph().has_edge(self_, dst)) {
    eng_.violation(ViolationKind::not_an_edge, self_);
    return;
  }
  if (eng_.handler_broadcasted_ ||
      std::find(eng_.sent_this_handler_.begin(), eng_.sent_this_handler_.end(), dst) !=
          eng_.sent_this_handler_.end()) {
    eng_.violation(ViolationKind::duplicate_edge_message, self_);
    return;
  }
  eng_.sent_this_handler_.push_back(dst);
  eng_.out_.push_back({self_, dst, p, fire_and_forget});
}

void Context::broadcast(const Payload& p, bool fire_and_forget) {
  if (p.nbits > eng_.budget_bits_) {
    eng_.violation(ViolationKind::budget_exceeded, self_);
    return;
  }
  if (eng_.handler_broadcasted_ || !eng_.sent_this_handler_.empty()) {
    eng_.violation(ViolationKind::duplicate_edge_message, self_);
    return;
  }
  eng_.handler_broadcasted_ = true;
  eng_.bcast_payload_[self_] = p;
  eng_.bcast_flag_[self_] = fire_and_forget ? 2 : 1;
  eng_.bcasters_.push_back(self_);
}

EnergyReport energy_report(const EnergyLedger& ledger) {
  EnergyReport r;
  r.total_rounds = ledger.total_rounds;
  std::uint64_t sum = 0;
  for (std::uint32_t a : ledger.awake) {
    r.max_awake = std::max(r.max_awake, a);
    sum += a;
  }
  r.mean_awake = ledger.awake.empty() ? 0.0 : static_cast<double>(sum) / ledger.awake.size();
  return r;
}

EnergyReport energy_report(const Engine& eng) { return energy_report(eng.ledger()); }

Transcript run_simulation(const Graph& g, Protocol& proto, std::uint64_t seed, EngineConfig cfg) {
  cfg.seed = seed;
  Engine eng(g, cfg);
  eng.run(proto);
  Transcript t = eng.transcript();
  t.ledger = eng.ledger();
  return t;
}

}  // namespace sleepmis
