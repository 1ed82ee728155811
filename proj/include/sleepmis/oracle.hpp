#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sleepmis/graph.hpp"

namespace sleepmis {

// All 2^C(n,2) labeled graphs for n <= 5, streamed to the callback.
void enumerate_small_graphs(NodeId n, const std::function<void(const Graph&)>& fn);

// Uniform random labeled graphs for n in 6..8.
void sample_small_graphs(NodeId n, std::size_t count, std::uint64_t seed,
                         const std::function<void(const Graph&)>& fn);

// Exhaustive list of every maximal independent set, as node bitmasks. n <= 20.
std::vector<std::uint32_t> oracle_all_mis(const Graph& g);

std::uint32_t nodeset_mask(const NodeSet& s);

}  // namespace sleepmis
