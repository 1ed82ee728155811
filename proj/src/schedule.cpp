#include "sleepmis/schedule.hpp"

#include <algorithm>
#include <stdexcept>

#include "sleepmis/graph.hpp"

namespace sleepmis {

AwakeSchedule build_awake_sets(std::uint32_t total_rounds) {
  if (total_rounds < 1) throw ParamError("build_awake_sets needs T >= 1");
  return AwakeSchedule(total_rounds);
}

std::vector<std::uint32_t> AwakeSchedule::set_for(std::uint32_t k) const {
  if (k < 1 || k > T_) throw ParamError("round index out of range");
  if (!explicit_sets_.empty()) return explicit_sets_[k];
  std::vector<std::uint32_t> out;
  std::uint32_t lo = 1, hi = T_;
  while (true) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    out.push_back(mid);
    if (lo == hi) break;
    if (k <= mid)
      hi = mid;
    else
      lo = mid + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint32_t AwakeSchedule::size_bound() const {
  std::uint32_t b = 1, t = T_;
  while (t >>= 1) ++b;
  return b;
}

bool check_size_bound(const AwakeSchedule& s) {
  for (std::uint32_t k = 1; k <= s.total_rounds(); ++k)
    if (s.set_for(k).size() > s.size_bound()) return false;
  return true;
}

bool verify_awake_sets(const AwakeSchedule& s) {
  const std::uint32_t T = s.total_rounds();
  if (T == 0) return false;
  const std::uint32_t words = (T + 2 + 63) / 64;  // bits indexed by round, 1-based

  std::vector<std::vector<std::uint32_t>> sets(T + 1);
  for (std::uint32_t k = 1; k <= T; ++k) {
    sets[k] = s.set_for(k);
    for (std::uint32_t l : sets[k])
      if (l < 1 || l > T) return false;
  }

  // members[l] = bitmap over k of "l in S_k"
  std::vector<std::uint64_t> members(static_cast<std::size_t>(T + 1) * words, 0);
  for (std::uint32_t k = 1; k <= T; ++k)
    for (std::uint32_t l : sets[k]) members[static_cast<std::size_t>(l) * words + (k >> 6)] |= 1ULL << (k & 63);

  // for every i: union over l in S_i, l >= i of { j : l in S_j, j >= l }
  // must cover all j in [i, T]
  std::vector<std::uint64_t> acc(words), want(words);
  for (std::uint32_t i = 1; i <= T; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::uint32_t l : sets[i]) {
      if (l < i) continue;
      const std::uint64_t* row = &members[static_cast<std::size_t>(l) * words];
      const std::uint32_t wl = l >> 6;
      acc[wl] |= row[wl] & (~0ULL << (l & 63));
      for (std::uint32_t w = wl + 1; w < words; ++w) acc[w] |= row[w];
    }
    std::fill(want.begin(), want.end(), 0);
    const std::uint32_t wi = i >> 6, wt = T >> 6;
    for (std::uint32_t w = wi; w <= wt; ++w) want[w] = ~0ULL;
    want[wi] &= ~0ULL << (i & 63);
    want[wt] &= (T & 63) == 63 ? ~0ULL : ((1ULL << ((T & 63) + 1)) - 1);
    for (std::uint32_t w = 0; w < words; ++w)
      if ((acc[w] & want[w]) != want[w]) return false;
  }
  return true;
}

}  // namespace sleepmis
