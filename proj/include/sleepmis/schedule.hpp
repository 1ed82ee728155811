#pragma once

#include <cstdint>
#include <vector>

namespace sleepmis {

// Awake-round sets S_k over rounds 1..T. Built by midpoint recursion on
// [1,T]: every k in [L,H] adds M = L + (H-L)/2, then recurse on both halves.
// For any rounds i <= j some l in S_i intersect S_j satisfies i <= l <= j.
//
// Sets are not stored; set_for(k) walks the implicit interval tree in
// O(log T). Tests may instead supply explicit sets to feed the verifier
// counterexamples.
class AwakeSchedule {
 public:
  AwakeSchedule() = default;
  explicit AwakeSchedule(std::uint32_t total_rounds) : T_(total_rounds) {}
  AwakeSchedule(std::uint32_t total_rounds, std::vector<std::vector<std::uint32_t>> sets)
      : T_(total_rounds), explicit_sets_(std::move(sets)) {}

  std::uint32_t total_rounds() const { return T_; }
  // sorted set S_k for round k in 1..T
  std::vector<std::uint32_t> set_for(std::uint32_t k) const;
  // derived bound floor(log2 T) + 1
  std::uint32_t size_bound() const;

 private:
  std::uint32_t T_ = 0;
  std::vector<std::vector<std::uint32_t>> explicit_sets_;  // index 0 unused when present
};

AwakeSchedule build_awake_sets(std::uint32_t total_rounds);

// Brute-force oracle for the pairwise property, over all T(T+1)/2 pairs.
// Organized bit-parallel so the exhaustive sweep over T <= 4096 stays fast.
// The size bound is a property of built schedules, not of the pairwise
// statement (maximal sets serve every pair), so it is checked separately.
bool verify_awake_sets(const AwakeSchedule& s);

// every |S_k| within the derived bound floor(log2 T) + 1
bool check_size_bound(const AwakeSchedule& s);

}  // namespace sleepmis
