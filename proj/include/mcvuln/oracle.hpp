#pragma once

#include <cstdint>
#include <map>

#include "mcvuln/rational.hpp"
#include "mcvuln/settling.hpp"
#include "mcvuln/shift.hpp"

// Brute-force exact computations at desk scale, used as independent ground
// truth for the closed forms and the simulator. All weights are carried as
// exact rationals end to end.
namespace mcvuln::oracle {

inline constexpr int kMaxProgramLen = 14;
inline constexpr int kMaxDisjointThreads = 5;
inline constexpr int kMaxDisjointCap = 40;

/// Exact window-growth pmf at finite m for any model, by dynamic programming
/// over settled type sequences (program randomness folded in, every swap
/// chain expanded). Throws ResourceGuardError for params.m > kMaxProgramLen.
std::map<int, Rational> exact_window_pmf(const MemoryModel& model,
                                         const ModelParams& params);

/// Brackets the disjointness probability by enumerating all shift vectors in
/// [0, cap]^n exactly (closed intervals): lower is the enumerated disjoint
/// mass, upper adds the tail bound n 2^-(cap+1) for shifts beyond cap.
RationalInterval exact_disjoint(const SegmentLengths& lengths, int cap);

/// Ground truth for analytic::partition_count by plain enumeration of
/// non-decreasing tuples. Guarded to x <= 20, y <= 8, z <= 10.
uint64_t brute_partition_count(long x, long y, long z);

}  // namespace mcvuln::oracle
