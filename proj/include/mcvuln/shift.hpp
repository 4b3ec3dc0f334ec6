#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mcvuln/rng.hpp"
#include "mcvuln/types.hpp"

namespace mcvuln {

/// How a segment of length L anchored at shift s occupies the integer line.
/// Closed: the closed interval [s, s+L]; touching endpoints overlap.
/// IndexSet: the L integer points {s, ..., s+L-1}; a zero-length segment is
/// empty and never overlaps anything. Closed is the convention the exact
/// disjointness formula sums and the default everywhere; IndexSet is kept as
/// an explicit option and excluded from acceptance numbers.
enum class OverlapConvention { Closed, IndexSet };

OverlapConvention parse_overlap(std::string_view text);
std::string to_string(OverlapConvention conv);

struct SegmentLengths {
  std::vector<long> lengths;

  std::size_t size() const { return lengths.size(); }
  void validate() const;  // non-empty, all entries >= 0
};

struct ShiftVector {
  std::vector<long> shifts;

  std::size_t size() const { return shifts.size(); }
};

/// One shift draw, Pr[s = k] = 2^-(k+1).
long sample_shift(RandomStream& rng);

/// True iff no two shifted segments share a point under the convention.
/// Throws UsageError on arity mismatch.
bool disjoint(const SegmentLengths& lengths, const ShiftVector& shifts,
              OverlapConvention conv = OverlapConvention::Closed);

}  // namespace mcvuln
