#include "mcvuln/shift.hpp"

namespace mcvuln {

OverlapConvention parse_overlap(std::string_view text) {
  if (text == "closed") return OverlapConvention::Closed;
  if (text == "index-set") return OverlapConvention::IndexSet;
  throw UsageError("unknown overlap convention '" + std::string(text) +
                   "' (expected closed or index-set)");
}

std::string to_string(OverlapConvention conv) {
  return conv == OverlapConvention::Closed ? "closed" : "index-set";
}

void SegmentLengths::validate() const {
  if (lengths.empty()) throw UsageError("segment length vector is empty");
  for (long len : lengths)
    if (len < 0) throw UsageError("segment lengths must be >= 0");
}

long sample_shift(RandomStream& rng) { return rng.geometric_half(); }

bool disjoint(const SegmentLengths& lengths, const ShiftVector& shifts,
              OverlapConvention conv) {
  const std::size_t n = lengths.size();
  if (n != shifts.size())
    throw UsageError("segment lengths and shifts differ in arity");
  // A segment [start, end] collides with another iff the intervals share an
  // integer point; IndexSet shortens each segment by one and drops empties.
  const long shrink = conv == OverlapConvention::IndexSet ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long len_i = lengths.lengths[i] - shrink;
    if (len_i < 0) continue;
    const long lo_i = shifts.shifts[i];
    const long hi_i = lo_i + len_i;
    for (std::size_t j = i + 1; j < n; ++j) {
      const long len_j = lengths.lengths[j] - shrink;
      if (len_j < 0) continue;
      const long lo_j = shifts.shifts[j];
      if (lo_i <= lo_j + len_j && lo_j <= hi_i) return false;
    }
  }
  return true;
}

}  // namespace mcvuln
