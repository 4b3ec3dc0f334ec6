#include "mcvuln/oracle.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mcvuln::oracle {

namespace {

// A settled prefix is abstracted to its type sequence plus the position of
// the critical load: instructions of equal type are interchangeable for
// every later settling decision. Packed key: bit q of `bits` is 1 when the
// instruction at position q (0 = top) is a store; the critical load's bit
// stays 0.
struct PrefixKey {
  uint32_t bits = 0;
  int len = 0;
  int crit_pos = -1;  // -1 until the critical load is inserted

  uint32_t packed() const {
    return bits | (static_cast<uint32_t>(len) << 16) |
           (static_cast<uint32_t>(crit_pos + 1) << 21);
  }
};

using StateMass = std::unordered_map<uint32_t, Rational>;

PrefixKey unpack(uint32_t key) {
  PrefixKey out;
  out.bits = key & 0xffffu;
  out.len = static_cast<int>((key >> 16) & 0x1fu);
  out.crit_pos = static_cast<int>((key >> 21) & 0x1fu) - 1;
  return out;
}

struct SwapTable {
  Rational rho[2][2];  // [earlier][later], exact

  Rational at(const PrefixKey& state, int pos, InstructionType incoming,
              bool incoming_is_crit_store) const {
    if (pos == state.crit_pos)
      return incoming_is_crit_store
                 ? Rational(0)
                 : rho[static_cast<int>(InstructionType::Load)]
                      [static_cast<int>(incoming)];
    const int earlier = (state.bits >> pos) & 1u;
    return rho[earlier][static_cast<int>(incoming)];
  }
};

PrefixKey insert_at(const PrefixKey& state, int pos, InstructionType incoming,
                    bool incoming_is_crit_load) {
  PrefixKey out;
  const uint32_t below_mask = (uint32_t(1) << pos) - 1;
  out.bits = (state.bits & below_mask) |
             ((state.bits & ~below_mask) << 1);
  if (incoming == InstructionType::Store) out.bits |= uint32_t(1) << pos;
  out.len = state.len + 1;
  if (incoming_is_crit_load)
    out.crit_pos = pos;
  else
    out.crit_pos = state.crit_pos >= pos ? state.crit_pos + 1 : state.crit_pos;
  return out;
}

// Distributes `mass` of `state` over the landing positions of an incoming
// instruction settling upward from below the prefix, invoking
// emit(landing_pos, probability * mass).
template <typename Emit>
void settle_incoming(const PrefixKey& state, const SwapTable& swaps,
                     InstructionType incoming, bool incoming_is_crit_store,
                     const Rational& mass, Emit&& emit) {
  // Landing at pos requires successful swaps past positions len-1 .. pos and
  // one failed swap against position pos-1 (none needed at the top).
  Rational reach = mass;
  for (int pos = state.len; pos >= 0; --pos) {
    if (pos > 0) {
      const Rational rho =
          swaps.at(state, pos - 1, incoming, incoming_is_crit_store);
      const Rational land = reach * (Rational(1) - rho);
      if (land != 0) emit(pos, land);
      reach *= rho;
      if (reach == 0) break;
    } else {
      emit(0, reach);
    }
  }
}

}  // namespace

std::map<int, Rational> exact_window_pmf(const MemoryModel& model,
                                         const ModelParams& params) {
  params.validate();
  const int m = params.m;
  if (m > kMaxProgramLen)
    throw ResourceGuardError("exact window pmf enumerates type sequences; m > " +
                             std::to_string(kMaxProgramLen) +
                             " is not tractable, use the simulator");

  SwapTable swaps;
  for (int earlier = 0; earlier < 2; ++earlier)
    for (int later = 0; later < 2; ++later)
      swaps.rho[earlier][later] =
          model.relaxed(static_cast<InstructionType>(earlier),
                        static_cast<InstructionType>(later))
              ? Rational(params.s[earlier][later])
              : Rational(0);
  const Rational p_store(params.p);
  const Rational p_load = Rational(1) - p_store;

  StateMass states;
  states.emplace(PrefixKey{}.packed(), Rational(1));

  // Body rounds: the incoming type is itself random.
  for (int round = 0; round < m; ++round) {
    StateMass next;
    next.reserve(states.size() * 2);
    for (const auto& [key, mass] : states) {
      const PrefixKey state = unpack(key);
      for (int type_bit = 0; type_bit < 2; ++type_bit) {
        const auto incoming = static_cast<InstructionType>(type_bit);
        const Rational weight =
            type_bit ? mass * p_store : mass * p_load;
        if (weight == 0) continue;
        settle_incoming(state, swaps, incoming, false, weight,
                        [&](int pos, const Rational& land) {
                          next[insert_at(state, pos, incoming, false).packed()] +=
                              land;
                        });
      }
    }
    states = std::move(next);
  }

  // Critical load round.
  {
    StateMass next;
    next.reserve(states.size() * static_cast<std::size_t>(m + 1));
    for (const auto& [key, mass] : states) {
      const PrefixKey state = unpack(key);
      settle_incoming(state, swaps, InstructionType::Load, false, mass,
                      [&](int pos, const Rational& land) {
                        next[insert_at(state, pos, InstructionType::Load, true)
                                 .packed()] += land;
                      });
    }
    states = std::move(next);
  }

  // Critical store round: it can never pass the critical load, so every
  // landing position sits strictly below it.
  std::map<int, Rational> pmf;
  for (const auto& [key, mass] : states) {
    const PrefixKey state = unpack(key);
    settle_incoming(state, swaps, InstructionType::Store, true, mass,
                    [&](int pos, const Rational& land) {
                      pmf[pos - state.crit_pos - 1] += land;
                    });
  }
  return pmf;
}

RationalInterval exact_disjoint(const SegmentLengths& lengths, int cap) {
  lengths.validate();
  const int n = static_cast<int>(lengths.size());
  if (n > kMaxDisjointThreads)
    throw ResourceGuardError("exact disjointness enumeration supports at most " +
                             std::to_string(kMaxDisjointThreads) + " segments");
  if (cap < 0 || cap > kMaxDisjointCap)
    throw ResourceGuardError("shift cap must lie in [0, " +
                             std::to_string(kMaxDisjointCap) + "]");

  // Enumerate shift vectors in [0, cap]^n depth-first, pruning any prefix
  // that already overlaps; a leaf contributes 2^-(sum shifts + n).
  Rational lower = 0;
  std::vector<long> shifts(static_cast<std::size_t>(n), 0);
  auto overlaps_earlier = [&](int depth) {
    const long lo = shifts[depth];
    const long hi = lo + lengths.lengths[depth];
    for (int j = 0; j < depth; ++j) {
      const long lo_j = shifts[j];
      const long hi_j = lo_j + lengths.lengths[j];
      if (lo <= hi_j && lo_j <= hi) return true;
    }
    return false;
  };
  auto recurse = [&](auto&& self, int depth, long shift_sum) -> void {
    for (long s = 0; s <= cap; ++s) {
      shifts[depth] = s;
      if (overlaps_earlier(depth)) continue;
      if (depth + 1 == n)
        lower += pow2(-(shift_sum + s + n));
      else
        self(self, depth + 1, shift_sum + s);
    }
  };
  recurse(recurse, 0, 0);

  RationalInterval out;
  out.lower = lower;
  out.upper = lower + Rational(n) * pow2(-(cap + 1));
  return out;
}

namespace {

uint64_t brute_count(long remaining, long parts, long z, long min_part) {
  if (parts == 0) return remaining == 0 ? 1 : 0;
  uint64_t total = 0;
  for (long part = min_part; part <= z && part <= remaining; ++part)
    total += brute_count(remaining - part, parts - 1, z, part);
  return total;
}

}  // namespace

uint64_t brute_partition_count(long x, long y, long z) {
  if (x < 0 || y < 0 || z < 0)
    throw UsageError("brute_partition_count arguments must be >= 0");
  if (x > 20 || y > 8 || z > 10)
    throw ResourceGuardError(
        "brute_partition_count is desk-scale only (x <= 20, y <= 8, z <= 10)");
  return brute_count(x, y, z, 1);
}

}  // namespace mcvuln::oracle
