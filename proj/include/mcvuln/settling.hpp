#pragma once

#include <cstdint>
#include <vector>

#include "mcvuln/rng.hpp"
#include "mcvuln/types.hpp"

namespace mcvuln {

/// An initial program: m i.i.d. body instructions followed by the critical
/// load and the critical store. All addresses are distinct except the
/// critical pair, which shares one.
struct Program {
  std::vector<InstructionType> types;  // size m + 2

  int body_len() const { return static_cast<int>(types.size()) - 2; }
  int critical_load_index() const { return body_len(); }
  int critical_store_index() const { return body_len() + 1; }
};

/// Appends the fixed critical load/store pair to the given body.
Program make_program(std::vector<InstructionType> body);

Program generate_program(const ModelParams& params, RandomStream& rng);
void generate_program_into(const ModelParams& params, RandomStream& rng,
                           Program& out);

/// Result of the settling process: pi maps each initial position to its
/// settled position (a bijection over 0..m+1).
struct FinalOrder {
  std::vector<int32_t> pi;
  int body_len = 0;

  int critical_load_pos() const { return pi[body_len]; }
  int critical_store_pos() const { return pi[body_len + 1]; }
};

struct WindowSample {
  int gamma = 0;           // instructions strictly between the settled criticals
  int segment_length = 2;  // gamma + 2, the window size fed to the shift process
};

/// Runs the first `rounds` settling rounds (round r inserts instruction r by
/// repeated predecessor swaps; `rounds` == m+2 is the full process) and
/// leaves order[pos] = initial index of the instruction at position pos.
/// Positions >= rounds keep identity. Per-round randomness is drawn from
/// rng.child(stream_tag::kRound, r); the passed stream itself never advances,
/// so one dedicated substream per settle call is expected.
void settle_rounds(const Program& program, const MemoryModel& model,
                   const ModelParams& params, const RandomStream& rng,
                   int rounds, std::vector<int32_t>& order);

FinalOrder settle(const Program& program, const MemoryModel& model,
                  const ModelParams& params, const RandomStream& rng);

WindowSample critical_window(const FinalOrder& order);

/// Window extracted from a raw position->index order (as produced by
/// settle_rounds over all m+2 rounds).
WindowSample window_of_order(const std::vector<int32_t>& order, int body_len);

}  // namespace mcvuln
