#include "mcvuln/settling.hpp"

#include <numeric>
#include <optional>

namespace mcvuln {

Program make_program(std::vector<InstructionType> body) {
  Program program;
  program.types = std::move(body);
  program.types.push_back(InstructionType::Load);
  program.types.push_back(InstructionType::Store);
  return program;
}

void generate_program_into(const ModelParams& params, RandomStream& rng,
                           Program& out) {
  out.types.clear();
  out.types.reserve(static_cast<std::size_t>(params.m) + 2);
  for (int i = 0; i < params.m; ++i)
    out.types.push_back(rng.bernoulli(params.p) ? InstructionType::Store
                                                : InstructionType::Load);
  out.types.push_back(InstructionType::Load);
  out.types.push_back(InstructionType::Store);
}

Program generate_program(const ModelParams& params, RandomStream& rng) {
  Program program;
  generate_program_into(params, rng, program);
  return program;
}

void settle_rounds(const Program& program, const MemoryModel& model,
                   const ModelParams& params, const RandomStream& rng,
                   int rounds, std::vector<int32_t>& order) {
  const int n = static_cast<int>(program.types.size());
  order.resize(n);
  std::iota(order.begin(), order.end(), 0);

  const int32_t crit_load = program.critical_load_index();
  const int32_t crit_store = program.critical_store_index();

  // Round 0 settles the first instruction, which has no predecessor.
  for (int r = 1; r < rounds; ++r) {
    const int32_t idx = r;
    const InstructionType settling = program.types[idx];
    std::optional<RandomStream> round_rng;
    int pos = r;
    while (pos > 0) {
      const int32_t pred = order[pos - 1];
      // The critical pair shares an address and never reorders.
      if (idx == crit_store && pred == crit_load) break;
      const double q =
          swap_probability(model, params, program.types[pred], settling);
      if (q <= 0.0) break;
      if (q < 1.0) {
        if (!round_rng) round_rng = rng.child(stream_tag::kRound, r);
        if (!round_rng->bernoulli(q)) break;
      }
      order[pos - 1] = idx;
      order[pos] = pred;
      --pos;
    }
  }
}

FinalOrder settle(const Program& program, const MemoryModel& model,
                  const ModelParams& params, const RandomStream& rng) {
  std::vector<int32_t> order;
  settle_rounds(program, model, params, rng,
                static_cast<int>(program.types.size()), order);
  FinalOrder out;
  out.body_len = program.body_len();
  out.pi.resize(order.size());
  for (int pos = 0; pos < static_cast<int>(order.size()); ++pos)
    out.pi[order[pos]] = pos;
  return out;
}

WindowSample critical_window(const FinalOrder& order) {
  WindowSample sample;
  sample.gamma = order.critical_store_pos() - order.critical_load_pos() - 1;
  sample.segment_length = sample.gamma + 2;
  return sample;
}

WindowSample window_of_order(const std::vector<int32_t>& order, int body_len) {
  int load_pos = -1;
  int store_pos = -1;
  const int32_t crit_load = body_len;
  const int32_t crit_store = body_len + 1;
  for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) {
    if (order[pos] == crit_load)
      load_pos = pos;
    else if (order[pos] == crit_store)
      store_pos = pos;
  }
  WindowSample sample;
  sample.gamma = store_pos - load_pos - 1;
  sample.segment_length = sample.gamma + 2;
  return sample;
}

}  // namespace mcvuln
