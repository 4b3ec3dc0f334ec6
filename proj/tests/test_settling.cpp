#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "mcvuln/analytic.hpp"
#include "mcvuln/settling.hpp"

using namespace mcvuln;

namespace {

constexpr InstructionType kLd = InstructionType::Load;
constexpr InstructionType kSt = InstructionType::Store;

bool is_identity(const FinalOrder& order) {
  for (int i = 0; i < static_cast<int>(order.pi.size()); ++i)
    if (order.pi[i] != i) return false;
  return true;
}

bool is_bijection(const FinalOrder& order) {
  std::vector<bool> seen(order.pi.size(), false);
  for (int32_t pos : order.pi) {
    if (pos < 0 || pos >= static_cast<int32_t>(order.pi.size()) || seen[pos])
      return false;
    seen[pos] = true;
  }
  return true;
}

}  // namespace

TEST_CASE("program generation") {
  ModelParams params;

  SUBCASE("degenerate store frequency") {
    params.p = 1.0;
    params.m = 3;
    RandomStream rng(1);
    const Program program = generate_program(params, rng);
    CHECK(program.types == std::vector<InstructionType>{kSt, kSt, kSt, kLd, kSt});
  }

  SUBCASE("degenerate load frequency") {
    params.p = 0.0;
    params.m = 2;
    RandomStream rng(1);
    const Program program = generate_program(params, rng);
    CHECK(program.types == std::vector<InstructionType>{kLd, kLd, kLd, kSt});
  }

  SUBCASE("store count concentrates near p*m") {
    params.p = 0.5;
    params.m = 10000;
    RandomStream rng(99);
    const Program program = generate_program(params, rng);
    long stores = 0;
    for (int i = 0; i < params.m; ++i) stores += program.types[i] == kSt;
    const double sigma = std::sqrt(0.25 * params.m);
    CHECK(std::abs(stores - 5000.0) <= 3 * sigma);
  }

  SUBCASE("critical pair is fixed") {
    params.m = 5;
    RandomStream rng(7);
    const Program program = generate_program(params, rng);
    CHECK(program.body_len() == 5);
    CHECK(program.types[program.critical_load_index()] == kLd);
    CHECK(program.types[program.critical_store_index()] == kSt);
  }
}

TEST_CASE("settling under SC is the identity") {
  ModelParams params;
  params.m = 12;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    RandomStream program_rng = rng.child(1, 0);
    const Program program = generate_program(params, program_rng);
    const FinalOrder order =
        settle(program, MemoryModel::sc(), params, rng.child(2, 0));
    CHECK(is_identity(order));
    CHECK(critical_window(order).gamma == 0);
    CHECK(critical_window(order).segment_length == 2);
  }
}

TEST_CASE("all-load body under TSO never reorders") {
  ModelParams params;
  params.m = 8;
  const Program program = make_program(std::vector<InstructionType>(8, kLd));
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const FinalOrder order =
        settle(program, MemoryModel::tso(), params, RandomStream(seed));
    CHECK(is_identity(order));
  }
}

TEST_CASE("forced swaps: hand-traced TSO settling") {
  // Body [st, st]; with every allowed swap succeeding, the critical load
  // climbs to the top and the critical store stays put.
  const Program program = make_program({kSt, kSt});
  const ModelParams forced = ModelParams::with_uniform_s(0.5, 1.0, 2);
  const FinalOrder order =
      settle(program, MemoryModel::tso(), forced, RandomStream(0));

  CHECK(order.pi[0] == 1);  // first store pushed down
  CHECK(order.pi[1] == 2);
  CHECK(order.pi[2] == 0);  // critical load on top
  CHECK(order.pi[3] == 3);  // critical store fixed
  CHECK(critical_window(order).gamma == 2);
  CHECK(critical_window(order).segment_length == 4);
}

TEST_CASE("critical window arithmetic") {
  FinalOrder order;
  order.body_len = 6;
  order.pi = {0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(critical_window(order).gamma == 0);
  CHECK(critical_window(order).segment_length == 2);

  // Load settled three up, store stayed: three instructions in between.
  order.pi = {0, 1, 2, 6, 4, 5, 3, 7};
  CHECK(critical_window(order).gamma == 3);
  CHECK(critical_window(order).segment_length == 5);
}

TEST_CASE("settled orders are permutations preserving non-relaxed pairs") {
  ModelParams params;
  params.m = 16;
  const int samples = 100000;
  for (const auto* model : {&MemoryModel::sc(), &MemoryModel::tso(),
                            &MemoryModel::pso(), &MemoryModel::wo()}) {
    const RandomStream root(424200 + static_cast<uint64_t>(model->name()));
    int gamma_zero = 0;
    for (int i = 0; i < samples; ++i) {
      const RandomStream sample_rng = root.child(1, static_cast<uint64_t>(i));
      RandomStream program_rng = sample_rng.child(2, 0);
      const Program program = generate_program(params, program_rng);
      const FinalOrder order =
          settle(program, *model, params, sample_rng.child(3, 0));

      REQUIRE(is_bijection(order));
      // Settling permutes; the settled sequence holds the same types.
      std::vector<InstructionType> settled(program.types.size());
      int stores_before = 0;
      int stores_after = 0;
      for (int a = 0; a < static_cast<int>(program.types.size()); ++a) {
        settled[order.pi[a]] = program.types[a];
        stores_before += program.types[a] == kSt;
      }
      for (InstructionType t : settled) stores_after += t == kSt;
      REQUIRE(stores_before == stores_after);
      // The critical store never precedes the critical load.
      REQUIRE(order.critical_store_pos() > order.critical_load_pos());
      if (model->name() == ModelName::TSO)
        REQUIRE(order.critical_store_pos() ==
                program.critical_store_index());
      gamma_zero += critical_window(order).gamma == 0;

      const int n = static_cast<int>(program.types.size());
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (!model->relaxed(program.types[a], program.types[b]))
            REQUIRE(order.pi[a] < order.pi[b]);
    }
    // Every model keeps the window shut at least half the time.
    const double freq = gamma_zero / double(samples);
    const double sigma = std::sqrt(0.25 / samples);
    CHECK(freq >= 0.5 - 3 * sigma);
  }
}

TEST_CASE("empirical window pmf matches the closed forms") {
  ModelParams params;
  params.m = 24;
  const int samples = 200000;
  const double slack = std::pow(2.0, -params.m + 2);

  auto histogram = [&](const MemoryModel& model, uint64_t seed) {
    std::map<int, int> counts;
    const RandomStream root(seed);
    for (int i = 0; i < samples; ++i) {
      const RandomStream sample_rng = root.child(1, static_cast<uint64_t>(i));
      RandomStream program_rng = sample_rng.child(2, 0);
      const Program program = generate_program(params, program_rng);
      ++counts[critical_window(
                   settle(program, model, params, sample_rng.child(3, 0)))
                   .gamma];
    }
    return counts;
  };

  SUBCASE("weak ordering") {
    const auto counts = histogram(MemoryModel::wo(), 88001);
    for (int gamma = 0; gamma <= 6; ++gamma) {
      const double ref =
          to_double(analytic::window_pmf(MemoryModel::wo(), gamma));
      const double freq =
          counts.count(gamma) ? counts.at(gamma) / double(samples) : 0.0;
      const double sigma = std::sqrt(ref * (1 - ref) / samples);
      CHECK(std::abs(freq - ref) <= 3 * sigma + slack);
    }
  }

  SUBCASE("total store order stays inside the envelope") {
    const auto counts = histogram(MemoryModel::tso(), 88002);
    for (int gamma = 0; gamma <= 6; ++gamma) {
      const auto bounds = analytic::window_pmf_bounds(gamma);
      const double freq =
          counts.count(gamma) ? counts.at(gamma) / double(samples) : 0.0;
      const double hi = to_double(bounds.upper);
      const double sigma = std::sqrt(hi * (1 - hi) / samples);
      CHECK(freq >= to_double(bounds.lower) - 3 * sigma - slack);
      CHECK(freq <= hi + 3 * sigma + slack);
    }
  }
}
