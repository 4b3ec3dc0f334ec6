#include "mcvuln/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <thread>
#include <vector>

namespace mcvuln::montecarlo {

namespace {

namespace estimator_id {
constexpr uint64_t kPrDisjoint = 1;
constexpr uint64_t kWindowPmf = 2;
constexpr uint64_t kStoreRun = 3;
constexpr uint64_t kBottomStore = 4;
constexpr uint64_t kShiftDisjoint = 5;
}  // namespace estimator_id

// Shards [0, samples) into contiguous ranges, one per worker; merging is a
// commutative sum, so the result is independent of the shard layout anyway.
template <typename Accum, typename Body, typename Merge>
Accum parallel_reduce(uint64_t samples, int workers, Body&& body,
                      Merge&& merge) {
  const int w = resolve_workers(workers);
  if (w <= 1 || samples < 2) return body(0, samples);
  const uint64_t chunk = (samples + w - 1) / static_cast<uint64_t>(w);
  std::vector<Accum> partial(static_cast<std::size_t>(w));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (int i = 0; i < w; ++i) {
    const uint64_t begin = chunk * static_cast<uint64_t>(i);
    const uint64_t end = std::min(samples, begin + chunk);
    pool.emplace_back([&, i, begin, end] {
      if (begin < end) partial[static_cast<std::size_t>(i)] = body(begin, end);
    });
  }
  for (auto& t : pool) t.join();
  Accum total{};
  for (auto& part : partial) merge(total, part);
  return total;
}

void merge_counts(std::map<long, uint64_t>& total,
                  const std::map<long, uint64_t>& part) {
  for (const auto& [key, count] : part) total[key] += count;
}

std::string describe(const char* what, const ModelParams& params) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s m=%d p=%g s=[%g,%g;%g,%g]", what,
                params.m, params.p, params.s[0][0], params.s[0][1],
                params.s[1][0], params.s[1][1]);
  return buf;
}

}  // namespace

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Estimate make_proportion_estimate(uint64_t hits, uint64_t samples,
                                  uint64_t seed) {
  if (samples == 0) throw UsageError("sample count must be >= 1");
  Estimate est;
  est.hits = hits;
  est.samples = samples;
  est.seed = seed;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  est.mean = p;
  est.std_err = std::sqrt(p * (1.0 - p) / n);
  const double z = 1.959963984540054;  // 97.5th normal percentile
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The Wilson bounds are exactly 0 and 1 at the boundary counts.
  est.ci95_lo = hits == 0 ? 0.0 : std::max(0.0, center - half);
  est.ci95_hi = hits == samples ? 1.0 : std::min(1.0, center + half);
  return est;
}

uint64_t Histogram::count(long key) const {
  const auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

double Histogram::frequency(long key) const {
  return samples == 0 ? 0.0
                      : static_cast<double>(count(key)) /
                            static_cast<double>(samples);
}

Estimate Histogram::bin(long key) const {
  return make_proportion_estimate(count(key), samples, seed);
}

Estimate estimate_pr_disjoint(const MemoryModel& model, int threads,
                              const ModelParams& params, uint64_t samples,
                              uint64_t seed, const SimulateOptions& opts) {
  params.validate();
  if (threads < 2) throw UsageError("disjointness needs at least 2 threads");
  if (samples == 0) throw UsageError("sample count must be >= 1");

  const RandomStream root =
      RandomStream(seed).child(stream_tag::kEstimator,
                               estimator_id::kPrDisjoint);
  const int rounds = params.m + 2;

  auto body = [&](uint64_t begin, uint64_t end) -> uint64_t {
    uint64_t hits = 0;
    Program program;
    std::vector<int32_t> order;
    SegmentLengths segments{std::vector<long>(static_cast<std::size_t>(threads))};
    ShiftVector shifts{std::vector<long>(static_cast<std::size_t>(threads))};
    for (uint64_t i = begin; i < end; ++i) {
      const RandomStream sample_rng = root.child(stream_tag::kSample, i);
      if (!opts.independent_programs) {
        RandomStream program_rng = sample_rng.child(stream_tag::kProgram, 0);
        generate_program_into(params, program_rng, program);
      }
      for (int k = 0; k < threads; ++k) {
        if (opts.independent_programs) {
          RandomStream program_rng =
              sample_rng.child(stream_tag::kProgram, static_cast<uint64_t>(k));
          generate_program_into(params, program_rng, program);
        }
        settle_rounds(program, model, params,
                      sample_rng.child(stream_tag::kThread,
                                       static_cast<uint64_t>(k)),
                      rounds, order);
        segments.lengths[static_cast<std::size_t>(k)] =
            window_of_order(order, params.m).segment_length;
        RandomStream shift_rng =
            sample_rng.child(stream_tag::kShift, static_cast<uint64_t>(k));
        shifts.shifts[static_cast<std::size_t>(k)] = sample_shift(shift_rng);
      }
      if (disjoint(segments, shifts, opts.overlap)) ++hits;
    }
    return hits;
  };

  const uint64_t hits = parallel_reduce<uint64_t>(
      samples, opts.workers, body, [](uint64_t& a, uint64_t b) { a += b; });
  Estimate est = make_proportion_estimate(hits, samples, seed);
  est.config_echo = describe("pr-disjoint", params) +
                    " model=" + to_string(model.name()) +
                    " threads=" + std::to_string(threads) +
                    " overlap=" + to_string(opts.overlap) +
                    (opts.independent_programs ? " independent-programs" : "");
  return est;
}

Estimate estimate_shift_disjoint(const SegmentLengths& lengths,
                                 uint64_t samples, uint64_t seed,
                                 OverlapConvention conv, int workers) {
  lengths.validate();
  if (samples == 0) throw UsageError("sample count must be >= 1");
  const std::size_t n = lengths.size();
  const RandomStream root =
      RandomStream(seed).child(stream_tag::kEstimator,
                               estimator_id::kShiftDisjoint);

  auto body = [&](uint64_t begin, uint64_t end) -> uint64_t {
    uint64_t hits = 0;
    ShiftVector shifts{std::vector<long>(n)};
    for (uint64_t i = begin; i < end; ++i) {
      const RandomStream sample_rng = root.child(stream_tag::kSample, i);
      for (std::size_t k = 0; k < n; ++k) {
        RandomStream shift_rng =
            sample_rng.child(stream_tag::kShift, static_cast<uint64_t>(k));
        shifts.shifts[k] = sample_shift(shift_rng);
      }
      if (disjoint(lengths, shifts, conv)) ++hits;
    }
    return hits;
  };

  const uint64_t hits = parallel_reduce<uint64_t>(
      samples, workers, body, [](uint64_t& a, uint64_t b) { a += b; });
  Estimate est = make_proportion_estimate(hits, samples, seed);
  est.config_echo = "shift-disjoint n=" + std::to_string(n) +
                    " overlap=" + to_string(conv);
  return est;
}

Histogram estimate_window_pmf(const MemoryModel& model,
                              const ModelParams& params, uint64_t samples,
                              uint64_t seed, int workers) {
  params.validate();
  if (samples == 0) throw UsageError("sample count must be >= 1");
  const RandomStream root =
      RandomStream(seed).child(stream_tag::kEstimator,
                               estimator_id::kWindowPmf);
  const int rounds = params.m + 2;

  auto body = [&](uint64_t begin, uint64_t end) {
    std::map<long, uint64_t> counts;
    Program program;
    std::vector<int32_t> order;
    for (uint64_t i = begin; i < end; ++i) {
      const RandomStream sample_rng = root.child(stream_tag::kSample, i);
      RandomStream program_rng = sample_rng.child(stream_tag::kProgram, 0);
      generate_program_into(params, program_rng, program);
      settle_rounds(program, model, params,
                    sample_rng.child(stream_tag::kThread, 0), rounds, order);
      ++counts[window_of_order(order, params.m).gamma];
    }
    return counts;
  };

  Histogram hist;
  hist.counts = parallel_reduce<std::map<long, uint64_t>>(samples, workers,
                                                          body, merge_counts);
  hist.samples = samples;
  hist.seed = seed;
  hist.config_echo =
      describe("window-pmf", params) + " model=" + to_string(model.name());
  return hist;
}

Histogram estimate_store_run_pmf(const ModelParams& params, uint64_t samples,
                                 uint64_t seed, int workers) {
  params.validate();
  if (samples == 0) throw UsageError("sample count must be >= 1");
  const MemoryModel& model = MemoryModel::tso();
  const RandomStream root =
      RandomStream(seed).child(stream_tag::kEstimator, estimator_id::kStoreRun);

  auto body = [&](uint64_t begin, uint64_t end) {
    std::map<long, uint64_t> counts;
    Program program;
    std::vector<int32_t> order;
    for (uint64_t i = begin; i < end; ++i) {
      const RandomStream sample_rng = root.child(stream_tag::kSample, i);
      RandomStream program_rng = sample_rng.child(stream_tag::kProgram, 0);
      generate_program_into(params, program_rng, program);
      // Settle only the body; the critical pair still sits at the bottom.
      settle_rounds(program, model, params,
                    sample_rng.child(stream_tag::kThread, 0), params.m, order);
      long run = 0;
      for (int pos = params.m - 1;
           pos >= 0 && program.types[order[pos]] == InstructionType::Store;
           --pos)
        ++run;
      ++counts[run];
    }
    return counts;
  };

  Histogram hist;
  hist.counts = parallel_reduce<std::map<long, uint64_t>>(samples, workers,
                                                          body, merge_counts);
  hist.samples = samples;
  hist.seed = seed;
  hist.config_echo = describe("store-run", params);
  return hist;
}

Estimate estimate_bottom_store(const ModelParams& params, uint64_t samples,
                               uint64_t seed, int workers) {
  params.validate();
  if (params.m < 1) throw UsageError("bottom-store estimate requires m >= 1");
  if (samples == 0) throw UsageError("sample count must be >= 1");
  const MemoryModel& model = MemoryModel::tso();
  const RandomStream root =
      RandomStream(seed).child(stream_tag::kEstimator,
                               estimator_id::kBottomStore);

  auto body = [&](uint64_t begin, uint64_t end) -> uint64_t {
    uint64_t hits = 0;
    Program program;
    std::vector<int32_t> order;
    for (uint64_t i = begin; i < end; ++i) {
      const RandomStream sample_rng = root.child(stream_tag::kSample, i);
      RandomStream program_rng = sample_rng.child(stream_tag::kProgram, 0);
      generate_program_into(params, program_rng, program);
      settle_rounds(program, model, params,
                    sample_rng.child(stream_tag::kThread, 0), params.m, order);
      if (program.types[order[params.m - 1]] == InstructionType::Store) ++hits;
    }
    return hits;
  };

  const uint64_t hits = parallel_reduce<uint64_t>(
      samples, workers, body, [](uint64_t& a, uint64_t b) { a += b; });
  Estimate est = make_proportion_estimate(hits, samples, seed);
  est.config_echo = describe("bottom-store", params);
  return est;
}

}  // namespace mcvuln::montecarlo
