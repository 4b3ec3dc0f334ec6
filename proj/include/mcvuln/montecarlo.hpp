#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mcvuln/settling.hpp"
#include "mcvuln/shift.hpp"
#include "mcvuln/types.hpp"

// End-to-end sampling engine: per sample, generate one program, settle n
// independent copies, shift the settled windows and test mutual
// disjointness. Samples are sharded across workers; every random draw is
// keyed by (seed, estimator, sample index, ...), so counts are bit-identical
// for a fixed seed regardless of the worker count.
namespace mcvuln::montecarlo {

struct Estimate {
  double mean = 0.0;
  double std_err = 0.0;  // sqrt(mean (1-mean) / samples)
  double ci95_lo = 0.0;  // Wilson score interval
  double ci95_hi = 0.0;
  uint64_t hits = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::string config_echo;
};

struct Histogram {
  std::map<long, uint64_t> counts;
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::string config_echo;

  uint64_t count(long key) const;
  double frequency(long key) const;
  Estimate bin(long key) const;  // proportion estimate for one bin
};

Estimate make_proportion_estimate(uint64_t hits, uint64_t samples,
                                  uint64_t seed);

/// 0 picks the hardware concurrency; the result never depends on it.
int resolve_workers(int workers);

struct SimulateOptions {
  OverlapConvention overlap = OverlapConvention::Closed;
  bool independent_programs = false;
  int workers = 0;
};

/// Proportion of samples whose n settled-and-shifted critical windows are
/// mutually disjoint. By default all n copies reorder from one shared random
/// program per sample; independent_programs regenerates per copy.
Estimate estimate_pr_disjoint(const MemoryModel& model, int threads,
                              const ModelParams& params, uint64_t samples,
                              uint64_t seed,
                              const SimulateOptions& opts = {});

/// Shift-only mode: fixed segment lengths, no settling.
Estimate estimate_shift_disjoint(const SegmentLengths& lengths,
                                 uint64_t samples, uint64_t seed,
                                 OverlapConvention conv = OverlapConvention::Closed,
                                 int workers = 0);

/// Histogram of the window growth gamma, one settle per sample.
Histogram estimate_window_pmf(const MemoryModel& model,
                              const ModelParams& params, uint64_t samples,
                              uint64_t seed, int workers = 0);

/// Histogram of the length of the maximal store run directly above the
/// critical load after the body has settled but before the critical load
/// does (TSO).
Histogram estimate_store_run_pmf(const ModelParams& params, uint64_t samples,
                                 uint64_t seed, int workers = 0);

/// Fraction of samples whose bottom settled body slot holds a store after
/// the m body rounds (TSO). Requires params.m >= 1.
Estimate estimate_bottom_store(const ModelParams& params, uint64_t samples,
                               uint64_t seed, int workers = 0);

}  // namespace mcvuln::montecarlo
