// Acceptance suite: one pass/fail line per criterion, all tolerances pinned
// in code. Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mcvuln/analytic.hpp"
#include "mcvuln/montecarlo.hpp"
#include "mcvuln/oracle.hpp"
#include "mcvuln/rational.hpp"
#include "proc.hpp"

using namespace mcvuln;
namespace an = mcvuln::analytic;
namespace mc = mcvuln::montecarlo;

namespace {

struct Harness {
  int failures = 0;

  void criterion(int id, const std::string& name, bool ok,
                 const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id,
                name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

double sigma_of(double p, uint64_t samples) {
  return std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. Exact two-thread values, equality of rationals.
void criterion_two_thread(Harness& h) {
  const auto sc = an::two_thread_disjoint_prob(MemoryModel::sc());
  const auto wo = an::two_thread_disjoint_prob(MemoryModel::wo());
  const auto tso = an::two_thread_disjoint_prob(MemoryModel::tso());
  const bool ok = sc.exact() && sc.lower == Rational(1, 6) && wo.exact() &&
                  wo.lower == Rational(7, 54) &&
                  tso.lower == Rational(58, 441) &&
                  tso.upper == Rational(58, 441) + Rational(1, 189);
  h.criterion(1, "two-thread exact values 1/6, 7/54, [58/441, 58/441+1/189]",
              ok);
}

// 2. Permutation formula consistency with the all-2 closed form.
void criterion_disjoint_formula(Harness& h) {
  bool ok = an::disjoint_probability(SegmentLengths{{2, 2}}) == Rational(1, 6);
  ok = ok && an::disjoint_probability(SegmentLengths{{2, 2, 2}}) ==
                 Rational(1, 224);
  for (int n = 2; n <= 7 && ok; ++n)
    ok = an::sc_disjoint_prob(n) ==
         an::disjoint_probability(SegmentLengths{std::vector<long>(n, 2)});
  h.criterion(2, "disjointness formula: 1/6, 1/224, all-2 closed form n=2..7",
              ok);
}

// 3. Monte Carlo reproduction of the two-thread values at m = 64.
void criterion_simulation(Harness& h) {
  ModelParams params;  // m = 64
  const uint64_t base_samples = 1000000;
  const uint64_t tso_samples = 4000000;
  const uint64_t seed = 20240601;

  const auto sc = mc::estimate_pr_disjoint(MemoryModel::sc(), 2, params,
                                           base_samples, seed);
  const auto wo = mc::estimate_pr_disjoint(MemoryModel::wo(), 2, params,
                                           base_samples, seed);
  const auto tso = mc::estimate_pr_disjoint(MemoryModel::tso(), 2, params,
                                            tso_samples, seed);

  const double sc_ref = 1.0 / 6;
  const double wo_ref = to_double(Rational(7, 54));
  const double truncation = std::pow(2.0, -60);

  const bool sc_ok =
      std::abs(sc.mean - sc_ref) <= 3 * sigma_of(sc_ref, base_samples);
  const bool wo_ok = std::abs(wo.mean - wo_ref) <=
                     3 * sigma_of(wo_ref, base_samples) + truncation;
  const double tso_pad = 3 * sigma_of(0.1369, tso_samples);
  const bool tso_ok =
      tso.mean >= 0.1315 - tso_pad && tso.mean <= 0.1369 + tso_pad;

  // Ordering with each gap at least 3 combined sigmas.
  const double sc_tso_gap = sc.mean - tso.mean;
  const double tso_wo_gap = tso.mean - wo.mean;
  const double sc_tso_sigma = std::sqrt(
      std::pow(sigma_of(sc_ref, base_samples), 2) +
      std::pow(sigma_of(0.1369, tso_samples), 2));
  const double tso_wo_sigma = std::sqrt(
      std::pow(sigma_of(0.1369, tso_samples), 2) +
      std::pow(sigma_of(wo_ref, base_samples), 2));
  const bool order_ok =
      sc_tso_gap >= 3 * sc_tso_sigma && tso_wo_gap >= 3 * tso_wo_sigma;

  h.criterion(3, "simulation reproduces two-thread values and ordering",
              sc_ok && wo_ok && tso_ok && order_ok,
              "sc=" + fmt(sc.mean) + " tso=" + fmt(tso.mean) +
                  " wo=" + fmt(wo.mean));
}

// 4. Window pmf envelope at m = 64 plus the exact envelope-mass identities.
void criterion_window_pmf(Harness& h) {
  ModelParams params;  // m = 64
  const uint64_t samples = 1000000;
  const double truncation = std::pow(2.0, -60);

  const auto wo = mc::estimate_window_pmf(MemoryModel::wo(), params, samples,
                                          20240602);
  bool wo_ok = true;
  for (long gamma = 0; gamma <= 8; ++gamma) {
    const double ref = to_double(an::window_pmf(MemoryModel::wo(), gamma));
    wo_ok = wo_ok && std::abs(wo.frequency(gamma) - ref) <=
                         3 * sigma_of(ref, samples) + truncation;
  }

  const auto tso = mc::estimate_window_pmf(MemoryModel::tso(), params, samples,
                                           20240603);
  bool tso_ok = true;
  for (long gamma = 0; gamma <= 6; ++gamma) {
    const auto bounds = an::window_pmf_bounds(gamma);
    const double hi = to_double(bounds.upper);
    const double sigma = sigma_of(hi, samples);
    tso_ok = tso_ok && tso.frequency(gamma) >= to_double(bounds.lower) - 3 * sigma &&
             tso.frequency(gamma) <= hi + 3 * sigma;
  }

  // Exact identities: envelope masses close to 20/21 and 22/21.
  Rational lower_sum = 0;
  Rational upper_sum = 0;
  const long cutoff = 40;
  for (long gamma = 0; gamma <= cutoff; ++gamma) {
    const auto bounds = an::window_pmf_bounds(gamma);
    lower_sum += bounds.lower;
    upper_sum += bounds.upper;
  }
  const Rational lower_tail =
      Rational(6, 7) * geometric_tail(Rational(1, 4), cutoff + 1);
  const Rational upper_tail =
      lower_tail + Rational(2, 21) * geometric_tail(Rational(1, 2), cutoff + 1);
  const bool mass_ok = lower_sum + lower_tail == Rational(20, 21) &&
                       upper_sum + upper_tail == Rational(22, 21);

  h.criterion(4, "window pmf: WO bins, TSO envelope, masses 20/21 and 22/21",
              wo_ok && tso_ok && mass_ok);
}

// 5. Store-run and bottom-store estimates against the exact pieces.
void criterion_store_run(Harness& h) {
  ModelParams params;  // m = 64
  const uint64_t samples = 1000000;

  const auto runs = mc::estimate_store_run_pmf(params, samples, 20240604);
  bool ok = std::abs(runs.frequency(0) - 1.0 / 3) <=
            3 * sigma_of(1.0 / 3, samples);
  for (long mu = 1; mu <= 5 && ok; ++mu) {
    const double floor_value = to_double(an::store_run_lower(mu));
    ok = runs.frequency(mu) >= floor_value - 3 * sigma_of(floor_value, samples);
  }

  const auto bottom = mc::estimate_bottom_store(params, samples, 20240605);
  ok = ok && std::abs(bottom.mean - 2.0 / 3) <= 3 * sigma_of(2.0 / 3, samples);

  for (int m = 1; m <= 6 && ok; ++m) {
    ModelParams small;
    small.m = m;
    const uint64_t n = 400000;
    const auto est = mc::estimate_bottom_store(
        small, n, 20240606 + static_cast<uint64_t>(m));
    const double ref = to_double(an::bottom_store_prob(m));
    ok = std::abs(est.mean - ref) <= 3 * sigma_of(ref, n);
  }

  h.criterion(5, "store-run pmf floor and bottom-store recurrence", ok);
}

// 6. Oracle equivalences.
void criterion_oracles(Harness& h) {
  bool partition_ok = true;
  for (long x = 0; x <= 20 && partition_ok; ++x)
    for (long y = 0; y <= 8 && partition_ok; ++y)
      for (long z = 0; z <= 10 && partition_ok; ++z)
        partition_ok = an::partition_count(x, y, z) ==
                       oracle::brute_partition_count(x, y, z);

  ModelParams params;
  params.m = 12;
  const Rational slack = pow2(-10);
  bool window_ok = true;
  Rational total = 0;
  for (const auto& [gamma, mass] :
       oracle::exact_window_pmf(MemoryModel::wo(), params)) {
    const Rational ref = an::window_pmf(MemoryModel::wo(), gamma);
    window_ok = window_ok && mass - ref <= slack && ref - mass <= slack;
    total += mass;
  }
  window_ok = window_ok && total == 1;

  bool bracket_ok = true;
  RandomStream rng(20240607);
  for (int trial = 0; trial < 10 && bracket_ok; ++trial) {
    RandomStream sub = rng.child(1, static_cast<uint64_t>(trial));
    const int n = 2 + static_cast<int>(sub.next_u64() % 3);
    std::vector<long> lengths(static_cast<std::size_t>(n));
    for (auto& len : lengths) len = static_cast<long>(sub.next_u64() % 5);
    const SegmentLengths segs{lengths};
    bracket_ok = oracle::exact_disjoint(segs, 24).contains(
        an::disjoint_probability(segs));
  }

  h.criterion(6, "oracle equivalence: partitions, WO pmf at m=12, brackets",
              partition_ok && window_ok && bracket_ok);
}

// 7. Asymptotic exponent trend.
void criterion_exponent(Harness& h) {
  bool ok = true;
  double prev = an::sc_disjoint_exponent_ratio(4);
  for (int n = 5; n <= 50 && ok; ++n) {
    const double ratio = an::sc_disjoint_exponent_ratio(n);
    ok = ratio < prev;
    prev = ratio;
  }
  for (int n = 10; n <= 50 && ok; ++n) {
    const double ratio = an::sc_disjoint_exponent_ratio(n);
    ok = ratio > -1.5 && ratio < -1.2;
  }
  h.criterion(7, "exponent ratios decrease over n=4..50 within (-1.5,-1.2)",
              ok);
}

// 8. Inequality suite for the load-clearing bound and its helpers.
void criterion_inequalities(Harness& h) {
  bool ok = true;
  for (long mu = 1; mu <= 8 && ok; ++mu)
    for (long q = 1; q <= 8 && ok; ++q) {
      const Rational exact = an::loads_settle_out_prob(mu, q);
      const Rational lower = an::loads_settle_out_lower(mu, q);
      ok = exact >= lower && (mu != 1 || exact == lower);
    }
  for (long mu = 1; mu < 20 && ok; ++mu)
    ok = an::store_run_factor(mu + 1) >= an::store_run_factor(mu);
  ok = ok && an::store_run_factor(1) == Rational(4, 7) &&
       Rational(1, 3) + Rational(4, 7) + Rational(2, 21) == 1 &&
       an::missing_mass() == Rational(2, 21);
  h.criterion(8, "load-clearing inequalities and store-run identities", ok);
}

// 9. Byte-identical simulate JSON across worker counts.
void criterion_reproducibility(Harness& h) {
  std::string base;
  try {
    base = testsupport::cli_binary() +
           " simulate --model tso --threads 2 --program-len 64"
           " --samples 200000 --seed 424242 --workers ";
  } catch (const std::exception& e) {
    h.criterion(9, "byte-identical simulate JSON across workers 1/4/16", false,
                e.what());
    return;
  }
  const auto w1 = testsupport::run_command(base + "1");
  const auto w4 = testsupport::run_command(base + "4");
  const auto w16 = testsupport::run_command(base + "16");
  const bool ok = w1.exit_code == 0 && w4.exit_code == 0 &&
                  w16.exit_code == 0 && !w1.out.empty() && w1.out == w4.out &&
                  w1.out == w16.out;
  h.criterion(9, "byte-identical simulate JSON across workers 1/4/16", ok);
}

}  // namespace

int main() {
  Harness h;
  criterion_two_thread(h);
  criterion_disjoint_formula(h);
  criterion_simulation(h);
  criterion_window_pmf(h);
  criterion_store_run(h);
  criterion_oracles(h);
  criterion_exponent(h);
  criterion_inequalities(h);
  criterion_reproducibility(h);
  if (h.failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", h.failures);
  return 1;
}
