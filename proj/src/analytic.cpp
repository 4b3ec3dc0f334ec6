#include "mcvuln/analytic.hpp"

#include <string>
#include <vector>

namespace mcvuln::analytic {

namespace {

long choose2(long k) { return k * (k - 1) / 2; }

Rational one_minus_pow2(long e) { return Rational(1) - pow2(e); }

void require_supported(const MemoryModel& model,
                       std::initializer_list<ModelName> supported) {
  for (ModelName name : supported)
    if (model.name() == name) return;
  throw UnsupportedModelError("no closed form for model '" +
                              to_string(model.name()) + "'");
}

}  // namespace

Rational window_pmf(const MemoryModel& model, long gamma) {
  if (gamma < 0) throw UsageError("gamma must be >= 0");
  require_supported(model, {ModelName::SC, ModelName::WO});
  if (model.name() == ModelName::SC) return gamma == 0 ? 1 : 0;
  if (gamma == 0) return Rational(2, 3);
  return pow2(-gamma) / 3;
}

RationalInterval window_pmf_bounds(long gamma) {
  if (gamma < 0) throw UsageError("gamma must be >= 0");
  if (gamma == 0) return RationalInterval::point(Rational(2, 3));
  RationalInterval out;
  out.lower = Rational(6, 7) * pow2(-2 * gamma);
  out.upper = out.lower + Rational(2, 21) * pow2(-gamma);
  return out;
}

Rational disjoint_probability(const SegmentLengths& lengths) {
  lengths.validate();
  const int n = static_cast<int>(lengths.size());
  if (n > kDisjointExactMaxThreads)
    throw ResourceGuardError(
        "exact disjointness sums n! permutation terms; for n > " +
        std::to_string(kDisjointExactMaxThreads) +
        " use the Monte Carlo estimator or the identical-marginal form");
  if (n == 1) return 1;

  Rational prefactor = pow2(-(choose2(n + 1) - 1));
  for (int i = 1; i <= n - 1; ++i) prefactor /= one_minus_pow2(-(n + 1 - i));

  // sum_{sigma} prod_{i=1}^{n-1} w[i][sigma(i)] with w[i][j] =
  // 2^-((n-i) len[j]) and the last row identically 1, evaluated as an
  // assignment sum over subsets instead of the raw n! enumeration.
  std::vector<std::vector<Rational>> weight(n, std::vector<Rational>(n));
  for (int row = 0; row < n; ++row)
    for (int j = 0; j < n; ++j)
      weight[row][j] = pow2(-(n - 1 - row) * lengths.lengths[j]);

  std::vector<Rational> assignment_sum(std::size_t(1) << n, Rational(0));
  assignment_sum[0] = 1;
  for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
    const int row = __builtin_popcount(mask) - 1;
    Rational total = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (uint32_t(1) << j))
        total += assignment_sum[mask ^ (uint32_t(1) << j)] * weight[row][j];
    assignment_sum[mask] = total;
  }

  return prefactor * assignment_sum[(std::size_t(1) << n) - 1];
}

Rational shift_constant(int n) {
  if (n < 2) throw UsageError("shift constant requires n >= 2");
  Rational denom = 1;
  for (int j = 2; j <= n; ++j) denom *= one_minus_pow2(-j);
  return Rational(2) / denom;
}

uint64_t partition_count(long x, long y, long z) {
  if (x < 0 || y < 0 || z < 0)
    throw UsageError("partition_count arguments must be >= 0");
  if (y == 0) return x == 0 ? 1 : 0;
  if (x < y || x > y * z) return 0;

  // count(x, y, z) = count(x-1, y-1, z)   [some part equals 1]
  //                + count(x-y, y, z-1)   [all parts >= 2, shifted down]
  const std::size_t xs = static_cast<std::size_t>(x) + 1;
  const std::size_t ys = static_cast<std::size_t>(y) + 1;
  const std::size_t zs = static_cast<std::size_t>(z) + 1;
  std::vector<uint64_t> table(xs * ys * zs, 0);
  auto at = [&](long xx, long yy, long zz) -> uint64_t& {
    return table[(static_cast<std::size_t>(xx) * ys +
                  static_cast<std::size_t>(yy)) *
                     zs +
                 static_cast<std::size_t>(zz)];
  };
  for (long zz = 0; zz <= z; ++zz) at(0, 0, zz) = 1;
  for (long zz = 1; zz <= z; ++zz)
    for (long yy = 1; yy <= y; ++yy)
      for (long xx = 1; xx <= x; ++xx) {
        uint64_t total = at(xx - 1, yy - 1, zz);
        if (xx >= yy) total += at(xx - yy, yy, zz - 1);
        at(xx, yy, zz) = total;
      }
  return at(x, y, z);
}

Rational interleaved_loads_pmf(long mu, long q) {
  if (mu < 1) throw UsageError("interleaved_loads_pmf requires mu >= 1");
  if (q < 0) throw UsageError("interleaved_loads_pmf requires q >= 0");
  return pow2(-(mu + q)) * Rational(binomial(mu + q - 1, q));
}

Rational loads_settle_out_prob(long mu, long q) {
  if (mu < 1) throw UsageError("loads_settle_out_prob requires mu >= 1");
  if (q < 0) throw UsageError("loads_settle_out_prob requires q >= 0");
  if (q == 0) return 1;
  Rational numer = 0;
  for (long delta = q; delta <= mu * q; ++delta) {
    const uint64_t ways = partition_count(delta, q, mu);
    if (ways != 0) numer += Rational(mpz_class(ways)) * pow2(-delta);
  }
  return numer / Rational(binomial(mu + q - 1, q));
}

Rational loads_settle_out_lower(long mu, long q) {
  if (mu < 1 || q < 1)
    throw UsageError("loads_settle_out_lower requires mu >= 1 and q >= 1");
  return (pow2(-(q - 1)) - pow2(-mu * q)) / Rational(binomial(mu + q - 1, q));
}

Rational store_run_lower(long mu) {
  if (mu < 0) throw UsageError("store_run_lower requires mu >= 0");
  if (mu == 0) return Rational(1, 3);
  return Rational(4, 7) * pow2(-mu);
}

Rational store_run_factor(long mu) {
  if (mu < 0) throw UsageError("store_run_factor requires mu >= 0");
  return Rational(8, 7) - Rational(1) / one_minus_pow2(-(mu + 1)) +
         Rational(2, 3) / one_minus_pow2(-(mu + 2));
}

Rational bottom_store_prob(long i) {
  if (i < 1) throw UsageError("bottom_store_prob requires i >= 1");
  Rational x(1, 2);
  for (long step = 2; step <= i; ++step) x = Rational(1, 2) + x / 4;
  return x;
}

Rational bottom_store_prob_closed(long i) {
  if (i < 1) throw UsageError("bottom_store_prob_closed requires i >= 1");
  return Rational(2, 3) +
         rational_pow(Rational(1, 4), static_cast<unsigned long>(i - 1)) *
             (Rational(1, 2) - Rational(2, 3));
}

Rational bottom_store_limit() { return Rational(2, 3); }

Rational missing_mass() { return Rational(2, 21); }

RationalInterval two_thread_disjoint_prob(const MemoryModel& model) {
  require_supported(model, {ModelName::SC, ModelName::WO, ModelName::TSO});
  // Pr = (2/3) E[2^-Gamma] with Gamma = gamma + 2 and the window pmfs summed
  // through their closed geometric tails.
  switch (model.name()) {
    case ModelName::SC:
      return RationalInterval::point(Rational(2, 3) * Rational(1, 4));
    case ModelName::WO: {
      // E = (2/3) 2^-2 + (1/3) 2^-2 sum_{g>=1} 4^-g
      const Rational expectation =
          Rational(2, 3) * Rational(1, 4) +
          Rational(1, 3) * Rational(1, 4) * geometric_tail(Rational(1, 4), 1);
      return RationalInterval::point(Rational(2, 3) * expectation);
    }
    default: {
      // E_low = (2/3) 2^-2 + (6/7) 2^-2 sum_{g>=1} 8^-g; the residual term
      // adds at most (2/21) 2^-2 sum_{g>=1} 4^-g.
      const Rational low_expectation =
          Rational(2, 3) * Rational(1, 4) +
          Rational(6, 7) * Rational(1, 4) * geometric_tail(Rational(1, 8), 1);
      const Rational residual =
          Rational(2, 21) * Rational(1, 4) * geometric_tail(Rational(1, 4), 1);
      RationalInterval out;
      out.lower = Rational(2, 3) * low_expectation;
      out.upper = Rational(2, 3) * (low_expectation + residual);
      return out;
    }
  }
}

Rational identical_marginal_disjoint_prob(int n, const Rational& expectation) {
  if (n < 2) throw UsageError("identical-marginal form requires n >= 2");
  return shift_constant(n) * pow2(-choose2(n + 1)) *
         Rational(factorial(static_cast<unsigned long>(n))) * expectation;
}

double identical_marginal_disjoint_prob(int n, double expectation) {
  if (n < 2) throw UsageError("identical-marginal form requires n >= 2");
  const Rational prefactor =
      shift_constant(n) * pow2(-choose2(n + 1)) *
      Rational(factorial(static_cast<unsigned long>(n)));
  return to_double(prefactor) * expectation;
}

Rational sc_disjoint_prob(int n) {
  if (n < 2) throw UsageError("sc_disjoint_prob requires n >= 2");
  return shift_constant(n) * pow2(-choose2(n + 1)) *
         Rational(factorial(static_cast<unsigned long>(n))) *
         pow2(-2 * choose2(n));
}

double sc_disjoint_exponent_ratio(int n) {
  if (n < 2) throw UsageError("sc_disjoint_exponent_ratio requires n >= 2");
  return log2_rational(sc_disjoint_prob(n)) /
         (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace mcvuln::analytic
