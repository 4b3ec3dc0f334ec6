#pragma once

#include <cstdint>

#include "mcvuln/rational.hpp"
#include "mcvuln/shift.hpp"
#include "mcvuln/types.hpp"

// Exact closed forms for the settled critical-window distribution and the
// shift-process disjointness probability, all in arbitrary-precision
// rationals. Everything here assumes the canonical parameters p = s = 1/2;
// other parameter choices are served by the simulator and the enumeration
// oracle instead.
namespace mcvuln::analytic {

/// Permutation-sum guard for disjoint_probability (the sum has n! terms).
inline constexpr int kDisjointExactMaxThreads = 10;

/// Window-growth pmf in the long-program limit. SC: point mass at 0.
/// WO: 2/3 at 0, 2^-g / 3 for g > 0. TSO has no exact closed form; use
/// window_pmf_bounds. Throws UnsupportedModelError for other models.
Rational window_pmf(const MemoryModel& model, long gamma);

/// TSO window-growth envelope: exactly 2/3 at 0; for g > 0 the value lies in
/// [(6/7) 4^-g, (6/7) 4^-g + (2/21) 2^-g].
RationalInterval window_pmf_bounds(long gamma);

/// Probability that n segments of the given lengths, each shifted by an
/// independent geometric(1/2) offset, end up mutually disjoint (closed
/// intervals). Exact evaluation of
///   2^-(C(n+1,2)-1) / prod_{i=1}^{n-1} (1 - 2^-(n+1-i))
///     * sum_{sigma in Sym_n} prod_{i=1}^{n-1} 2^-((n-i) len[sigma(i)]).
/// Throws ResourceGuardError for n > kDisjointExactMaxThreads.
Rational disjoint_probability(const SegmentLengths& lengths);

/// c(n) = 2 / prod_{i=1}^{n-1} (1 - 2^-(n+1-i)); lies in [2, 4], c(2) = 8/3.
Rational shift_constant(int n);

/// Number of multisets of y positive integers, each at most z, summing to x.
uint64_t partition_count(long x, long y, long z);

/// Pr[exactly q loads sit below the (mu+1)-th lowest store in the initial
/// body, above the critical load] = 2^-(mu+q) C(mu+q-1, q). Requires mu >= 1.
Rational interleaved_loads_pmf(long mu, long q);

/// Exact probability (under TSO) that all q interleaved loads settle out of
/// the bottom mu stores: sum_{d=q}^{mu q} phi(d,q,mu) 2^-d / C(mu+q-1, q).
Rational loads_settle_out_prob(long mu, long q);

/// Lower bound for the same event: (2^-(q-1) - 2^-(mu q)) / C(mu+q-1, q).
/// Requires mu >= 1, q >= 1; coincides with the exact value at mu = 1.
Rational loads_settle_out_lower(long mu, long q);

/// Lower bound on the probability that exactly mu stores sit directly above
/// the critical load once the body has settled (TSO): 1/3 exactly at mu = 0,
/// (4/7) 2^-mu for mu >= 1.
Rational store_run_lower(long mu);

/// The factor h(mu) = 8/7 - (1 - 2^-(mu+1))^-1 + (2/3)(1 - 2^-(mu+2))^-1
/// behind store_run_lower; non-decreasing with h(1) = 4/7.
Rational store_run_factor(long mu);

/// Probability that the bottom settled body slot holds a store after i body
/// rounds (TSO): X_1 = 1/2, X_i = 1/2 + X_{i-1}/4. Requires i >= 1.
Rational bottom_store_prob(long i);

/// Closed form of the same recurrence: 2/3 + (1/4)^(i-1) (1/2 - 2/3).
Rational bottom_store_prob_closed(long i);

/// Limit of bottom_store_prob, 2/3.
Rational bottom_store_limit();

/// Total store-run probability mass not covered by store_run_lower: 2/21.
Rational missing_mass();

/// Two-thread disjointness probability: exactly 1/6 under SC and 7/54 under
/// WO (returned as point intervals); TSO yields [58/441, 58/441 + 1/189].
/// Throws UnsupportedModelError for other models.
RationalInterval two_thread_disjoint_prob(const MemoryModel& model);

/// Disjointness probability for n identically distributed window lengths:
/// c(n) 2^-C(n+1,2) n! E[prod_{i=1}^{n-1} 2^-(i Gamma_i)], with the
/// expectation supplied by the caller (exact or Monte Carlo estimated).
Rational identical_marginal_disjoint_prob(int n, const Rational& expectation);
double identical_marginal_disjoint_prob(int n, double expectation);

/// SC n-thread disjointness in closed form (every window has length 2):
/// c(n) 2^-C(n+1,2) n! 2^-2C(n,2).
Rational sc_disjoint_prob(int n);

/// log2(sc_disjoint_prob(n)) / n^2; tends towards -3/2 from above.
double sc_disjoint_exponent_ratio(int n);

}  // namespace mcvuln::analytic
