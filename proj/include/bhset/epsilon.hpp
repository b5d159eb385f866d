#pragma once

#include <gmpxx.h>

#include "bhset/multiindex.hpp"
#include "bhset/realexpr.hpp"

namespace bhset {

// Rigorous enclosure of eps_{h,n}: 0 < lo <= eps <= hi, with the minimizing
// canonical difference vector.
struct EpsilonBound {
    BigFloat lo, hi;
    DifferenceVector argmin;
    int h = 0;
    int n = 0;
    mpfr_prec_t precision_bits_used = 0;
    // false when distinct candidates remained inseparable at the stopping
    // precision (possible for d >= 2 ties); the enclosure stays sound and
    // argmin is the lexicographically smallest contender.
    bool argmin_unique = true;
};

struct EpsilonOptions {
    mpfr_prec_t start_bits = 64;
    mpfr_prec_t max_bits = 16384;
    // Stop once the enclosure width is below 2^-width_goal_bits * max(1, hi).
    int width_goal_bits = 64;
    std::uint64_t cap = 10'000'000;
    bool parallel = true;
};

// Minimum over all canonical difference vectors z of the linf norm of
// sum_i z_i * theta_i, with precision escalated until every candidate is
// bounded away from zero and the minimizer is separated.
EpsilonBound compute_epsilon(const ThetaSystem& system, int h, const EpsilonOptions& opts = {});

// Enclosure of the linf norm of sum_i z_i * theta_i at the requested
// precision (width contract as eval_interval).
Interval combination_norm_interval(const ThetaSystem& system, const DifferenceVector& z,
                                   mpfr_prec_t precision_bits);

// Least integer q with q > 2*h*m / eps.lo; exact rational comparison.
mpz_class min_modulus(const EpsilonBound& eps, int h, const mpz_class& m);

}  // namespace bhset
