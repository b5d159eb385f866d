#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "bhset/epsilon.hpp"
#include "bhset/realexpr.hpp"

namespace bhset {

struct ConstructionParams {
    int h = 2;
    mpz_class m = 1;
    mpz_class q = 1;
    bool positivity_mode = false;
    // Whether q > 2hm / eps.lo was verified before labeling sets certified.
    bool q_certified = false;
};

// Per coordinate (i, j), the 2m integers a with 0 < |a - q*theta_{i,j}| <= m,
// in ascending order. For non-integral q*theta these are
// floor-(m-1) .. floor, ceil .. ceil+(m-1); the "lower" digit names the floor.
struct DigitCandidates {
    int n = 0;
    int d = 1;
    mpz_class q = 1;
    mpz_class m = 1;
    std::vector<std::vector<mpz_class>> lists;  // index i*d + j, each of size 2m
    std::vector<bool> coord_nonneg;             // theta_{i,j} >= 0 proven
    BigFloat norm_bound_hi;                     // upper endpoint of q*||Theta||inf + m

    const std::vector<mpz_class>& list(int i, int j) const { return lists[static_cast<size_t>(i) * d + j]; }
    // Index of the floor within each (ascending) candidate list.
    size_t lower_index() const { return mpz_class(m - 1).get_ui(); }
};

struct LatticeSet {
    std::vector<std::vector<mpz_class>> points;  // n points in Z^d
    ConstructionParams params;
    std::string choice_code;  // base-2m digits, one per (i, j), point-major
};

struct ConstructionCertificate {
    EpsilonBound eps;
    ConstructionParams params;
    mpq_class separation_lower_bound;  // q * eps.lo - 2hm, exact
    bool certified = false;
    std::string note;  // e.g. marks out-of-scope extensions
};

struct ConstructOptions {
    EpsilonOptions epsilon;
    mpfr_prec_t digit_max_bits = 16384;
    bool force_uncertified = false;  // accept q below the certified threshold
    bool positivity_mode = false;
};

// Digit alphabet for choice codes: 0-9 then a-z, so 2m <= 36.
char digit_to_char(unsigned digit);
unsigned char_to_digit(char c);

DigitCandidates digit_candidates(const ThetaSystem& system, const mpz_class& q, const mpz_class& m,
                                 mpfr_prec_t max_bits = 16384);

// Select one candidate per coordinate according to the choice code and
// validate distinctness and the norm bound q*||Theta||inf + m.
LatticeSet build_set(const DigitCandidates& candidates, const std::string& choice_code,
                     const ConstructionParams& params);

// The default (all-lower, i.e. all-floor) set plus its certificate. If q is
// absent the least admissible modulus is chosen automatically.
std::pair<LatticeSet, ConstructionCertificate> construct_certified(
    const ThetaSystem& system, int h, const mpz_class& m,
    const std::optional<mpz_class>& q = std::nullopt, const ConstructOptions& opts = {});

// All (2m)^(dn) choice codes in base-2m counting order when the family is
// within `limit`; otherwise `limit` distinct codes sampled with `seed`.
std::vector<LatticeSet> enumerate_certified_sets(const ThetaSystem& system, int h,
                                                 const mpz_class& m, const mpz_class& q,
                                                 std::uint64_t limit,
                                                 std::optional<unsigned long> seed = std::nullopt,
                                                 const ConstructOptions& opts = {});

// max_i max_j |a_{i,j}|, exact.
mpz_class set_norm_inf(const LatticeSet& set);

}  // namespace bhset
