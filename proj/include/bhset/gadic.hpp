#pragma once

#include <gmpxx.h>

#include "bhset/construct.hpp"

namespace bhset {

struct GadicParams {
    mpz_class g;  // base, >= 2
    int level = 1;
};

struct GadicOptions {
    EpsilonOptions epsilon;
    mpfr_prec_t floor_max_bits = 16384;
    // h = 2 is the supported statement; other h values use the analogous
    // threshold 2h/eps and are labeled as an extension in the certificate.
    int h = 2;
};

// floor(g^level * theta) with a proof: exact for structurally rational theta,
// otherwise by interval refinement. Requires theta > 0 provable.
mpz_class gadic_truncation(const RealExpr& theta, const mpz_class& g, int level,
                           mpfr_prec_t max_bits = 16384);

// Smallest level l with g^l * eps.lo > 2h (h = 2: g^l > 4/eps), the level
// from which truncation sets are certified.
int min_level(const ThetaSystem& system, const mpz_class& g, const GadicOptions& opts = {});

// The truncation set {floor(g^l * theta_i)} with a certificate built via
// q = g^l, m = 1. Below the certified level the set is still returned with
// certified = false.
std::pair<LatticeSet, ConstructionCertificate> gadic_sidon_set(const ThetaSystem& system,
                                                               const mpz_class& g, int level,
                                                               const GadicOptions& opts = {});

}  // namespace bhset
