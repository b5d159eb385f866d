#include "bhset/gadic.hpp"

#include <algorithm>
#include <set>

#include "bhset/error.hpp"

namespace bhset {

namespace {

void validate_gadic(const mpz_class& g, int level) {
    if (g < 2) throw Error::validation("g must be >= 2, got " + g.get_str());
    if (level < 1) throw Error::validation("level must be >= 1, got " + std::to_string(level));
}

mpz_class g_power(const mpz_class& g, int level) {
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(level));
    return q;
}

void require_positive_theta(const RealExpr& theta, mpfr_prec_t max_bits) {
    if (auto exact = theta.exact_rational()) {
        if (sgn(*exact) <= 0) {
            throw Error::validation("g-adic truncation requires theta > 0, got " + render(theta));
        }
        return;
    }
    mpfr_prec_t prec = 64;
    for (;;) {
        Interval i = theta.eval_raw(prec);
        if (i.lo.sgn() > 0) return;
        if (i.hi.sgn() <= 0) {
            throw Error::validation("g-adic truncation requires theta > 0, got " + render(theta));
        }
        if (prec >= max_bits) {
            throw Error::precision("sign of theta unresolved at precision " + std::to_string(prec));
        }
        prec = std::min<mpfr_prec_t>(prec * 2, max_bits);
    }
}

}  // namespace

mpz_class gadic_truncation(const RealExpr& theta, const mpz_class& g, int level,
                           mpfr_prec_t max_bits) {
    validate_gadic(g, level);
    require_positive_theta(theta, max_bits);
    const mpz_class q = g_power(g, level);

    if (auto exact = theta.exact_rational()) {
        mpq_class scaled = mpq_class(q) * *exact;
        scaled.canonicalize();
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
        return fl;
    }
    mpfr_prec_t prec = 64;
    for (;;) {
        Interval iq = iv::scale_z(theta.eval_raw(prec), q, prec);
        mpz_class fl = iq.lo.floor_z();
        mpz_class fh = iq.hi.floor_z();
        if (fl == fh && iq.lo.cmp(fl) > 0) return fl;
        if (prec >= max_bits) {
            throw Error::precision("floor of g^l * theta ambiguous at precision " +
                                   std::to_string(prec) + " (theta = " + render(theta) + ")");
        }
        prec = std::min<mpfr_prec_t>(prec * 2, max_bits);
    }
}

int min_level(const ThetaSystem& system, const mpz_class& g, const GadicOptions& opts) {
    validate_gadic(g, 1);
    if (system.d != 1) throw Error::validation("g-adic construction is defined for d = 1");
    EpsilonBound eps = compute_epsilon(system, opts.h, opts.epsilon);
    // Smallest l with g^l * eps.lo > 2h, exact.
    const mpq_class lo = eps.lo.to_mpq();
    const mpq_class bound(2 * opts.h);
    mpz_class power = 1;
    for (int level = 1;; ++level) {
        power *= g;
        if (mpq_class(power) * lo > bound) return level;
        if (level > 1'000'000) {
            throw Error::precision("min_level runaway (eps lower bound too small)");
        }
    }
}

std::pair<LatticeSet, ConstructionCertificate> gadic_sidon_set(const ThetaSystem& system,
                                                               const mpz_class& g, int level,
                                                               const GadicOptions& opts) {
    validate_gadic(g, level);
    if (system.d != 1) throw Error::validation("g-adic construction is defined for d = 1");
    if (opts.h < 2) throw Error::validation("h must be >= 2");

    const mpz_class q = g_power(g, level);
    const int h = opts.h;

    EpsilonBound eps = compute_epsilon(system, h, opts.epsilon);
    const mpq_class lo = eps.lo.to_mpq();
    mpq_class separation = mpq_class(q) * lo - mpq_class(2 * h);  // m = 1
    separation.canonicalize();
    const bool certified = sgn(separation) > 0;

    ConstructionParams params;
    params.h = h;
    params.m = 1;
    params.q = q;
    params.positivity_mode = true;
    params.q_certified = certified;

    LatticeSet set;
    set.params = params;
    set.choice_code.assign(static_cast<size_t>(system.n()), digit_to_char(0));
    std::set<mpz_class> seen;
    for (int i = 0; i < system.n(); ++i) {
        mpz_class a = gadic_truncation(system.coord(i, 0), g, level, opts.floor_max_bits);
        if (!seen.insert(a).second) {
            throw Error::validation("duplicate truncation value " + a.get_str() +
                                    " (level too small to separate the thetas)");
        }
        set.points.push_back({std::move(a)});
    }

    ConstructionCertificate cert;
    cert.eps = eps;
    cert.params = params;
    cert.separation_lower_bound = separation;
    cert.certified = certified;
    if (h != 2) cert.note = "h != 2 extension of the base-g truncation statement";
    return {std::move(set), std::move(cert)};
}

}  // namespace bhset
