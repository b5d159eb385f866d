#include "bhset/epsilon.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bhset/error.hpp"

namespace bhset {

namespace {

// theta coordinate enclosures evaluated once per precision level and shared
// across all candidates.
std::vector<Interval> eval_coords(const ThetaSystem& system, mpfr_prec_t prec) {
    std::vector<Interval> coords;
    coords.reserve(static_cast<size_t>(system.n()) * system.d);
    for (const auto& vec : system.vectors) {
        for (const RealExpr& e : vec) coords.push_back(e.eval_raw(prec));
    }
    return coords;
}

// linf norm enclosure of sum_i z_i * theta_i from cached coordinate
// enclosures laid out as coords[i*d + j].
Interval norm_from_coords(const std::vector<Interval>& coords, int d,
                          const std::vector<int>& z, mpfr_prec_t prec) {
    Interval best = iv::from_z(0, prec);
    for (int j = 0; j < d; ++j) {
        Interval acc = iv::from_z(0, prec);
        for (size_t i = 0; i < z.size(); ++i) {
            if (z[i] == 0) continue;
            acc = iv::add(acc, iv::scale_z(coords[i * d + j], z[i], prec), prec);
        }
        best = iv::max_of(best, iv::absval(acc));
    }
    return best;
}

}  // namespace

Interval combination_norm_interval(const ThetaSystem& system, const DifferenceVector& z,
                                   mpfr_prec_t precision_bits) {
    if (z.n() != system.n()) {
        throw Error::validation("difference vector has " + std::to_string(z.n()) +
                                " coordinates, system has n = " + std::to_string(system.n()));
    }
    if (std::all_of(z.coords.begin(), z.coords.end(), [](int v) { return v == 0; })) {
        throw Error::validation("difference vector must be nonzero");
    }
    if (precision_bits < 8) {
        throw Error::validation("precision_bits must be >= 8");
    }
    mpfr_prec_t work = precision_bits + 32;
    for (;;) {
        auto coords = eval_coords(system, work);
        Interval r = norm_from_coords(coords, system.d, z.coords, work);
        BigFloat w = r.width(work);
        BigFloat scale = BigFloat::from_si(1, work, MPFR_RNDD);
        if (r.lo.sgn() > 0 && scale.cmp(r.lo) < 0) scale = r.lo;
        BigFloat budget = std::move(scale);
        mpfr_mul_2si(budget.raw(), budget.raw(), 1 - static_cast<long>(precision_bits), MPFR_RNDD);
        if (w.cmp(budget) <= 0) {
            r.precision_bits = precision_bits;
            return r;
        }
        work *= 2;
        if (work > (1 << 26)) {
            throw Error::precision("norm enclosure width contract not reachable (internal)");
        }
    }
}

namespace {

struct Candidate {
    const DifferenceVector* z;
    Interval enclosure;
    bool needs_refresh = true;
};

void refresh_candidates(std::vector<Candidate>& cands, const std::vector<Interval>& coords,
                        int d, mpfr_prec_t prec, bool parallel) {
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(cands.size()); ++k) {
            if (!cands[k].needs_refresh) continue;
            cands[k].enclosure = norm_from_coords(coords, d, cands[k].z->coords, prec);
        }
        return;
    }
#else
    (void)parallel;
#endif
    for (auto& c : cands) {
        if (!c.needs_refresh) continue;
        c.enclosure = norm_from_coords(coords, d, c.z->coords, prec);
    }
}

}  // namespace

EpsilonBound compute_epsilon(const ThetaSystem& system, int h, const EpsilonOptions& opts) {
    if (h < 1) throw Error::validation("h must be >= 1, got " + std::to_string(h));
    const int n = system.n();
    if (n < 2) {
        throw Error::validation("epsilon needs at least two theta vectors (difference set is empty "
                                "for n = " + std::to_string(n) + ")");
    }
    // A system whose coordinates are all exact rationals is Q-dependent
    // outright (any two rationals are), so the separation constant has no
    // certifying value; reject it the same way a vanishing combination is
    // rejected. Dependencies that do produce a vanishing zero-sum
    // combination are caught below by the precision ladder.
    {
        bool all_rational = true;
        for (const auto& vec : system.vectors) {
            for (const RealExpr& e : vec) {
                if (!e.exact_rational()) {
                    all_rational = false;
                    break;
                }
            }
        }
        if (all_rational) {
            throw Error::precision(
                "independence unresolved: every theta coordinate is an exact rational, so " +
                std::to_string(n) + " >= 2 vectors are Q-dependent");
        }
    }
    const auto diffs = enumerate_difference_vectors(h, n, EnumOptions{opts.cap});

    std::vector<Candidate> cands;
    cands.reserve(diffs.size());
    for (const auto& z : diffs) cands.push_back(Candidate{&z, Interval{}, true});

    mpfr_prec_t prec = std::max<mpfr_prec_t>(opts.start_bits, 8);
    for (;;) {
        auto coords = eval_coords(system, prec);
        refresh_candidates(cands, coords, system.d, prec, opts.parallel);

        // H = smallest upper endpoint: eps <= H. Global lower endpoint:
        // eps >= min lo. Both exact dyadic comparisons.
        size_t hi_idx = 0;
        size_t lo_idx = 0;
        bool all_positive = true;
        for (size_t k = 0; k < cands.size(); ++k) {
            if (cands[k].enclosure.hi.cmp(cands[hi_idx].enclosure.hi) < 0) hi_idx = k;
            if (cands[k].enclosure.lo.cmp(cands[lo_idx].enclosure.lo) < 0) lo_idx = k;
            if (cands[k].enclosure.lo.sgn() <= 0) all_positive = false;
        }
        const BigFloat& H = cands[hi_idx].enclosure.hi;

        // Contenders: candidates whose interval reaches the proven-min region.
        std::vector<size_t> contenders;
        for (size_t k = 0; k < cands.size(); ++k) {
            if (cands[k].enclosure.lo.cmp(H) <= 0) contenders.push_back(k);
        }

        bool width_ok = false;
        {
            BigFloat width = BigFloat::sub(H, cands[lo_idx].enclosure.lo, prec, MPFR_RNDU);
            BigFloat scale = BigFloat::from_si(1, prec, MPFR_RNDD);
            if (H.sgn() > 0 && scale.cmp(H) < 0) scale = H;
            BigFloat goal = std::move(scale);
            mpfr_mul_2si(goal.raw(), goal.raw(), -static_cast<long>(opts.width_goal_bits), MPFR_RNDD);
            width_ok = width.cmp(goal) <= 0;
        }

        const bool separated = contenders.size() == 1;
        if (all_positive && width_ok && separated) {
            EpsilonBound out;
            out.lo = cands[lo_idx].enclosure.lo;
            out.hi = H;
            out.argmin = *cands[contenders.front()].z;
            out.h = h;
            out.n = n;
            out.precision_bits_used = prec;
            out.argmin_unique = true;
            return out;
        }

        if (prec >= opts.max_bits) {
            if (!all_positive) {
                // Some combination could not be bounded away from zero: either
                // the system is Q-dependent or too close to dependent to tell.
                for (const auto& c : cands) {
                    if (c.enclosure.lo.sgn() <= 0) {
                        throw Error::precision(
                            "independence unresolved at precision " + std::to_string(prec) +
                            ": |sum z_i theta_i| not separable from 0 for z = " +
                            [&] {
                                std::string s = "(";
                                for (size_t i = 0; i < c.z->coords.size(); ++i) {
                                    if (i) s += ",";
                                    s += std::to_string(c.z->coords[i]);
                                }
                                return s + ")";
                            }());
                    }
                }
            }
            // Positive everywhere but stopping short of the goal: either an
            // exact/near-exact tie among contenders or a width goal beyond
            // the precision cap. Report the lex-smallest contender; the
            // enclosure [min lo, min hi] stays sound either way.
            EpsilonBound out;
            out.lo = cands[lo_idx].enclosure.lo;
            out.hi = H;
            size_t best = contenders.front();
            for (size_t k : contenders) {
                if (lex_less(cands[k].z->coords, cands[best].z->coords)) best = k;
            }
            out.argmin = *cands[best].z;
            out.h = h;
            out.n = n;
            out.precision_bits_used = prec;
            out.argmin_unique = separated;
            return out;
        }

        // Refine only candidates that still matter: contenders, the global
        // lower endpoint, and anything not yet bounded away from zero.
        for (auto& c : cands) c.needs_refresh = false;
        for (size_t k : contenders) cands[k].needs_refresh = true;
        cands[lo_idx].needs_refresh = true;
        for (auto& c : cands) {
            if (c.enclosure.lo.sgn() <= 0) c.needs_refresh = true;
        }
        prec = std::min<mpfr_prec_t>(prec * 2, opts.max_bits);
    }
}

mpz_class min_modulus(const EpsilonBound& eps, int h, const mpz_class& m) {
    if (h < 1) throw Error::validation("h must be >= 1");
    if (m < 1) throw Error::validation("m must be >= 1");
    if (eps.lo.sgn() <= 0) throw Error::validation("epsilon lower bound must be positive");
    // Least q with q > 2hm / lo, i.e. floor(2hm / lo) + 1, all exact.
    mpq_class lo = eps.lo.to_mpq();
    mpz_class num = 2 * h * m * lo.get_den();
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), lo.get_num().get_mpz_t());
    return q + 1;
}

}  // namespace bhset
