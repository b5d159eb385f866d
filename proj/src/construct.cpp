#include "bhset/construct.hpp"

#include <algorithm>
#include <set>

#include "bhset/error.hpp"

namespace bhset {

char digit_to_char(unsigned digit) {
    if (digit < 10) return static_cast<char>('0' + digit);
    if (digit < 36) return static_cast<char>('a' + digit - 10);
    throw Error::validation("choice-code digit out of range (2m must be <= 36)");
}

unsigned char_to_digit(char c) {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'z') return static_cast<unsigned>(c - 'a' + 10);
    throw Error::validation(std::string("invalid choice-code character '") + c + "'");
}

namespace {

// floor of q*theta with a proof: exact when theta is structurally rational,
// otherwise by refining the enclosure until it contains no integer.
// Returns {floor, is_exact_integer}.
std::pair<mpz_class, bool> scaled_floor(const RealExpr& theta, const mpz_class& q,
                                        mpfr_prec_t max_bits) {
    if (auto exact = theta.exact_rational()) {
        mpq_class scaled = mpq_class(q) * *exact;
        scaled.canonicalize();
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
        return {fl, scaled.get_den() == 1};
    }
    mpfr_prec_t prec = 64;
    for (;;) {
        Interval iq = iv::scale_z(theta.eval_raw(prec), q, prec);
        mpz_class fl = iq.lo.floor_z();
        mpz_class fh = iq.hi.floor_z();
        // No integer inside [lo, hi] iff the floors agree and lo is not that
        // integer itself; then floor(q*theta) is decided and q*theta is not
        // integral.
        if (fl == fh && iq.lo.cmp(fl) > 0) {
            return {fl, false};
        }
        if (prec >= max_bits) {
            throw Error::precision("cannot separate q*theta from an integer at precision " +
                                   std::to_string(prec) + " (theta = " + render(theta) +
                                   ", q = " + q.get_str() + ")");
        }
        prec = std::min<mpfr_prec_t>(prec * 2, max_bits);
    }
}

bool provably_nonneg(const RealExpr& theta, mpfr_prec_t max_bits) {
    if (auto exact = theta.exact_rational()) return sgn(*exact) >= 0;
    mpfr_prec_t prec = 64;
    for (;;) {
        Interval i = theta.eval_raw(prec);
        if (i.lo.sgn() >= 0) return true;
        if (i.hi.sgn() < 0) return false;
        if (prec >= max_bits) return false;  // sign unresolved: do not claim
        prec = std::min<mpfr_prec_t>(prec * 2, max_bits);
    }
}

}  // namespace

DigitCandidates digit_candidates(const ThetaSystem& system, const mpz_class& q, const mpz_class& m,
                                 mpfr_prec_t max_bits) {
    if (q < 1) throw Error::validation("q must be >= 1, got " + q.get_str());
    if (m < 1) throw Error::validation("m must be >= 1, got " + m.get_str());
    if (2 * m > 36) throw Error::validation("m too large for choice codes (need 2m <= 36)");

    DigitCandidates out;
    out.n = system.n();
    out.d = system.d;
    out.q = q;
    out.m = m;
    out.lists.reserve(static_cast<size_t>(out.n) * out.d);
    out.coord_nonneg.reserve(out.lists.capacity());

    for (const auto& vec : system.vectors) {
        for (const RealExpr& theta : vec) {
            auto [fl, integral] = scaled_floor(theta, q, max_bits);
            std::vector<mpz_class> list;
            const unsigned long mm = m.get_ui();
            list.reserve(2 * mm);
            if (integral) {
                // q*theta = fl exactly; exclude it: fl-m .. fl-1, fl+1 .. fl+m.
                for (unsigned long k = mm; k >= 1; --k) list.push_back(fl - static_cast<long>(k));
                for (unsigned long k = 1; k <= mm; ++k) list.push_back(fl + static_cast<long>(k));
            } else {
                // floor-(m-1) .. floor, ceil .. ceil+(m-1).
                for (unsigned long k = mm; k >= 1; --k) list.push_back(fl - static_cast<long>(k) + 1);
                for (unsigned long k = 1; k <= mm; ++k) list.push_back(fl + static_cast<long>(k));
            }
            out.lists.push_back(std::move(list));
            out.coord_nonneg.push_back(provably_nonneg(theta, max_bits));
        }
    }

    // Upper endpoint of q*||Theta||inf + m, for the norm-bound check.
    Interval norm = system_norm_inf(system, 192);
    Interval bound = iv::add(iv::scale_z(norm, q, 192), iv::from_z(m, 192), 192);
    out.norm_bound_hi = bound.hi;
    return out;
}

LatticeSet build_set(const DigitCandidates& candidates, const std::string& choice_code,
                     const ConstructionParams& params) {
    const size_t total = static_cast<size_t>(candidates.n) * candidates.d;
    if (choice_code.size() != total) {
        throw Error::validation("choice code length " + std::to_string(choice_code.size()) +
                                ", expected d*n = " + std::to_string(total));
    }
    const unsigned base = 2 * candidates.m.get_ui();

    LatticeSet set;
    set.params = params;
    set.choice_code = choice_code;
    set.points.resize(candidates.n);
    for (int i = 0; i < candidates.n; ++i) {
        set.points[i].reserve(candidates.d);
        for (int j = 0; j < candidates.d; ++j) {
            const size_t k = static_cast<size_t>(i) * candidates.d + j;
            unsigned digit = char_to_digit(choice_code[k]);
            if (digit >= base) {
                throw Error::validation("choice-code digit " + std::to_string(digit) +
                                        " out of range for 2m = " + std::to_string(base));
            }
            const mpz_class& a = candidates.lists[k][digit];
            if (params.positivity_mode && candidates.coord_nonneg[k] && a <= 0) {
                throw Error::validation("positivity mode: chosen digit " + a.get_str() +
                                        " is not positive for a nonnegative theta coordinate");
            }
            set.points[i].push_back(a);
        }
    }

    // A B_h-set has n distinct elements; colliding candidate boxes are an
    // error, never silently deduplicated.
    std::set<std::vector<mpz_class>> seen;
    for (const auto& p : set.points) {
        if (!seen.insert(p).second) {
            std::string coords;
            for (size_t j = 0; j < p.size(); ++j) coords += (j ? "," : "") + p[j].get_str();
            throw Error::validation("duplicate lattice point (" + coords + ") in constructed set");
        }
    }

    // ||A||inf <= q*||Theta||inf + m.
    mpz_class norm = set_norm_inf(set);
    if (candidates.norm_bound_hi.cmp(norm) < 0) {
        throw Error::validation("constructed set violates the norm bound q*||Theta||inf + m");
    }
    return set;
}

namespace {

std::string default_choice_code(const DigitCandidates& cands, bool positivity_mode) {
    // All-lower (floor) digits; under positivity mode, bump a nonpositive
    // floor up to the smallest positive candidate.
    std::string code(static_cast<size_t>(cands.n) * cands.d, digit_to_char(0));
    const size_t lower = cands.lower_index();
    for (size_t k = 0; k < code.size(); ++k) {
        size_t pick = lower;
        if (positivity_mode && cands.coord_nonneg[k] && cands.lists[k][pick] <= 0) {
            while (pick + 1 < cands.lists[k].size() && cands.lists[k][pick] <= 0) ++pick;
        }
        code[k] = digit_to_char(static_cast<unsigned>(pick));
    }
    return code;
}

}  // namespace

std::pair<LatticeSet, ConstructionCertificate> construct_certified(
    const ThetaSystem& system, int h, const mpz_class& m, const std::optional<mpz_class>& q_in,
    const ConstructOptions& opts) {
    if (h < 2) throw Error::validation("construction requires h >= 2, got " + std::to_string(h));
    if (m < 1) throw Error::validation("m must be >= 1");
    if (!system.independence_claim) {
        throw Error::validation("theta system is not claimed Q-independent");
    }

    EpsilonBound eps = compute_epsilon(system, h, opts.epsilon);
    mpz_class q_min = min_modulus(eps, h, m);
    mpz_class q = q_in.value_or(q_min);
    if (q < 1) throw Error::validation("q must be >= 1, got " + q.get_str());

    // Exact check of the theorem hypothesis against the proven lower bound:
    // q * eps.lo > 2hm.
    mpq_class lo_q = eps.lo.to_mpq();
    mpq_class separation = mpq_class(q) * lo_q - mpq_class(2 * h * m);
    separation.canonicalize();
    const bool certified = sgn(separation) > 0;
    if (!certified && !opts.force_uncertified) {
        throw Error::uncertified("q = " + q.get_str() + " is below the certified threshold 2hm/eps > " +
                                 mpz_class(q_min - 1).get_str() + " (least admissible q = " +
                                 q_min.get_str() + "); pass force to build anyway");
    }

    ConstructionParams params;
    params.h = h;
    params.m = m;
    params.q = q;
    params.positivity_mode = opts.positivity_mode;
    params.q_certified = certified;

    DigitCandidates cands = digit_candidates(system, q, m, opts.digit_max_bits);
    LatticeSet set = build_set(cands, default_choice_code(cands, opts.positivity_mode), params);

    ConstructionCertificate cert;
    cert.eps = eps;
    cert.params = params;
    cert.separation_lower_bound = separation;
    cert.certified = certified;
    return {std::move(set), std::move(cert)};
}

std::vector<LatticeSet> enumerate_certified_sets(const ThetaSystem& system, int h,
                                                 const mpz_class& m, const mpz_class& q,
                                                 std::uint64_t limit,
                                                 std::optional<unsigned long> seed,
                                                 const ConstructOptions& opts) {
    auto [first, cert] = construct_certified(system, h, m, q, opts);
    DigitCandidates cands = digit_candidates(system, q, m, opts.digit_max_bits);

    const size_t positions = static_cast<size_t>(cands.n) * cands.d;
    const unsigned base = 2 * m.get_ui();
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), base, positions);

    auto code_for = [&](const mpz_class& index) {
        std::string code(positions, digit_to_char(0));
        mpz_class rest = index;
        for (size_t k = positions; k-- > 0;) {
            mpz_class digit = rest % base;
            rest /= base;
            code[k] = digit_to_char(static_cast<unsigned>(digit.get_ui()));
        }
        return code;
    };

    std::vector<mpz_class> indices;
    if (total <= mpz_class(limit)) {
        for (mpz_class i = 0; i < total; ++i) indices.push_back(i);
    } else if (seed) {
        // Seeded uniform sampling without replacement; GMP's generator makes
        // the draw reproducible across platforms.
        gmp_randstate_t state;
        gmp_randinit_mt(state);
        gmp_randseed_ui(state, *seed);
        std::set<mpz_class> chosen;
        while (chosen.size() < limit) {
            mpz_class r;
            mpz_urandomm(r.get_mpz_t(), state, total.get_mpz_t());
            chosen.insert(r);
        }
        gmp_randclear(state);
        indices.assign(chosen.begin(), chosen.end());
    } else {
        throw Error::cap("family has " + total.get_str() + " sets, above the limit of " +
                         std::to_string(limit) + "; provide a sampling seed or raise the limit");
    }

    std::vector<LatticeSet> out(indices.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(indices.size()); ++k) {
        out[k] = build_set(cands, code_for(indices[k]), first.params);
    }
    return out;
}

mpz_class set_norm_inf(const LatticeSet& set) {
    mpz_class best = 0;
    for (const auto& p : set.points) {
        for (const mpz_class& c : p) {
            mpz_class a = abs(c);
            if (a > best) best = a;
        }
    }
    return best;
}

}  // namespace bhset
