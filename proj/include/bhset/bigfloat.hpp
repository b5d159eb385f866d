#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace bhset {

// Arbitrary-precision dyadic rational backed by an MPFR float.
//
// Every finite MPFR value is exactly man * 2^exp2, so arithmetic with explicit
// rounding directions yields outward-rounded interval endpoints that are
// exact dyadic rationals, platform-independent and bit-reproducible.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    int sgn() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    // Exact comparisons (independent of the operands' precisions).
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp(const mpz_class& z) const { return mpfr_cmp_z(v_, z.get_mpz_t()); }
    int cmp(long s) const { return mpfr_cmp_si(v_, s); }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    bool operator==(const BigFloat& o) const { return cmp(o) == 0; }

    // --- factories -----------------------------------------------------

    static BigFloat from_si(long s, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, s, rnd);
        return r;
    }
    static BigFloat from_z(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
        return r;
    }
    static BigFloat from_q(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
        return r;
    }

    // --- directed arithmetic (result at `prec`) -------------------------

    static BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_add(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_sub(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_mul(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static BigFloat mul_z(const BigFloat& a, const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_mul_z(r.v_, a.v_, z.get_mpz_t(), rnd);
        return r;
    }
    static BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_div(r.v_, a.v_, b.v_, rnd);
        return r;
    }
    static BigFloat sqrt(const BigFloat& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat r(prec);
        mpfr_sqrt(r.v_, a.v_, rnd);
        return r;
    }
    // Negation and absolute value preserve precision, hence are exact.
    static BigFloat neg(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat abs(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    // --- exact conversions ----------------------------------------------

    mpz_class floor_z() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }
    mpz_class ceil_z() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
        return z;
    }

    // Value as man * 2^exp2 (exact). Zero reports {0, 0}.
    std::pair<mpz_class, long> to_man_exp2() const {
        if (is_zero()) return {mpz_class(0), 0L};
        mpz_class man;
        mpfr_exp_t e = mpfr_get_z_2exp(man.get_mpz_t(), v_);
        return {man, static_cast<long>(e)};
    }

    mpq_class to_mpq() const {
        auto [man, e] = to_man_exp2();
        mpq_class q(man);
        if (e >= 0) {
            mpz_mul_2exp(mpq_numref(q.get_mpq_t()), mpq_numref(q.get_mpq_t()), e);
        } else {
            mpz_class den(1);
            mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), -e);
            q /= mpq_class(den);
        }
        q.canonicalize();
        return q;
    }

    // Decimal rendering with `sig_digits` significant digits, round to nearest.
    std::string to_decimal(size_t sig_digits = 15) const;

private:
    mpfr_t v_;
};

}  // namespace bhset
