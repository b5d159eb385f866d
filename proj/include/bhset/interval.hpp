#pragma once

#include <gmpxx.h>

#include "bhset/bigfloat.hpp"

namespace bhset {

// Rigorous enclosure [lo, hi] of a real value; endpoints are exact dyadic
// rationals, rounded outward. `precision_bits` records the precision the
// endpoints were computed at.
struct Interval {
    BigFloat lo, hi;
    mpfr_prec_t precision_bits = 0;

    Interval() = default;
    Interval(BigFloat l, BigFloat h, mpfr_prec_t p) : lo(std::move(l)), hi(std::move(h)), precision_bits(p) {}

    bool contains_zero() const { return lo.sgn() <= 0 && hi.sgn() >= 0; }
    bool strictly_positive() const { return lo.sgn() > 0; }
    bool is_point() const { return lo == hi; }
    bool contains(const BigFloat& x) const { return lo.cmp(x) <= 0 && x.cmp(hi) <= 0; }
    bool contains(const Interval& inner) const { return lo.cmp(inner.lo) <= 0 && inner.hi.cmp(hi) <= 0; }

    BigFloat width(mpfr_prec_t prec) const { return BigFloat::sub(hi, lo, prec, MPFR_RNDU); }
};

// Directed interval operations. All results use endpoint precision `prec`.
namespace iv {

inline Interval from_q(const mpq_class& q, mpfr_prec_t prec) {
    return {BigFloat::from_q(q, prec, MPFR_RNDD), BigFloat::from_q(q, prec, MPFR_RNDU), prec};
}

inline Interval from_z(const mpz_class& z, mpfr_prec_t prec) {
    return {BigFloat::from_z(z, prec, MPFR_RNDD), BigFloat::from_z(z, prec, MPFR_RNDU), prec};
}

inline Interval point(const BigFloat& x, mpfr_prec_t prec) {
    return {x, x, prec};
}

inline Interval add(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    return {BigFloat::add(a.lo, b.lo, prec, MPFR_RNDD), BigFloat::add(a.hi, b.hi, prec, MPFR_RNDU), prec};
}

inline Interval sub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    return {BigFloat::sub(a.lo, b.hi, prec, MPFR_RNDD), BigFloat::sub(a.hi, b.lo, prec, MPFR_RNDU), prec};
}

inline Interval neg(const Interval& a) {
    return {BigFloat::neg(a.hi), BigFloat::neg(a.lo), a.precision_bits};
}

// c * [lo, hi] for an integer scalar c (sign-aware endpoint swap).
inline Interval scale_z(const Interval& a, const mpz_class& c, mpfr_prec_t prec) {
    if (sgn(c) >= 0) {
        return {BigFloat::mul_z(a.lo, c, prec, MPFR_RNDD), BigFloat::mul_z(a.hi, c, prec, MPFR_RNDU), prec};
    }
    return {BigFloat::mul_z(a.hi, c, prec, MPFR_RNDD), BigFloat::mul_z(a.lo, c, prec, MPFR_RNDU), prec};
}

inline Interval mul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    // General case: min/max over the four endpoint products, each rounded
    // in the direction it can end up on.
    BigFloat lo = BigFloat::mul(a.lo, b.lo, prec, MPFR_RNDD);
    BigFloat hi = BigFloat::mul(a.lo, b.lo, prec, MPFR_RNDU);
    const BigFloat* as[2] = {&a.lo, &a.hi};
    const BigFloat* bs[2] = {&b.lo, &b.hi};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (i == 0 && j == 0) continue;
            BigFloat d = BigFloat::mul(*as[i], *bs[j], prec, MPFR_RNDD);
            BigFloat u = BigFloat::mul(*as[i], *bs[j], prec, MPFR_RNDU);
            if (d.cmp(lo) < 0) lo = std::move(d);
            if (u.cmp(hi) > 0) hi = std::move(u);
        }
    }
    return {std::move(lo), std::move(hi), prec};
}

inline Interval absval(const Interval& a) {
    if (a.lo.sgn() >= 0) return a;
    if (a.hi.sgn() <= 0) return neg(a);
    BigFloat m = BigFloat::neg(a.lo);
    if (a.hi.cmp(m) > 0) m = a.hi;
    return {BigFloat(a.precision_bits ? a.precision_bits : m.precision()), std::move(m), a.precision_bits};
}

// Pointwise max enclosure: [max(lo_a, lo_b), max(hi_a, hi_b)] (exact, max is monotone).
inline Interval max_of(const Interval& a, const Interval& b) {
    Interval r = a;
    if (b.lo.cmp(r.lo) > 0) r.lo = b.lo;
    if (b.hi.cmp(r.hi) > 0) r.hi = b.hi;
    return r;
}

// sqrt of a nonnegative exact rational, outward.
inline Interval sqrt_q(const mpq_class& r, mpfr_prec_t prec) {
    Interval x = from_q(r, prec);
    return {BigFloat::sqrt(x.lo, prec, MPFR_RNDD), BigFloat::sqrt(x.hi, prec, MPFR_RNDU), prec};
}

}  // namespace iv
}  // namespace bhset
