#include "bhset/realexpr.hpp"

#include <cctype>
#include <sstream>

#include "bhset/error.hpp"

namespace bhset {

RealExpr RealExpr::rational(mpq_class v) {
    v.canonicalize();
    return RealExpr(Rational{std::move(v)});
}

RealExpr RealExpr::sqrt_rational(mpq_class radicand) {
    radicand.canonicalize();
    if (sgn(radicand) < 0) {
        throw Error::validation("square root of negative rational: " + radicand.get_str());
    }
    return RealExpr(SqrtRational{std::move(radicand)});
}

RealExpr RealExpr::decimal(std::string text) {
    size_t i = 0;
    bool negative = false;
    if (i < text.size() && text[i] == '-') {
        negative = true;
        ++i;
    }
    const size_t whole_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == whole_start) throw Error::validation("malformed decimal literal '" + text + "'");
    std::string digits = text.substr(whole_start, i - whole_start);
    size_t frac_len = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        const size_t frac_start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == frac_start) throw Error::validation("malformed decimal literal '" + text + "'");
        digits += text.substr(frac_start, i - frac_start);
        frac_len = i - frac_start;
    }
    if (i != text.size()) throw Error::validation("malformed decimal literal '" + text + "'");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    mpq_class v(negative ? -num : num, den);
    v.canonicalize();
    return RealExpr(Decimal{std::move(text), std::move(v)});
}

RealExpr RealExpr::sum(std::vector<Term> terms) {
    for (const Term& t : terms) {
        if (t.coeff == 0) throw Error::validation("sum term with zero coefficient");
        if (!t.expr) throw Error::validation("sum term with empty expression");
    }
    return RealExpr(Sum{std::move(terms)});
}

RealExpr RealExpr::sqrt_combination(const std::vector<std::pair<long, unsigned long>>& terms) {
    std::vector<Term> ts;
    ts.reserve(terms.size());
    for (const auto& [c, r] : terms) {
        ts.push_back(Term{mpz_class(c), std::make_shared<RealExpr>(sqrt_rational(mpq_class(r)))});
    }
    return sum(std::move(ts));
}

bool RealExpr::operator==(const RealExpr& o) const {
    if (node_.index() != o.node_.index()) return false;
    if (const auto* a = std::get_if<Rational>(&node_)) {
        return a->value == std::get<Rational>(o.node_).value;
    }
    if (const auto* a = std::get_if<SqrtRational>(&node_)) {
        return a->radicand == std::get<SqrtRational>(o.node_).radicand;
    }
    if (const auto* a = std::get_if<Decimal>(&node_)) {
        return a->text == std::get<Decimal>(o.node_).text;
    }
    const auto& a = std::get<Sum>(node_).terms;
    const auto& b = std::get<Sum>(o.node_).terms;
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].coeff != b[i].coeff || !(*a[i].expr == *b[i].expr)) return false;
    }
    return true;
}

std::optional<mpq_class> RealExpr::exact_rational() const {
    if (const auto* r = std::get_if<Rational>(&node_)) return r->value;
    if (const auto* d = std::get_if<Decimal>(&node_)) return d->value;
    if (const auto* s = std::get_if<SqrtRational>(&node_)) {
        // sqrt(p/q) is rational iff p*q is a perfect square (lowest terms).
        const mpz_class num = s->radicand.get_num();
        const mpz_class den = s->radicand.get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
            mpz_class rn, rd;
            mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
            mpq_class v(rn, rd);
            v.canonicalize();
            return v;
        }
        return std::nullopt;
    }
    mpq_class acc = 0;
    for (const Term& t : std::get<Sum>(node_).terms) {
        auto sub = t.expr->exact_rational();
        if (!sub) return std::nullopt;
        acc += mpq_class(t.coeff) * *sub;
    }
    acc.canonicalize();
    return acc;
}

Interval RealExpr::eval_raw(mpfr_prec_t prec) const {
    if (const auto* r = std::get_if<Rational>(&node_)) return iv::from_q(r->value, prec);
    if (const auto* d = std::get_if<Decimal>(&node_)) return iv::from_q(d->value, prec);
    if (const auto* s = std::get_if<SqrtRational>(&node_)) return iv::sqrt_q(s->radicand, prec);
    Interval acc = iv::from_z(0, prec);
    for (const Term& t : std::get<Sum>(node_).terms) {
        acc = iv::add(acc, iv::scale_z(t.expr->eval_raw(prec), t.coeff, prec), prec);
    }
    return acc;
}

Interval eval_interval(const RealExpr& expr, mpfr_prec_t precision_bits) {
    if (precision_bits < 8) {
        throw Error::validation("precision_bits must be >= 8, got " + std::to_string(precision_bits));
    }
    // Width contract: <= 2^(1-P) * max(1, |value|). Taking the endpoint of
    // smaller magnitude (0 if the interval straddles zero) only strengthens
    // the requirement, so checking against it is sound.
    mpfr_prec_t work = precision_bits + 32;
    for (;;) {
        Interval r = expr.eval_raw(work);
        BigFloat w = r.width(work);
        BigFloat scale = BigFloat::from_si(1, work, MPFR_RNDD);
        if (!r.contains_zero()) {
            BigFloat small = BigFloat::abs(r.lo.sgn() > 0 ? r.lo : r.hi);
            if (scale.cmp(small) < 0) scale = std::move(small);
        }
        BigFloat budget = BigFloat::mul(scale, BigFloat::from_si(2, 32, MPFR_RNDN), work, MPFR_RNDD);
        mpfr_mul_2si(budget.raw(), budget.raw(), -static_cast<long>(precision_bits), MPFR_RNDD);
        if (w.cmp(budget) <= 0) {
            r.precision_bits = precision_bits;
            return r;
        }
        work *= 2;
        if (work > (1 << 26)) {
            throw Error::precision("enclosure width contract not reachable (internal)");
        }
    }
}

// ---------------------------------------------------------------------------
// Grammar
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error::validation("theta parse error at position " + std::to_string(pos) + ": " + msg +
                                " in '" + s + "'");
    }
};

std::string take_digits(Cursor& c) {
    size_t start = c.pos;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
    if (c.pos == start) c.fail("expected digits");
    return c.s.substr(start, c.pos - start);
}

mpz_class parse_int(Cursor& c) {
    bool negative = false;
    if (c.peek() == '-') {
        negative = true;
        ++c.pos;
    }
    mpz_class v(take_digits(c), 10);
    return negative ? -v : v;
}

mpq_class parse_rational(Cursor& c) {
    mpz_class num = parse_int(c);
    mpz_class den = 1;
    if (c.peek() == '/') {
        ++c.pos;
        den = mpz_class(take_digits(c), 10);
        if (den == 0) c.fail("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

bool starts_with(const Cursor& c, const char* kw) {
    return c.s.compare(c.pos, std::string::traits_type::length(kw), kw) == 0;
}

RealExpr parse_atom(Cursor& c, std::vector<std::string>* warnings) {
    if (starts_with(c, "sqrt:")) {
        c.pos += 5;
        return RealExpr::sqrt_rational(parse_rational(c));
    }
    if (starts_with(c, "rat:")) {
        c.pos += 4;
        return RealExpr::rational(parse_rational(c));
    }
    if (starts_with(c, "dec:")) {
        c.pos += 4;
        size_t start = c.pos;
        if (c.peek() == '-') ++c.pos;
        take_digits(c);
        if (c.peek() == '.') {
            ++c.pos;
            take_digits(c);
        }
        std::string token = c.s.substr(start, c.pos - start);
        if (warnings) {
            warnings->push_back("decimal literal '" + token +
                                "' is an exact rational; two or more rationals are never "
                                "Q-independent");
        }
        return RealExpr::decimal(std::move(token));
    }
    c.fail("expected sqrt:, rat: or dec: atom");
}

}  // namespace

RealExpr parse_theta(const std::string& spec, std::vector<std::string>* warnings) {
    Cursor c{spec};
    std::vector<RealExpr::Term> terms;
    bool first = true;
    for (;;) {
        c.skip_ws();
        if (c.done()) {
            if (first) c.fail("empty expression");
            break;
        }
        mpz_class sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            if (c.peek() == '-') sign = -1;
            ++c.pos;
            c.skip_ws();
        } else if (!first) {
            c.fail("expected '+' or '-' between terms");
        }
        // Optional integer coefficient: "<int> * atom".
        mpz_class coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '-') {
            size_t mark = c.pos;
            mpz_class v = parse_int(c);
            c.skip_ws();
            if (c.peek() == '*') {
                ++c.pos;
                c.skip_ws();
                coeff = v;
            } else {
                c.pos = mark;  // bare number was not a coefficient
                c.fail("expected '*' after integer coefficient");
            }
        }
        RealExpr atom = parse_atom(c, warnings);
        coeff *= sign;
        if (coeff == 0) c.fail("zero coefficient");
        terms.push_back(RealExpr::Term{std::move(coeff), std::make_shared<RealExpr>(std::move(atom))});
        first = false;
    }
    if (terms.size() == 1 && terms[0].coeff == 1) {
        return *terms[0].expr;
    }
    return RealExpr::sum(std::move(terms));
}

namespace {

std::string render_atom(const RealExpr& e) {
    if (const auto* r = std::get_if<RealExpr::Rational>(&e.node())) {
        return "rat:" + r->value.get_str();
    }
    if (const auto* s = std::get_if<RealExpr::SqrtRational>(&e.node())) {
        return "sqrt:" + s->radicand.get_str();
    }
    if (const auto* d = std::get_if<RealExpr::Decimal>(&e.node())) {
        return "dec:" + d->text;
    }
    throw Error::validation("nested sums cannot be rendered in the theta grammar");
}

}  // namespace

std::string render(const RealExpr& expr) {
    if (!std::holds_alternative<RealExpr::Sum>(expr.node())) {
        return render_atom(expr);
    }
    const auto& terms = std::get<RealExpr::Sum>(expr.node()).terms;
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms) {
        mpz_class a = abs(t.coeff);
        if (first) {
            if (t.coeff < 0) out << "-";
        } else {
            out << (t.coeff < 0 ? " - " : " + ");
        }
        if (a != 1) out << a.get_str() << "*";
        out << render_atom(*t.expr);
        first = false;
    }
    return out.str();
}

ThetaSystem parse_theta_system(const std::vector<std::string>& specs,
                               std::vector<std::string>* warnings) {
    if (specs.empty()) throw Error::validation("no theta vectors given");
    ThetaSystem sys;
    for (const std::string& spec : specs) {
        std::vector<RealExpr> coords;
        size_t start = 0;
        for (;;) {
            size_t comma = spec.find(',', start);
            std::string piece = spec.substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start);
            coords.push_back(parse_theta(piece, warnings));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (sys.vectors.empty()) {
            sys.d = static_cast<int>(coords.size());
        } else if (static_cast<int>(coords.size()) != sys.d) {
            throw Error::validation("theta vector '" + spec + "' has " +
                                    std::to_string(coords.size()) + " coordinates, expected " +
                                    std::to_string(sys.d));
        }
        sys.vectors.push_back(std::move(coords));
    }
    return sys;
}

Interval system_norm_inf(const ThetaSystem& system, mpfr_prec_t prec) {
    Interval best = iv::from_z(0, prec);
    for (const auto& vec : system.vectors) {
        for (const RealExpr& e : vec) {
            best = iv::max_of(best, iv::absval(e.eval_raw(prec)));
        }
    }
    return best;
}

}  // namespace bhset
