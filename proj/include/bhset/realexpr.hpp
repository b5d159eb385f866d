#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bhset/interval.hpp"

namespace bhset {

// Symbolic real number: exact rational, square root of a nonnegative
// rational, exact decimal literal, or an integer linear combination of
// such expressions.
class RealExpr {
public:
    struct Rational {
        mpq_class value;  // lowest terms, positive denominator
    };
    struct SqrtRational {
        mpq_class radicand;  // >= 0
    };
    struct Decimal {
        std::string text;  // as written, e.g. "1.4142"
        mpq_class value;   // exact rational reading
    };
    struct Term {
        mpz_class coeff;  // nonzero
        std::shared_ptr<const RealExpr> expr;
    };
    struct Sum {
        std::vector<Term> terms;
    };
    using Node = std::variant<Rational, SqrtRational, Decimal, Sum>;

    static RealExpr rational(mpq_class v);
    static RealExpr sqrt_rational(mpq_class radicand);
    static RealExpr decimal(std::string text);
    static RealExpr sum(std::vector<Term> terms);

    // Convenience: sum of coeff * sqrt(radicand) pairs.
    static RealExpr sqrt_combination(const std::vector<std::pair<long, unsigned long>>& terms);

    const Node& node() const { return node_; }
    bool operator==(const RealExpr& o) const;

    // Exact rational value, when the expression is structurally rational
    // (includes square roots of perfect squares). nullopt otherwise.
    std::optional<mpq_class> exact_rational() const;

    // Enclosure with all MPFR work done at `working_prec`; no width contract.
    Interval eval_raw(mpfr_prec_t working_prec) const;

private:
    explicit RealExpr(Node n) : node_(std::move(n)) {}
    Node node_;
};

// Sound enclosure with width <= 2^(1-precision_bits) * max(1, |value|);
// internally escalates the working precision until the contract holds.
Interval eval_interval(const RealExpr& expr, mpfr_prec_t precision_bits);

// Grammar (see README for the EBNF):
//   expr   := term ((+|-) term)*
//   term   := [int *] atom
//   atom   := sqrt:RAT | rat:RAT | dec:DEC
//   RAT    := [-]digits[/digits],  DEC := [-]digits[.digits]
RealExpr parse_theta(const std::string& spec, std::vector<std::string>* warnings = nullptr);

// Canonical text form; parse_theta(render(e)) == e.
std::string render(const RealExpr& expr);

// The n input vectors in R^d, coordinate expressions per vector.
struct ThetaSystem {
    int d = 1;
    std::vector<std::vector<RealExpr>> vectors;
    bool independence_claim = true;  // user assertion, never verified

    int n() const { return static_cast<int>(vectors.size()); }
    const RealExpr& coord(int i, int j) const { return vectors[i][j]; }
};

// Build a system from per-vector specs; coordinates separated by ','.
ThetaSystem parse_theta_system(const std::vector<std::string>& specs,
                               std::vector<std::string>* warnings = nullptr);

// Enclosure of max_{i,j} |theta_{i,j}| at the given working precision.
Interval system_norm_inf(const ThetaSystem& system, mpfr_prec_t working_prec);

}  // namespace bhset
