#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace bhset {

// Element of X_{h,n}: n nonnegative integer coordinates summing to h.
struct MultiIndex {
    std::vector<int> coords;

    int n() const { return static_cast<int>(coords.size()); }
    int h() const;
    bool operator==(const MultiIndex& o) const = default;
};

// Canonical difference x - y of two distinct elements of X_{h,n}:
// zero-sum integer vector, L1 norm in [2, 2h] and even, positive part
// summing to at most h, first nonzero coordinate positive.
struct DifferenceVector {
    std::vector<int> coords;
    int l1_norm = 0;

    int n() const { return static_cast<int>(coords.size()); }
    bool operator==(const DifferenceVector& o) const = default;
};

// Lexicographic order on coordinate vectors; used for deterministic
// enumeration order and argmin tie-breaking.
bool lex_less(const std::vector<int>& a, const std::vector<int>& b);

struct EnumOptions {
    std::uint64_t cap = 10'000'000;  // max number of enumerated elements
};

// |X_{h,n}| = binom(n+h-1, h), exact.
mpz_class count_multiindices(int h, int n);

// Number of canonical difference vectors, exact (used for cap prechecks
// and as an independent count oracle).
mpz_class count_difference_vectors(int h, int n);

// All of X_{h,n} in lexicographically descending coordinate order.
std::vector<MultiIndex> enumerate_multiindices(int h, int n, const EnumOptions& opts = {});

// In-place successor in the descending-lex order; false once exhausted.
bool next_multiindex(MultiIndex& x);

// rank-th element (0-based) of the descending-lex order.
MultiIndex multiindex_at(int h, int n, std::uint64_t rank);

// All canonical difference vectors of X_{h,n}, generated directly as
// zero-sum vectors (never by pairwise subtraction), in ascending
// lexicographic order.
std::vector<DifferenceVector> enumerate_difference_vectors(int h, int n, const EnumOptions& opts = {});

// Canonicalize an arbitrary nonzero zero-sum vector: flip sign so the first
// nonzero coordinate is positive.
DifferenceVector canonical_difference(std::vector<int> coords);

// One (x, y) pair realizing z = x - y with x, y in X_{h,n}.
std::pair<MultiIndex, MultiIndex> realize_difference(const DifferenceVector& z, int h);

// The explicit pairs attaining L1 distance 2 (requires n >= h) and
// 2h (requires n >= 2h).
std::pair<MultiIndex, MultiIndex> extremal_witness_lower(int h, int n);
std::pair<MultiIndex, MultiIndex> extremal_witness_upper(int h, int n);

}  // namespace bhset
