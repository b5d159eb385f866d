#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bhset/multiindex.hpp"

namespace bhset {

using Point = std::vector<mpz_class>;

struct PointHash {
    size_t operator()(const Point& p) const;
};

// Per sum: number of realizing h-multisets and the enumeration rank of the
// first one (ranks index the descending-lex order of X_{h,n}, so witnesses
// can be reconstructed without storing multi-indices per sum).
struct RepEntry {
    std::uint64_t count = 0;
    std::uint64_t first_rank = 0;
};

using RepCounts = std::unordered_map<Point, RepEntry, PointHash>;

struct CollisionWitness {
    Point sum;
    MultiIndex x, y;      // two distinct multi-indices with equal weighted sums
    bool canonical = true;  // false when found by a racing early-exit scan
};

struct Collision {
    Point sum;
    std::vector<MultiIndex> multiindices;  // all realizations, enumeration order
};

struct VerificationReport {
    int h = 0;
    int set_size = 0;
    std::uint64_t sumset_size = 0;
    mpz_class expected_max;  // binom(n+h-1, h)
    bool is_bh = false;
    std::uint64_t max_representation_count = 0;
    std::vector<Collision> collisions;  // sorted by sum, lexicographically
};

struct VerifyOptions {
    std::uint64_t cap = 100'000'000;
    bool parallel = true;
    bool early_exit = true;  // is_bh_set only: stop at the first collision
};

// Exact representation counts r_{A,h} over all h-multisets of the points.
// OpenMP kernel: X_{h,n} is partitioned across threads by rank and the
// per-thread maps merged; the result is independent of the thread count.
RepCounts representation_counts(const std::vector<Point>& points, int h,
                                const VerifyOptions& opts = {});

// Single-loop reference implementation, kept as the oracle for the kernel.
RepCounts representation_counts_serial(const std::vector<Point>& points, int h,
                                       const VerifyOptions& opts = {});

std::pair<bool, std::optional<CollisionWitness>> is_bh_set(const std::vector<Point>& points, int h,
                                                           const VerifyOptions& opts = {});

// Distinct sums of h elements, sorted lexicographically.
std::vector<Point> sumset(const std::vector<Point>& points, int h, const VerifyOptions& opts = {});

// Full report: counts, sumset size, all collisions with their realizations.
VerificationReport verify_report(const std::vector<Point>& points, int h,
                                 const VerifyOptions& opts = {});

bool point_lex_less(const Point& a, const Point& b);

}  // namespace bhset
