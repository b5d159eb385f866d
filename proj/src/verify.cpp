#include "bhset/verify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bhset/error.hpp"

namespace bhset {

size_t PointHash::operator()(const Point& p) const {
    // FNV-style combine over the limbs of each coordinate.
    size_t h = 1469598103934665603ull;
    auto mix = [&h](size_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const mpz_class& c : p) {
        const mpz_srcptr z = c.get_mpz_t();
        const int size = z->_mp_size;  // sign carried by the size field
        mix(static_cast<size_t>(size));
        const mp_limb_t* limbs = mpz_limbs_read(z);
        for (int i = 0; i < std::abs(size); ++i) mix(static_cast<size_t>(limbs[i]));
    }
    return h;
}

bool point_lex_less(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const mpz_class& x, const mpz_class& y) { return x < y; });
}

namespace {

void validate_points(const std::vector<Point>& points, int h, const VerifyOptions& opts,
                     mpz_class* total_out) {
    if (h < 1) throw Error::validation("h must be >= 1, got " + std::to_string(h));
    if (points.empty()) throw Error::validation("point set is empty");
    const size_t d = points.front().size();
    for (const auto& p : points) {
        if (p.size() != d) throw Error::validation("points have inconsistent dimensions");
    }
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end(), point_lex_less);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error::validation("duplicate input points");
    }
    mpz_class total = count_multiindices(h, static_cast<int>(points.size()));
    if (total > mpz_class(opts.cap)) {
        throw Error::cap("verification needs " + total.get_str() +
                         " multisets, above the cap of " + std::to_string(opts.cap));
    }
    if (total_out) *total_out = total;
}

int thread_count(const VerifyOptions& opts, std::uint64_t count) {
#ifdef _OPENMP
    if (opts.parallel && count >= 4096) return omp_get_max_threads();
#else
    (void)opts;
    (void)count;
#endif
    return 1;
}

// ---------------------------------------------------------------------------
// int64 fast path (d = 1, all sums provably within int64)
//
// X_{h,n} in descending-lex order corresponds one-to-one, rank for rank, to
// the nondecreasing index tuples (i_1 <= ... <= i_h) in ascending-lex order,
// so ranks stay interchangeable with the general kernel.
// ---------------------------------------------------------------------------

struct TupleCursor {
    std::vector<int> idx;       // nondecreasing positions into the point set
    std::vector<long> partial;  // partial[k] = sum of the first k selected values

    TupleCursor(const std::vector<long>& vals, const MultiIndex& start, int h) {
        idx.reserve(h);
        for (int i = 0; i < start.n(); ++i) {
            for (int k = 0; k < start.coords[i]; ++k) idx.push_back(i);
        }
        partial.assign(h + 1, 0);
        for (int k = 0; k < h; ++k) partial[k + 1] = partial[k] + vals[idx[k]];
    }

    long sum() const { return partial.back(); }

    bool advance(const std::vector<long>& vals, int n) {
        const int h = static_cast<int>(idx.size());
        int k = h - 1;
        while (k >= 0 && idx[k] == n - 1) --k;
        if (k < 0) return false;
        const int v = idx[k] + 1;
        for (int j = k; j < h; ++j) {
            idx[j] = v;
            partial[j + 1] = partial[j] + vals[v];
        }
        return true;
    }
};

using I64Counts = std::unordered_map<long, RepEntry>;

bool i64_values(const std::vector<Point>& points, int h, std::vector<long>* out) {
    if (points.front().size() != 1) return false;
    mpz_class bound = 0;
    for (const auto& p : points) {
        mpz_class a = abs(p[0]);
        if (a > bound) bound = a;
    }
    bound *= h;
    if (!bound.fits_slong_p()) return false;
    if (bound >= mpz_class(std::numeric_limits<long>::max() / 2)) return false;
    out->clear();
    out->reserve(points.size());
    for (const auto& p : points) out->push_back(p[0].get_si());
    return true;
}

void accumulate_range_i64(const std::vector<long>& vals, int h, std::uint64_t begin,
                          std::uint64_t end, I64Counts& map) {
    if (begin >= end) return;
    const int n = static_cast<int>(vals.size());
    TupleCursor cur(vals, multiindex_at(h, n, begin), h);
    for (std::uint64_t rank = begin; rank < end; ++rank) {
        auto [it, inserted] = map.try_emplace(cur.sum(), RepEntry{1, rank});
        if (!inserted) {
            it->second.count += 1;
            if (rank < it->second.first_rank) it->second.first_rank = rank;
        }
        if (rank + 1 < end) cur.advance(vals, n);
    }
}

I64Counts counts_i64(const std::vector<long>& vals, int h, std::uint64_t count, int threads) {
    if (threads <= 1) {
        I64Counts map;
        map.reserve(std::min<std::uint64_t>(count, 1u << 22));
        accumulate_range_i64(vals, h, 0, count, map);
        return map;
    }
    std::vector<I64Counts> partial(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
    {
        const int t = omp_get_thread_num();
        const std::uint64_t chunk = (count + threads - 1) / threads;
        const std::uint64_t begin = std::min<std::uint64_t>(t * chunk, count);
        const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, count);
        partial[t].reserve(std::min<std::uint64_t>(end - begin, 1u << 22));
        accumulate_range_i64(vals, h, begin, end, partial[t]);
    }
#endif
    I64Counts merged = std::move(partial[0]);
    for (int t = 1; t < threads; ++t) {
        for (auto& [sum, entry] : partial[t]) {
            auto [it, inserted] = merged.try_emplace(sum, entry);
            if (!inserted) {
                it->second.count += entry.count;
                it->second.first_rank = std::min(it->second.first_rank, entry.first_rank);
            }
        }
        I64Counts().swap(partial[t]);
    }
    return merged;
}

RepCounts to_rep_counts(const I64Counts& map) {
    RepCounts out;
    out.reserve(map.size());
    for (const auto& [sum, entry] : map) {
        out.emplace(Point{mpz_class(sum)}, entry);
    }
    return out;
}

// ---------------------------------------------------------------------------
// general path (any d, unbounded coordinates)
// ---------------------------------------------------------------------------

Point weighted_sum(const std::vector<Point>& points, const MultiIndex& x) {
    const size_t d = points.front().size();
    Point sum(d, mpz_class(0));
    for (size_t i = 0; i < points.size(); ++i) {
        const int c = x.coords[i];
        if (c == 0) continue;
        for (size_t j = 0; j < d; ++j) {
            mpz_addmul_ui(sum[j].get_mpz_t(), points[i][j].get_mpz_t(), static_cast<unsigned long>(c));
        }
    }
    return sum;
}

void accumulate_range(const std::vector<Point>& points, int h, std::uint64_t begin,
                      std::uint64_t end, RepCounts& map) {
    if (begin >= end) return;
    MultiIndex x = multiindex_at(h, static_cast<int>(points.size()), begin);
    for (std::uint64_t rank = begin; rank < end; ++rank) {
        Point sum = weighted_sum(points, x);
        auto [it, inserted] = map.try_emplace(std::move(sum), RepEntry{1, rank});
        if (!inserted) {
            it->second.count += 1;
            if (rank < it->second.first_rank) it->second.first_rank = rank;
        }
        if (rank + 1 < end) next_multiindex(x);
    }
}

RepCounts counts_general(const std::vector<Point>& points, int h, std::uint64_t count,
                         int threads) {
    if (threads <= 1) {
        RepCounts map;
        map.reserve(std::min<std::uint64_t>(count, 1u << 22));
        accumulate_range(points, h, 0, count, map);
        return map;
    }
    std::vector<RepCounts> partial(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
    {
        const int t = omp_get_thread_num();
        const std::uint64_t chunk = (count + threads - 1) / threads;
        const std::uint64_t begin = std::min<std::uint64_t>(t * chunk, count);
        const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, count);
        partial[t].reserve(std::min<std::uint64_t>(end - begin, 1u << 22));
        accumulate_range(points, h, begin, end, partial[t]);
    }
#endif
    RepCounts merged = std::move(partial[0]);
    for (int t = 1; t < threads; ++t) {
        for (auto& [sum, entry] : partial[t]) {
            auto [it, inserted] = merged.try_emplace(sum, entry);
            if (!inserted) {
                it->second.count += entry.count;
                it->second.first_rank = std::min(it->second.first_rank, entry.first_rank);
            }
        }
        RepCounts().swap(partial[t]);
    }
    return merged;
}

}  // namespace

RepCounts representation_counts_serial(const std::vector<Point>& points, int h,
                                       const VerifyOptions& opts) {
    mpz_class total;
    validate_points(points, h, opts, &total);
    const std::uint64_t count = total.get_ui();
    std::vector<long> vals;
    if (i64_values(points, h, &vals)) {
        return to_rep_counts(counts_i64(vals, h, count, 1));
    }
    return counts_general(points, h, count, 1);
}

RepCounts representation_counts(const std::vector<Point>& points, int h,
                                const VerifyOptions& opts) {
    mpz_class total;
    validate_points(points, h, opts, &total);
    const std::uint64_t count = total.get_ui();
    const int threads = thread_count(opts, count);
    std::vector<long> vals;
    if (i64_values(points, h, &vals)) {
        return to_rep_counts(counts_i64(vals, h, count, threads));
    }
    return counts_general(points, h, count, threads);
}

std::pair<bool, std::optional<CollisionWitness>> is_bh_set(const std::vector<Point>& points, int h,
                                                           const VerifyOptions& opts) {
    mpz_class total;
    validate_points(points, h, opts, &total);
    const std::uint64_t count = total.get_ui();
    const int n = static_cast<int>(points.size());

    if (!opts.early_exit) {
        RepCounts map = representation_counts(points, h, opts);
        for (const auto& [sum, entry] : map) {
            (void)sum;
            if (entry.count > 1) {
                // Deterministic canonical witness via the full report.
                VerificationReport rep = verify_report(points, h, opts);
                const Collision& c = rep.collisions.front();
                return {false, CollisionWitness{c.sum, c.multiindices[0], c.multiindices[1], true}};
            }
        }
        return {true, std::nullopt};
    }

    std::vector<long> vals;
    const bool fast = i64_values(points, h, &vals);

#ifdef _OPENMP
    if (thread_count(opts, count) > 1) {
        // Threads race; the first collision found wins. The witness is valid
        // but which one is reported depends on scheduling, hence flagged
        // non-canonical.
        std::atomic<bool> found{false};
        CollisionWitness witness;
        const int threads = omp_get_max_threads();
#pragma omp parallel num_threads(threads)
        {
            const int t = omp_get_thread_num();
            const std::uint64_t chunk = (count + threads - 1) / threads;
            const std::uint64_t begin = std::min<std::uint64_t>(t * chunk, count);
            const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, count);
            if (begin < end && fast) {
                I64Counts local;
                TupleCursor cur(vals, multiindex_at(h, n, begin), h);
                for (std::uint64_t rank = begin;
                     rank < end && !found.load(std::memory_order_relaxed); ++rank) {
                    auto [it, inserted] = local.try_emplace(cur.sum(), RepEntry{1, rank});
                    if (!inserted) {
                        bool expected = false;
                        if (found.compare_exchange_strong(expected, true)) {
                            witness = CollisionWitness{Point{mpz_class(it->first)},
                                                       multiindex_at(h, n, it->second.first_rank),
                                                       multiindex_at(h, n, rank), false};
                        }
                        break;
                    }
                    if (rank + 1 < end) cur.advance(vals, n);
                }
            } else if (begin < end) {
                RepCounts local;
                MultiIndex x = multiindex_at(h, n, begin);
                for (std::uint64_t rank = begin;
                     rank < end && !found.load(std::memory_order_relaxed); ++rank) {
                    Point sum = weighted_sum(points, x);
                    auto [it, inserted] = local.try_emplace(std::move(sum), RepEntry{1, rank});
                    if (!inserted) {
                        bool expected = false;
                        if (found.compare_exchange_strong(expected, true)) {
                            witness = CollisionWitness{it->first, multiindex_at(h, n, it->second.first_rank),
                                                       multiindex_at(h, n, rank), false};
                        }
                        break;
                    }
                    if (rank + 1 < end) next_multiindex(x);
                }
            }
        }
        if (found.load()) return {false, witness};
        // No intra-chunk collision; cross-chunk collisions show up in the
        // merged counts.
        RepCounts map = representation_counts(points, h, opts);
        for (const auto& [sum, entry] : map) {
            if (entry.count > 1) {
                MultiIndex first = multiindex_at(h, n, entry.first_rank);
                MultiIndex x = first;
                std::uint64_t rank = entry.first_rank;
                while (next_multiindex(x)) {
                    ++rank;
                    if (weighted_sum(points, x) == sum) {
                        return {false, CollisionWitness{sum, first, x, false}};
                    }
                }
                throw Error::validation("internal: collision count without second witness");
            }
        }
        return {true, std::nullopt};
    }
#endif

    // Serial early exit: deterministic first collision in enumeration order.
    if (fast) {
        I64Counts map;
        map.reserve(std::min<std::uint64_t>(count, 1u << 22));
        TupleCursor cur(vals, multiindex_at(h, n, 0), h);
        for (std::uint64_t rank = 0; rank < count; ++rank) {
            auto [it, inserted] = map.try_emplace(cur.sum(), RepEntry{1, rank});
            if (!inserted) {
                return {false, CollisionWitness{Point{mpz_class(it->first)},
                                                multiindex_at(h, n, it->second.first_rank),
                                                multiindex_at(h, n, rank), true}};
            }
            if (rank + 1 < count) cur.advance(vals, n);
        }
        return {true, std::nullopt};
    }
    RepCounts map;
    map.reserve(std::min<std::uint64_t>(count, 1u << 22));
    MultiIndex x = multiindex_at(h, n, 0);
    for (std::uint64_t rank = 0; rank < count; ++rank) {
        Point sum = weighted_sum(points, x);
        auto [it, inserted] = map.try_emplace(std::move(sum), RepEntry{1, rank});
        if (!inserted) {
            return {false, CollisionWitness{it->first, multiindex_at(h, n, it->second.first_rank),
                                            x, true}};
        }
        if (rank + 1 < count) next_multiindex(x);
    }
    return {true, std::nullopt};
}

std::vector<Point> sumset(const std::vector<Point>& points, int h, const VerifyOptions& opts) {
    RepCounts map = representation_counts(points, h, opts);
    std::vector<Point> out;
    out.reserve(map.size());
    for (const auto& [sum, entry] : map) {
        (void)entry;
        out.push_back(sum);
    }
    std::sort(out.begin(), out.end(), point_lex_less);
    return out;
}

VerificationReport verify_report(const std::vector<Point>& points, int h,
                                 const VerifyOptions& opts) {
    RepCounts map = representation_counts(points, h, opts);

    VerificationReport rep;
    rep.h = h;
    rep.set_size = static_cast<int>(points.size());
    rep.expected_max = count_multiindices(h, rep.set_size);
    rep.sumset_size = map.size();
    rep.max_representation_count = 0;
    std::uint64_t total_count = 0;
    for (const auto& [sum, entry] : map) {
        (void)sum;
        rep.max_representation_count = std::max(rep.max_representation_count, entry.count);
        total_count += entry.count;
    }
    rep.is_bh = rep.max_representation_count <= 1;

    // The three B_h criteria must agree; their equivalence is a theorem, so a
    // mismatch means a counting bug.
    const bool by_size = mpz_class(rep.sumset_size) == rep.expected_max;
    if (by_size != rep.is_bh || mpz_class(total_count) != rep.expected_max) {
        throw Error::validation("internal: inconsistent representation counts");
    }

    if (!rep.is_bh) {
        // Second pass: collect every realization of each collided sum.
        std::unordered_map<Point, size_t, PointHash> slot;
        for (const auto& [sum, entry] : map) {
            if (entry.count > 1) {
                slot.emplace(sum, rep.collisions.size());
                rep.collisions.push_back(Collision{sum, {}});
            }
        }
        MultiIndex x = multiindex_at(h, rep.set_size, 0);
        for (;;) {
            Point sum = weighted_sum(points, x);
            auto it = slot.find(sum);
            if (it != slot.end()) rep.collisions[it->second].multiindices.push_back(x);
            if (!next_multiindex(x)) break;
        }
        std::sort(rep.collisions.begin(), rep.collisions.end(),
                  [](const Collision& a, const Collision& b) { return point_lex_less(a.sum, b.sum); });
    }
    return rep;
}

}  // namespace bhset
