#include "bhset/multiindex.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bhset/error.hpp"

namespace bhset {

int MultiIndex::h() const {
    return std::accumulate(coords.begin(), coords.end(), 0);
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

static void require_positive(int h, int n) {
    if (h < 1) throw Error::validation("h must be >= 1, got " + std::to_string(h));
    if (n < 1) throw Error::validation("n must be >= 1, got " + std::to_string(n));
}

mpz_class count_multiindices(int h, int n) {
    require_positive(h, n);
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n + h - 1), static_cast<unsigned long>(h));
    return c;
}

static mpz_class binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return c;
}

mpz_class count_difference_vectors(int h, int n) {
    require_positive(h, n);
    // A zero-sum vector with positive-part sum p is determined by the set of
    // k positive positions, the set of l negative positions, and compositions
    // of p into k and l positive parts. Canonical sign keeps one of {z, -z}.
    mpz_class total = 0;
    for (int p = 1; p <= h; ++p) {
        for (int k = 1; k <= std::min(n, p); ++k) {
            for (int l = 1; l + k <= n && l <= p; ++l) {
                total += binom(n, k) * binom(n - k, l) * binom(p - 1, k - 1) * binom(p - 1, l - 1);
            }
        }
    }
    return total / 2;
}

static void check_cap(const mpz_class& count, const EnumOptions& opts, const char* what) {
    if (count > mpz_class(opts.cap)) {
        throw Error::cap(std::string(what) + " enumeration would produce " + count.get_str() +
                         " elements, above the cap of " + std::to_string(opts.cap));
    }
}

bool next_multiindex(MultiIndex& x) {
    const int n = x.n();
    // Descending lex successor: decrement the rightmost positive coordinate
    // left of position n-1 and dump everything to its right one slot over.
    for (int i = n - 2; i >= 0; --i) {
        if (x.coords[i] > 0) {
            int moved = 1;
            for (int j = i + 1; j < n; ++j) {
                moved += x.coords[j];
                x.coords[j] = 0;
            }
            x.coords[i] -= 1;
            x.coords[i + 1] = moved;
            return true;
        }
    }
    return false;
}

std::vector<MultiIndex> enumerate_multiindices(int h, int n, const EnumOptions& opts) {
    mpz_class count = count_multiindices(h, n);
    check_cap(count, opts, "multi-index");
    std::vector<MultiIndex> out;
    out.reserve(count.get_ui());
    MultiIndex x{std::vector<int>(n, 0)};
    x.coords[0] = h;
    do {
        out.push_back(x);
    } while (next_multiindex(x));
    return out;
}

MultiIndex multiindex_at(int h, int n, std::uint64_t rank) {
    require_positive(h, n);
    // Descending-lex unranking: compositions with first coordinate v form a
    // contiguous block of size |X_{h-v, n-1}|, with v = h first.
    MultiIndex x{std::vector<int>(n, 0)};
    mpz_class r(static_cast<unsigned long>(rank));
    int rest = h;
    for (int i = 0; i < n - 1; ++i) {
        for (int v = rest; v >= 0; --v) {
            // Block size |X_{rest-v, n-i-1}| over the remaining slots.
            mpz_class block = binom((rest - v) + (n - i - 1) - 1, rest - v);
            if (r < block) {
                x.coords[i] = v;
                rest -= v;
                break;
            }
            r -= block;
        }
    }
    x.coords[n - 1] = rest;
    return x;
}

namespace {

// Direct generation of canonical zero-sum vectors with positive part p.
// First nonzero coordinate is forced positive, which both canonicalizes
// and halves the search.
void gen_diffs(int idx, int n, int pos_left, int neg_left, bool seen_nonzero,
               std::vector<int>& cur, std::vector<DifferenceVector>& out, int p) {
    if (idx == n) {
        if (pos_left == 0 && neg_left == 0 && seen_nonzero) {
            out.push_back(DifferenceVector{cur, 2 * p});
        }
        return;
    }
    const int lo = seen_nonzero ? -neg_left : 0;
    for (int v = lo; v <= pos_left; ++v) {
        cur[idx] = v;
        const int pl = pos_left - std::max(v, 0);
        const int nl = neg_left + std::min(v, 0);
        // Both budgets must be spendable in the remaining slots.
        if (idx == n - 1 && (pl != 0 || nl != 0)) continue;
        gen_diffs(idx + 1, n, pl, nl, seen_nonzero || v != 0, cur, out, p);
    }
    cur[idx] = 0;
}

}  // namespace

std::vector<DifferenceVector> enumerate_difference_vectors(int h, int n, const EnumOptions& opts) {
    mpz_class count = count_difference_vectors(h, n);
    check_cap(count, opts, "difference-vector");
    std::vector<DifferenceVector> out;
    out.reserve(count.get_ui());
    std::vector<int> cur(n, 0);
    for (int p = 1; p <= h; ++p) {
        gen_diffs(0, n, p, p, false, cur, out, p);
    }
    std::sort(out.begin(), out.end(), [](const DifferenceVector& a, const DifferenceVector& b) {
        return lex_less(a.coords, b.coords);
    });
    return out;
}

DifferenceVector canonical_difference(std::vector<int> coords) {
    int l1 = 0;
    int first_nonzero = 0;
    bool any = false;
    for (int v : coords) {
        l1 += std::abs(v);
        if (!any && v != 0) {
            first_nonzero = v;
            any = true;
        }
    }
    if (!any) throw Error::validation("difference vector must be nonzero");
    if (first_nonzero < 0) {
        for (int& v : coords) v = -v;
    }
    return DifferenceVector{std::move(coords), l1};
}

std::pair<MultiIndex, MultiIndex> realize_difference(const DifferenceVector& z, int h) {
    const int n = z.n();
    MultiIndex x{std::vector<int>(n, 0)}, y{std::vector<int>(n, 0)};
    int pos = 0;
    for (int i = 0; i < n; ++i) {
        x.coords[i] = std::max(z.coords[i], 0);
        y.coords[i] = std::max(-z.coords[i], 0);
        pos += std::max(z.coords[i], 0);
    }
    if (pos > h) throw Error::validation("difference vector has positive part above h");
    // Pad both sides with the same slack so each sums to h.
    x.coords[0] += h - pos;
    y.coords[0] += h - pos;
    return {std::move(x), std::move(y)};
}

std::pair<MultiIndex, MultiIndex> extremal_witness_lower(int h, int n) {
    require_positive(h, n);
    if (h == 1) {
        // Distance 2 = 2h is the only possible distance; needs two slots.
        if (n < 2) {
            throw Error::validation("lower extremal witness requires n >= 2 when h = 1, got n = " +
                                    std::to_string(n));
        }
        MultiIndex x{std::vector<int>(n, 0)}, y{std::vector<int>(n, 0)};
        x.coords[0] = 1;
        y.coords[1] = 1;
        return {std::move(x), std::move(y)};
    }
    if (n < h) {
        throw Error::validation("lower extremal witness requires n >= h, got n = " + std::to_string(n) +
                                ", h = " + std::to_string(h));
    }
    // x = (2, 0, 1^(h-2), 0^(n-h)), y = (1, 1, 1^(h-2), 0^(n-h)).
    MultiIndex x{std::vector<int>(n, 0)}, y{std::vector<int>(n, 0)};
    x.coords[0] = 2;
    y.coords[0] = 1;
    y.coords[1] = 1;
    for (int i = 2; i < h; ++i) {
        x.coords[i] = 1;
        y.coords[i] = 1;
    }
    return {std::move(x), std::move(y)};
}

std::pair<MultiIndex, MultiIndex> extremal_witness_upper(int h, int n) {
    require_positive(h, n);
    if (n < 2 * h) {
        throw Error::validation("upper extremal witness requires n >= 2h, got n = " + std::to_string(n) +
                                ", h = " + std::to_string(h));
    }
    // x = (1^h, 0^h, 0...), y = (0^h, 1^h, 0...).
    MultiIndex x{std::vector<int>(n, 0)}, y{std::vector<int>(n, 0)};
    for (int i = 0; i < h; ++i) {
        x.coords[i] = 1;
        y.coords[h + i] = 1;
    }
    return {std::move(x), std::move(y)};
}

}  // namespace bhset
