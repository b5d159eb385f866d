#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bhset/error.hpp"
#include "bhset/multiindex.hpp"

using namespace bhset;

namespace {

using Coords = std::vector<int>;

std::set<Coords> coord_set(const std::vector<MultiIndex>& xs) {
    std::set<Coords> s;
    for (const auto& x : xs) s.insert(x.coords);
    return s;
}

std::set<Coords> coord_set(const std::vector<DifferenceVector>& zs) {
    std::set<Coords> s;
    for (const auto& z : zs) s.insert(z.coords);
    return s;
}

// Independent oracle: difference vectors by subtracting all pairs of
// multi-indices, canonicalized and deduplicated.
std::set<Coords> pairwise_difference_oracle(int h, int n) {
    auto xs = enumerate_multiindices(h, n);
    std::set<Coords> out;
    for (size_t a = 0; a < xs.size(); ++a) {
        for (size_t b = a + 1; b < xs.size(); ++b) {
            Coords z(n);
            for (int i = 0; i < n; ++i) z[i] = xs[a].coords[i] - xs[b].coords[i];
            out.insert(canonical_difference(z).coords);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("multiindex enumeration order and contents") {
    auto x22 = enumerate_multiindices(2, 2);
    REQUIRE(x22.size() == 3);
    CHECK(x22[0].coords == Coords{2, 0});
    CHECK(x22[1].coords == Coords{1, 1});
    CHECK(x22[2].coords == Coords{0, 2});

    auto x13 = enumerate_multiindices(1, 3);
    REQUIRE(x13.size() == 3);
    CHECK(x13[0].coords == Coords{1, 0, 0});
    CHECK(x13[1].coords == Coords{0, 1, 0});
    CHECK(x13[2].coords == Coords{0, 0, 1});

    auto x24 = enumerate_multiindices(2, 4);
    CHECK(x24.size() == 10);
    std::set<Coords> expected{{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2},
                              {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0},
                              {0, 1, 0, 1}, {0, 0, 1, 1}};
    CHECK(coord_set(x24) == expected);

    // Strictly descending lexicographic order.
    for (size_t i = 1; i < x24.size(); ++i) {
        CHECK(lex_less(x24[i].coords, x24[i - 1].coords));
    }
}

TEST_CASE("multiindex counting") {
    CHECK(count_multiindices(2, 4) == 10);
    CHECK(count_multiindices(2, 2) == 3);
    for (int n = 1; n <= 6; ++n) CHECK(count_multiindices(1, n) == n);
    CHECK(count_multiindices(3, 5) == 35);
    CHECK(enumerate_multiindices(3, 5).size() == 35);

    for (int h = 1; h <= 4; ++h) {
        for (int n = 1; n <= 5; ++n) {
            CHECK(mpz_class(enumerate_multiindices(h, n).size()) == count_multiindices(h, n));
        }
    }
}

TEST_CASE("multiindex validation and caps") {
    CHECK_THROWS_AS(count_multiindices(0, 2), Error);
    CHECK_THROWS_AS(enumerate_multiindices(2, 0), Error);
    CHECK_THROWS_AS(enumerate_multiindices(-1, 3), Error);

    try {
        enumerate_multiindices(30, 30, EnumOptions{1000});
        FAIL("expected cap error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::cap_exceeded);
        CHECK(std::string(e.what()).find(count_multiindices(30, 30).get_str()) != std::string::npos);
    }
}

TEST_CASE("multiindex unranking matches enumeration") {
    for (auto [h, n] : {std::pair{3, 4}, std::pair{2, 5}, std::pair{4, 3}}) {
        auto xs = enumerate_multiindices(h, n);
        for (size_t r = 0; r < xs.size(); ++r) {
            CHECK(multiindex_at(h, n, r).coords == xs[r].coords);
        }
    }
}

TEST_CASE("permutation symmetry of X_{h,n}") {
    std::mt19937 rng(7);
    for (auto [h, n] : {std::pair{3, 4}, std::pair{2, 5}}) {
        auto xs = enumerate_multiindices(h, n);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::set<Coords> permuted;
        for (const auto& x : xs) {
            Coords y(n);
            for (int i = 0; i < n; ++i) y[i] = x.coords[perm[i]];
            permuted.insert(y);
        }
        CHECK(permuted == coord_set(xs));
    }
}

TEST_CASE("difference vectors for h=2, n=2") {
    auto zs = enumerate_difference_vectors(2, 2);
    REQUIRE(zs.size() == 2);
    CHECK(zs[0].coords == Coords{1, -1});
    CHECK(zs[1].coords == Coords{2, -2});
    CHECK(zs[0].l1_norm == 2);
    CHECK(zs[1].l1_norm == 4);
}

TEST_CASE("difference vectors for h=2, n=3 include the six reduced forms") {
    auto zs = enumerate_difference_vectors(2, 3);
    // Full canonical set: 3 of type e_i - e_j, 3 of type 2e_i - 2e_j, and 3
    // with coefficient multiset {2, -1, -1}.
    CHECK(zs.size() == 9);
    CHECK(count_difference_vectors(2, 3) == 9);
    auto set = coord_set(zs);
    for (const Coords& z : {Coords{1, -1, 0}, Coords{1, 0, -1}, Coords{0, 1, -1},
                            Coords{1, 1, -2}, Coords{1, -2, 1}, Coords{2, -1, -1}}) {
        CHECK(set.count(z) == 1);
    }
}

TEST_CASE("difference vectors for h=2, n=4 include the 21 reduced forms") {
    auto zs = enumerate_difference_vectors(2, 4);
    CHECK(zs.size() == 27);
    CHECK(count_difference_vectors(2, 4) == 27);
    auto set = coord_set(zs);
    int pair_forms = 0, two_one_one = 0, balanced = 0;
    for (const auto& z : zs) {
        std::multiset<int> mags;
        for (int v : z.coords) {
            if (v != 0) mags.insert(std::abs(v));
        }
        if (mags == std::multiset<int>{1, 1}) ++pair_forms;
        if (mags == std::multiset<int>{2, 1, 1}) ++two_one_one;
        if (mags == std::multiset<int>{1, 1, 1, 1}) ++balanced;
    }
    CHECK(pair_forms == 6);
    CHECK(two_one_one == 12);
    CHECK(balanced == 3);
    CHECK(set.count(Coords{1, -1, -1, 1}) == 1);
}

TEST_CASE("difference vector invariants and realizability") {
    for (auto [h, n] : {std::pair{2, 4}, std::pair{3, 3}, std::pair{3, 5}, std::pair{1, 4}}) {
        auto zs = enumerate_difference_vectors(h, n);
        std::set<Coords> seen;
        for (const auto& z : zs) {
            CHECK(seen.insert(z.coords).second);
            int sum = 0, l1 = 0, pos = 0;
            int first_nonzero = 0;
            for (int v : z.coords) {
                sum += v;
                l1 += std::abs(v);
                pos += std::max(v, 0);
                if (first_nonzero == 0) first_nonzero = v;
            }
            CHECK(sum == 0);
            CHECK(l1 >= 2);
            CHECK(l1 <= 2 * h);
            CHECK(l1 % 2 == 0);
            CHECK(l1 == z.l1_norm);
            CHECK(pos <= h);
            CHECK(first_nonzero > 0);

            auto [x, y] = realize_difference(z, h);
            CHECK(x.h() == h);
            CHECK(y.h() == h);
            for (int i = 0; i < n; ++i) {
                CHECK(x.coords[i] >= 0);
                CHECK(y.coords[i] >= 0);
                CHECK(x.coords[i] - y.coords[i] == z.coords[i]);
            }
        }
        // Ascending lexicographic output order.
        for (size_t i = 1; i < zs.size(); ++i) {
            CHECK(lex_less(zs[i - 1].coords, zs[i].coords));
        }
    }
}

TEST_CASE("direct generation equals the pairwise-subtraction oracle") {
    for (int h = 1; h <= 3; ++h) {
        for (int n = 2; n <= 5; ++n) {
            CAPTURE(h);
            CAPTURE(n);
            CHECK(coord_set(enumerate_difference_vectors(h, n)) == pairwise_difference_oracle(h, n));
        }
    }
}

TEST_CASE("canonicalization rejects the zero vector") {
    CHECK_THROWS_AS(canonical_difference({0, 0, 0}), Error);
    CHECK(canonical_difference({-1, 2, -1}).coords == Coords{1, -2, 1});
    CHECK(canonical_difference({0, 1, -1}).coords == Coords{0, 1, -1});
    CHECK(canonical_difference({0, -1, 1}).coords == Coords{0, 1, -1});
}

TEST_CASE("extremal witnesses") {
    auto [xl, yl] = extremal_witness_lower(3, 3);
    CHECK(xl.coords == Coords{2, 0, 1});
    CHECK(yl.coords == Coords{1, 1, 1});
    int l1 = 0;
    for (int i = 0; i < 3; ++i) l1 += std::abs(xl.coords[i] - yl.coords[i]);
    CHECK(l1 == 2);

    auto [xu, yu] = extremal_witness_upper(2, 4);
    CHECK(xu.coords == Coords{1, 1, 0, 0});
    CHECK(yu.coords == Coords{0, 0, 1, 1});

    CHECK_THROWS_AS(extremal_witness_upper(2, 3), Error);
    CHECK_THROWS_AS(extremal_witness_lower(4, 3), Error);

    auto [x1, y1] = extremal_witness_lower(1, 2);
    CHECK(x1.coords == Coords{1, 0});
    CHECK(y1.coords == Coords{0, 1});
    CHECK_THROWS_AS(extremal_witness_lower(1, 1), Error);

    // Witness distances are attained within the enumerated difference set.
    for (auto [h, n] : {std::pair{2, 4}, std::pair{3, 6}}) {
        auto zs = enumerate_difference_vectors(h, n);
        int min_l1 = 2 * h + 1, max_l1 = 0;
        for (const auto& z : zs) {
            min_l1 = std::min(min_l1, z.l1_norm);
            max_l1 = std::max(max_l1, z.l1_norm);
        }
        CHECK(min_l1 == 2);
        CHECK(max_l1 == 2 * h);
    }
}
