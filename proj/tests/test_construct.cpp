#include <doctest.h>

#include <random>
#include <set>

#include "bhset/construct.hpp"
#include "bhset/error.hpp"
#include "bhset/verify.hpp"

using namespace bhset;

namespace {

const ThetaSystem kTheta2 = parse_theta_system({"sqrt:2", "sqrt:3"});
const ThetaSystem kTheta3 = parse_theta_system({"sqrt:2", "sqrt:3", "sqrt:5"});
const ThetaSystem kTheta4 = parse_theta_system({"sqrt:2", "sqrt:3", "sqrt:5", "sqrt:7"});

// Exact bracket check for candidates of q * sqrt(r): a is the floor of
// q*sqrt(r) iff a^2 < q^2 r < (a+1)^2 (q*sqrt(r) never integral for
// non-square r).
bool is_floor_of_q_sqrt(const mpz_class& a, const mpz_class& q, unsigned long r) {
    mpz_class target = q * q * r;
    return a * a < target && target < (a + 1) * (a + 1);
}

std::vector<mpz_class> flat(const LatticeSet& set) {
    std::vector<mpz_class> out;
    for (const auto& p : set.points) out.push_back(p[0]);
    return out;
}

}  // namespace

TEST_CASE("digit candidates reproduce the scaled sqrt brackets") {
    auto c13 = digit_candidates(kTheta2, 13, 1);
    CHECK(c13.list(0, 0) == std::vector<mpz_class>{18, 19});
    CHECK(c13.list(1, 0) == std::vector<mpz_class>{22, 23});
    CHECK(is_floor_of_q_sqrt(18, 13, 2));
    CHECK(is_floor_of_q_sqrt(22, 13, 3));

    auto c44 = digit_candidates(kTheta4, 44, 1);
    CHECK(c44.list(0, 0) == std::vector<mpz_class>{62, 63});
    CHECK(c44.list(1, 0) == std::vector<mpz_class>{76, 77});
    CHECK(c44.list(2, 0) == std::vector<mpz_class>{98, 99});
    CHECK(c44.list(3, 0) == std::vector<mpz_class>{116, 117});

    auto c100 = digit_candidates(kTheta4, 100, 1);
    CHECK(c100.list(0, 0) == std::vector<mpz_class>{141, 142});
    CHECK(c100.list(1, 0) == std::vector<mpz_class>{173, 174});
    CHECK(c100.list(2, 0) == std::vector<mpz_class>{223, 224});
    CHECK(c100.list(3, 0) == std::vector<mpz_class>{264, 265});
}

TEST_CASE("digit candidates at q = 22") {
    auto c22 = digit_candidates(kTheta3, 22, 1);
    CHECK(c22.list(0, 0) == std::vector<mpz_class>{31, 32});
    CHECK(c22.list(1, 0) == std::vector<mpz_class>{38, 39});
    // 49^2 = 2401 < 22^2 * 5 = 2420 < 2500 = 50^2, so floor(22*sqrt5) = 49.
    CHECK(is_floor_of_q_sqrt(49, 22, 5));
    CHECK(c22.list(2, 0) == std::vector<mpz_class>{49, 50});
}

TEST_CASE("digit candidates for exactly integral q*theta") {
    auto sys = parse_theta_system({"rat:3/2"});
    auto c = digit_candidates(sys, 2, 1);
    CHECK(c.list(0, 0) == std::vector<mpz_class>{2, 4});  // q*theta = 3 excluded

    auto c2 = digit_candidates(sys, 2, 2);
    CHECK(c2.list(0, 0) == std::vector<mpz_class>{1, 2, 4, 5});
}

TEST_CASE("digit candidate invariants: count, bracket, approximation law") {
    std::mt19937_64 rng(11);
    const unsigned long squarefree[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15};
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        std::vector<std::string> specs;
        std::set<unsigned long> used;
        while (static_cast<int>(specs.size()) < n) {
            unsigned long r = squarefree[rng() % 10];
            if (used.insert(r).second) specs.push_back("sqrt:" + std::to_string(r));
        }
        auto sys = parse_theta_system(specs);
        mpz_class q(static_cast<unsigned long>(5 + rng() % 200));
        mpz_class m(static_cast<unsigned long>(1 + rng() % 3));
        auto cands = digit_candidates(sys, q, m);
        for (int i = 0; i < n; ++i) {
            const auto& list = cands.list(i, 0);
            CHECK(mpz_class(list.size()) == 2 * m);
            Interval qt = iv::scale_z(sys.coord(i, 0).eval_raw(160), q, 160);
            for (const auto& a : list) {
                // 0 < |a - q*theta| <= m via the enclosure of q*theta.
                Interval gap = iv::absval(iv::sub(iv::from_z(a, 160), qt, 160));
                CHECK(gap.lo.sgn() > 0);
                CHECK(gap.hi.cmp(m) <= 0);
            }
            // Sorted strictly ascending.
            for (size_t k = 1; k < list.size(); ++k) CHECK(list[k - 1] < list[k]);
        }
    }
}

TEST_CASE("build_set selects digits by choice code") {
    ConstructionParams params;
    params.h = 2;
    params.m = 1;

    params.q = 44;
    auto c44 = digit_candidates(kTheta4, 44, 1);
    auto lower = build_set(c44, "0000", params);
    CHECK(flat(lower) == std::vector<mpz_class>{62, 76, 98, 116});

    params.q = 100;
    auto c100 = digit_candidates(kTheta4, 100, 1);
    auto upper = build_set(c100, "1111", params);
    CHECK(flat(upper) == std::vector<mpz_class>{142, 174, 224, 265});

    // Norm bound: 117 <= 44*sqrt7 + 1 = 117.41...
    params.q = 44;
    auto upper44 = build_set(c44, "1111", params);
    CHECK(set_norm_inf(upper44) == 117);
    CHECK(c44.norm_bound_hi.cmp(mpz_class(117)) >= 0);
    CHECK(c44.norm_bound_hi.cmp(mpz_class(118)) < 0);

    CHECK_THROWS_AS(build_set(c44, "000", params), Error);   // wrong length
    CHECK_THROWS_AS(build_set(c44, "0020", params), Error);  // digit out of range
}

TEST_CASE("build_set singleton and duplicate detection") {
    auto single = parse_theta_system({"sqrt:2"});
    ConstructionParams params;
    params.q = 10;
    auto set = build_set(digit_candidates(single, 10, 1), "0", params);
    CHECK(flat(set) == std::vector<mpz_class>{14});

    auto dup = parse_theta_system({"rat:1", "rat:1"});
    try {
        build_set(digit_candidates(dup, 7, 1), "00", params);
        FAIL("expected duplicate-point error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
}

TEST_CASE("set_norm_inf") {
    LatticeSet s;
    s.points = {{mpz_class(18)}, {mpz_class(22)}};
    CHECK(set_norm_inf(s) == 22);
    LatticeSet origin;
    origin.points = {{mpz_class(0), mpz_class(0)}};
    CHECK(set_norm_inf(origin) == 0);
    LatticeSet neg;
    neg.points = {{mpz_class(-31)}, {mpz_class(5)}};
    CHECK(set_norm_inf(neg) == 31);
}

TEST_CASE("construct_certified with explicit q = 13") {
    auto [set, cert] = construct_certified(kTheta2, 2, 1, mpz_class(13));
    CHECK(flat(set) == std::vector<mpz_class>{18, 22});
    CHECK(cert.certified);
    CHECK(cert.params.q_certified);
    CHECK(sgn(cert.separation_lower_bound) > 0);
    // 13 * (sqrt3 - sqrt2) - 4 = 0.13188...
    mpq_class sep = cert.separation_lower_bound;
    CHECK(sep > mpq_class(131, 1000));
    CHECK(sep < mpq_class(132, 1000));
    CHECK(cert.eps.argmin.coords == std::vector<int>{1, -1});
}

TEST_CASE("construct_certified chooses q automatically") {
    auto [set, cert] = construct_certified(kTheta4, 2, 1);
    CHECK(cert.params.q == 44);
    CHECK(flat(set) == std::vector<mpz_class>{62, 76, 98, 116});
    CHECK(cert.certified);
}

TEST_CASE("construct_certified rejects uncertified q unless forced") {
    try {
        construct_certified(kTheta2, 2, 1, mpz_class(5));
        FAIL("expected uncertified error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::uncertified);
    }
    ConstructOptions opts;
    opts.force_uncertified = true;
    auto [set, cert] = construct_certified(kTheta2, 2, 1, mpz_class(5), opts);
    CHECK_FALSE(cert.certified);
    CHECK_FALSE(cert.params.q_certified);
    CHECK(sgn(cert.separation_lower_bound) <= 0);
    CHECK(set.points.size() == 2);
}

TEST_CASE("enumerate_certified_sets counts and order") {
    auto sets13 = enumerate_certified_sets(kTheta2, 2, 1, 13, 10);
    CHECK(sets13.size() == 4);
    CHECK(flat(sets13[0]) == std::vector<mpz_class>{18, 22});
    CHECK(flat(sets13[3]) == std::vector<mpz_class>{19, 23});
    CHECK(sets13[0].choice_code == "00");
    CHECK(sets13[3].choice_code == "11");

    auto sets22 = enumerate_certified_sets(kTheta3, 2, 1, 22, 100);
    CHECK(sets22.size() == 8);

    auto sets44 = enumerate_certified_sets(kTheta4, 2, 1, 44, 100);
    CHECK(sets44.size() == 16);
    std::set<std::string> codes;
    for (const auto& s : sets44) codes.insert(s.choice_code);
    CHECK(codes.size() == 16);
}

TEST_CASE("enumerate_certified_sets limit and sampling") {
    try {
        enumerate_certified_sets(kTheta4, 2, 1, 44, 5);
        FAIL("expected cap error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::cap_exceeded);
    }
    auto a = enumerate_certified_sets(kTheta4, 2, 1, 44, 5, 12345UL);
    auto b = enumerate_certified_sets(kTheta4, 2, 1, 44, 5, 12345UL);
    REQUIRE(a.size() == 5);
    std::set<std::string> codes;
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].choice_code == b[i].choice_code);
        codes.insert(a[i].choice_code);
    }
    CHECK(codes.size() == 5);  // without replacement
}

TEST_CASE("positivity mode") {
    // q*theta < 1 makes the floor candidate 0; positivity bumps it.
    auto sys = parse_theta_system({"sqrt:1/2", "sqrt:5"});
    auto cands = digit_candidates(sys, 1, 1);
    CHECK(cands.list(0, 0) == std::vector<mpz_class>{0, 1});
    CHECK(cands.list(1, 0) == std::vector<mpz_class>{2, 3});

    ConstructionParams params;
    params.q = 1;
    params.positivity_mode = true;
    CHECK_THROWS_AS(build_set(cands, "00", params), Error);

    ConstructOptions opts;
    opts.force_uncertified = true;
    opts.positivity_mode = true;
    auto [set, cert] = construct_certified(sys, 2, 1, mpz_class(1), opts);
    for (const auto& p : set.points) CHECK(p[0] > 0);

    // For m = 1 and q*theta > 1, both candidates are positive already.
    auto c13 = digit_candidates(kTheta2, 13, 1);
    for (int i = 0; i < 2; ++i) {
        for (const auto& a : c13.list(i, 0)) CHECK(a > 0);
    }
}

TEST_CASE("d = 2 construction") {
    auto sys = parse_theta_system({"sqrt:2,sqrt:3", "sqrt:5,sqrt:7"});
    auto [set, cert] = construct_certified(sys, 2, 1);
    CHECK(set.points.size() == 2);
    CHECK(set.points[0].size() == 2);
    CHECK(cert.certified);
    auto [ok, witness] = is_bh_set(set.points, 2);
    CHECK(ok);
}

TEST_CASE("choice code digit alphabet") {
    for (unsigned d = 0; d < 36; ++d) CHECK(char_to_digit(digit_to_char(d)) == d);
    CHECK_THROWS_AS(digit_to_char(36), Error);
    CHECK_THROWS_AS(char_to_digit('!'), Error);
    CHECK_THROWS_AS(digit_candidates(kTheta2, 13, 19), Error);  // 2m > 36
}

TEST_CASE("certified sets pass the brute-force check across a grid") {
    const unsigned long squarefree[] = {2, 3, 5, 6, 7, 10, 11, 13};
    for (int h : {2, 3}) {
        for (int n : {2, 3}) {
            std::vector<std::string> specs;
            for (int i = 0; i < n; ++i) specs.push_back("sqrt:" + std::to_string(squarefree[i]));
            auto sys = parse_theta_system(specs);
            for (long m : {1L, 2L}) {
                auto [set, cert] = construct_certified(sys, h, mpz_class(m));
                REQUIRE(cert.certified);
                auto [ok, witness] = is_bh_set(set.points, h);
                CHECK(ok);
            }
        }
    }
}
