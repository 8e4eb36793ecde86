#include <doctest.h>

#include <cmath>
#include <limits>

#include "asymcyc/growth.hpp"

using namespace asymcyc::growth;

namespace {
GrowthSequence inv_factorial(int N) {
    return make_generated({"1/n!", {}, {{GeneratorAtom::Kind::Factorial, 1, 0}}}, N);
}
GrowthSequence ones(int N) { return make_generated({"1", {}, {}}, N); }
GrowthSequence geometric(double a, int N) {
    return make_generated({"a^n", {{GeneratorAtom::Kind::Power, a, 0}}, {}}, N);
}
}  // namespace

TEST_CASE("precedes_prefix: factorial decay dominates geometric probes") {
    auto v = precedes_prefix(inv_factorial(40), ones(40), {1, 2, 4, 8}, 40);
    CHECK(v.relation == Relation::HoldsOnPrefix);
    CHECK(v.prefix_length == 40);
    CHECK(v.probes.size() == 4);
}

TEST_CASE("precedes_prefix: constant ratio violates at r = 2") {
    auto v = precedes_prefix(ones(40), ones(40), {2}, 40);
    CHECK(v.relation == Relation::ViolatedAt);
    CHECK(v.violated_r == 2.0);
    // 2^n crosses 1e6 at n = 20 with a strictly increasing tail
    CHECK(v.violated_n == 20);
    CHECK(v.probes[0].witness_value > 1e6);
}

TEST_CASE("precedes_prefix: constant ratio at r = 1 is inconclusive, not a fake witness") {
    auto v = precedes_prefix(ones(40), ones(40), {1}, 40);
    CHECK(v.relation == Relation::Inconclusive);
}

TEST_CASE("precedes_prefix: the entire class seed n!/(2n)! lies in E(1)") {
    auto seq = make_generated({"n!/(2n)!",
                               {{GeneratorAtom::Kind::Factorial, 1, 0}},
                               {{GeneratorAtom::Kind::Factorial, 2, 0}}},
                              40);
    auto v = precedes_prefix(seq, ones(40), {1, 2, 4, 8}, 40);
    CHECK(v.relation == Relation::HoldsOnPrefix);
}

TEST_CASE("precedes_prefix rejects bad input") {
    CHECK_THROWS(precedes_prefix(ones(10), ones(10), {}, 10));
    CHECK_THROWS(precedes_prefix(ones(10), ones(10), {1}, 11));
    CHECK_THROWS(precedes_prefix(ones(10), ones(10), {-1}, 10));
}

TEST_CASE("nth_root_profile spot values") {
    auto prof = nth_root_profile(inv_factorial(12), ones(12), 12);
    CHECK(prof[9] == doctest::Approx(0.2208125).epsilon(1e-5));  // (1/10!)^{1/10}
    for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i] < prof[i - 1]);

    auto constant = nth_root_profile(ones(10), ones(10), 10);
    for (double v : constant) CHECK(v == doctest::Approx(1.0));

    // |phi_{2n}| = (n+1)/(2^n n!): below 1/2 from n = 4 on
    auto phis = make_generated({"(n+1)/(2^n n!)",
                                {{GeneratorAtom::Kind::Linear, 1, 1}},
                                {{GeneratorAtom::Kind::Power, 2, 0},
                                 {GeneratorAtom::Kind::Factorial, 1, 0}}},
                               12);
    auto prof2 = nth_root_profile(phis, ones(12), 12);
    CHECK(prof2[3] == doctest::Approx(0.3378).epsilon(1e-3));  // (5/384)^{1/4}
    for (int n = 4; n <= 12; ++n) CHECK(prof2[static_cast<std::size_t>(n - 1)] < 0.5);
}

TEST_CASE("radius_estimate: geometric series within 5 percent") {
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        double r = radius_estimate(geometric(a, 40), 40);
        CHECK(r == doctest::Approx(1.0 / a).epsilon(0.05));
    }
}

TEST_CASE("radius_estimate: exponential series reported as infinite") {
    // (1/n!)^{1/n} dips below the 0.1 floor once the tail window starts at n >= 32
    double r = radius_estimate(inv_factorial(64), 64);
    CHECK(std::isinf(r));
}

TEST_CASE("radius_estimate: universal-cocycle entire-test coefficients give ~1/2") {
    auto coeffs = make_generated({"(2n)! (n+1) / (2^n n! n!)",
                                  {{GeneratorAtom::Kind::Factorial, 2, 0},
                                   {GeneratorAtom::Kind::Linear, 1, 1}},
                                  {{GeneratorAtom::Kind::Power, 2, 0},
                                   {GeneratorAtom::Kind::Factorial, 1, 0},
                                   {GeneratorAtom::Kind::Factorial, 1, 0}}},
                                 40);
    double r = radius_estimate(coeffs, 40);
    CHECK(r > 0.45);
    CHECK(r < 0.55);
}

TEST_CASE("entire_test verdicts") {
    // |phi_{2n}| = n!/(2n)! makes the weighted coefficients exactly 1: radius 1,
    // the boundary case, which must NOT be entire-consistent
    std::vector<double> boundary;
    for (int n = 0; n <= 40; ++n) {
        double v = std::exp(std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 1.0));
        boundary.push_back(v);
    }
    auto b = entire_test(boundary, 0, 40);
    CHECK_FALSE(b.entire_consistent);
    CHECK(b.radius == doctest::Approx(1.0).epsilon(0.01));

    // norms 1/(2n)! make the coefficients 1/n!: super-geometric decay
    std::vector<double> fast;
    for (int n = 0; n <= 64; ++n) fast.push_back(std::exp(-std::lgamma(2.0 * n + 1.0)));
    auto f = entire_test(fast, 0, 64);
    CHECK(f.entire_consistent);
    CHECK(std::isinf(f.radius));

    // universal cocycle norms (n+1)/(2^n n!): radius ~ 1/2, not entire
    std::vector<double> uni;
    for (int n = 0; n <= 40; ++n)
        uni.push_back((n + 1.0) * std::exp(-n * std::log(2.0) - std::lgamma(n + 1.0)));
    auto u = entire_test(uni, 0, 40);
    CHECK_FALSE(u.entire_consistent);
    CHECK(u.radius == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("holds_on_prefix implies the nth-root tail stays below 1/r_max") {
    // property: on every generated pair with a holds verdict, the root profile
    // over the decay window is below 1/r_max
    const int N = 64;
    std::vector<std::pair<GrowthSequence, double>> pairs;
    pairs.emplace_back(inv_factorial(N), 8.0);
    pairs.emplace_back(make_generated({"n!/(2n)!",
                                       {{GeneratorAtom::Kind::Factorial, 1, 0}},
                                       {{GeneratorAtom::Kind::Factorial, 2, 0}}},
                                      N),
                       4.0);
    pairs.emplace_back(geometric(0.05, N), 8.0);
    for (auto& [seq, rmax] : pairs) {
        auto v = precedes_prefix(seq, ones(N), {1.0, rmax}, N);
        REQUIRE(v.relation == Relation::HoldsOnPrefix);
        auto prof = nth_root_profile(seq, ones(N), N);
        double tail_max = 0.0;
        for (int n = N - 5; n <= N; ++n) tail_max = std::max(tail_max, prof[static_cast<std::size_t>(n - 1)]);
        CHECK(tail_max < 1.0 / rmax);
    }
}

TEST_CASE("E-class absorption: lambda^n n^a factors do not change the verdict") {
    const int N = 256;
    auto base = inv_factorial(N);
    auto plain = precedes_prefix(base, ones(N), {1, 2, 4, 8}, N);
    REQUIRE(plain.relation == Relation::HoldsOnPrefix);
    for (double lambda : {2.0, 10.0}) {
        for (double a : {1.0, 3.0}) {
            auto v = precedes_prefix(base.absorbed(lambda, a), ones(N), {1, 2, 4, 8}, N);
            CHECK(v.relation == plain.relation);
        }
    }
    // and a genuinely violating pair stays violating after absorption
    auto bad = precedes_prefix(ones(N), ones(N), {2}, N);
    auto bad2 = precedes_prefix(ones(N).absorbed(2.0, 1.0), ones(N), {2}, N);
    CHECK(bad.relation == Relation::ViolatedAt);
    CHECK(bad2.relation == Relation::ViolatedAt);
}

TEST_CASE("generated sequences re-evaluate reproducibly") {
    auto s1 = inv_factorial(30);
    auto s2 = inv_factorial(30);
    for (int n = 0; n <= 30; ++n) CHECK(s1.term(n) == s2.term(n));
    CHECK_THROWS(GrowthSequence::tabulated("bad", {1.0, -2.0}));
}
