#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "ssavg/arith.hpp"
#include "ssavg/constants.hpp"
#include "ssavg/curves.hpp"
#include "ssavg/heuristic.hpp"

using namespace ssavg;

TEST_CASE("sato_tate_density") {
    CHECK(sato_tate_density(M_PI / 2) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(sato_tate_density(0.0) == 0.0);
    CHECK(sato_tate_density(M_PI) == doctest::Approx(0.0));
    CHECK_THROWS_AS(sato_tate_density(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(sato_tate_density(3.3), std::invalid_argument);
    // quadrature: integral over [0, pi] is 1
    const int n = 200000;
    double h = M_PI / n, sum = 0;
    for (int i = 0; i < n; ++i) sum += sato_tate_density((i + 0.5) * h) * h;
    CHECK(std::abs(sum - 1.0) < 1e-10);
}

TEST_CASE("semicircle_density") {
    CHECK(semicircle_density(0.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(semicircle_density(1.0) == 0.0);
    CHECK(semicircle_density(-1.0) == 0.0);
    CHECK_THROWS_AS(semicircle_density(1.5), std::invalid_argument);
    // integral over [-1,1] via the angle substitution xi = cos(theta)
    const int n = 200000;
    double h = M_PI / n, sum = 0;
    for (int i = 0; i < n; ++i) {
        double th = (i + 0.5) * h;
        sum += semicircle_density(std::cos(th)) * std::sin(th) * h;
    }
    CHECK(std::abs(sum - 1.0) < 1e-10);
}

TEST_CASE("trace_fraction examples") {
    CHECK(trace_fraction(2, 0) == Rational(4, 3));
    for (long long l : {3LL, 5LL, 7LL})
        CHECK(trace_fraction(l, 0) == Rational(l * l, l * l - 1));
    CHECK(trace_fraction(1, 0) == Rational(1));
    CHECK(trace_fraction(12, -1) == trace_fraction(12, 11));
    CHECK_THROWS_AS(trace_fraction(61, 0), std::invalid_argument);
}

TEST_CASE("gl2 histogram matches the four-fold brute loop") {
    for (long long M : {2LL, 3LL, 4LL, 5LL, 6LL, 8LL, 9LL, 12LL}) {
        auto fast = gl2_trace_histogram(M);
        auto slow = oracles::gl2_hist_brute(M);
        REQUIRE(fast.first == slow.first);
        REQUIRE(fast.second == slow.second);
    }
}

TEST_CASE("group order formula") {
    for (long long M : {2LL, 3LL, 4LL, 6LL, 10LL, 12LL}) {
        auto [hist, order] = gl2_trace_histogram(M);
        double expected = std::pow((double)M, 4);
        for (auto [p, e] : factorize(M).factors)
            expected *= (1.0 - 1.0 / p) * (1.0 - 1.0 / ((double)p * p));
        CHECK((double)order == doctest::Approx(expected));
    }
}

TEST_CASE("trace fractions average to one") {
    for (long long M = 1; M <= 30; ++M) {
        Rational sum(0);
        for (long long t = 0; t < M; ++t) sum += trace_fraction(M, t);
        REQUIRE(sum == Rational(M));
    }
}

TEST_CASE("trace fraction multiplicativity across coprime levels") {
    auto F = [](long long M, long long t) {
        auto [hist, order] = gl2_trace_histogram(M);
        return Rational(M, 1) * Rational(hist[(size_t)(((t % M) + M) % M)], order);
    };
    for (auto [m1, m2] : std::vector<std::pair<long long, long long>>{
             {2, 3}, {3, 4}, {4, 9}, {5, 12}, {7, 12}, {11, 12}}) {
        long long M = m1 * m2;
        for (long long t = 0; t < M; ++t)
            REQUIRE(F(M, t) == F(m1, t) * F(m2, t));
    }
}

TEST_CASE("torsion_indicator") {
    CHECK(torsion_indicator(5, 7, 1) == 1);
    CHECK(torsion_indicator(0, 7, 4) == 4);  // 0 = 7+1 mod 4
    CHECK(torsion_indicator(0, 13, 4) == 0); // 13+1 = 2 mod 4
    CHECK(torsion_indicator(-5, 5, 4) == 0); // -5 = 3, p+1 = 2 mod 4
    CHECK(torsion_indicator(-6, 5, 4) == 4); // both are 2 mod 4
    CHECK(torsion_indicator(-6, 5, 3) == 3); // -6 = 6 mod 3
    CHECK_THROWS_AS(torsion_indicator(0, 5, 0), std::invalid_argument);
}

TEST_CASE("model_normalizer approaches 1/(2 sqrt p)") {
    // The Riemann-sum error oscillates with frac(2 sqrt p) at the 1e-5 scale,
    // so the decay is asserted with that allowance (measured: 1.8e-4, 2.6e-6,
    // 3.1e-6 at these primes).
    double prev = 10;
    for (long long p : {1009LL, 10007LL, 1000003LL}) {
        double scaled = 2.0 * std::sqrt((double)p) * model_normalizer(p, 1, 1);
        CHECK(std::abs(scaled - 1.0) < std::abs(prev - 1.0) + 5e-6);
        prev = scaled;
    }
    CHECK(std::abs(prev - 1.0) < 0.01);
    // parity restriction with k = 2: the torsion factor doubles the survivors
    double scaled2 = 2.0 * std::sqrt(1000003.0) * model_normalizer(1000003, 1, 2);
    CHECK(std::abs(scaled2 - 1.0) < 0.01);
}

TEST_CASE("model_normalizer rejects empty support") {
    // p + 1 = 6 mod 11 has no representative inside the Hasse interval of p=5
    CHECK_THROWS_AS(model_normalizer(5, 1, 11), std::domain_error);
}

TEST_CASE("predicted_constant") {
    CHECK(predicted_constant({1, 1, 1}) == doctest::Approx(M_PI / 3).epsilon(1e-14));
    CHECK(predicted_constant({1, 1, 2}) == doctest::Approx(M_PI / 6).epsilon(1e-14));
    double base = predicted_constant({1, 1, 1});
    for (long long M : {2LL, 3LL, 4LL, 6LL, 12LL})
        CHECK(predicted_constant({M, 1, 1}) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("bias_ratio") {
    CHECK(bias_ratio(make_prime_set(3, {1})) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(bias_ratio(make_prime_set(3, {2})) == doctest::Approx(4.0 / 3).epsilon(1e-12));
    CHECK(bias_ratio(all_primes()) == doctest::Approx(1.0).epsilon(1e-12));
    for (long long m : {3LL, 4LL, 5LL, 12LL}) {
        double avg = 0;
        long long phi = 0;
        for (long long c = 0; c < m; ++c) {
            if (std::gcd(c, m) != 1) continue;
            avg += bias_ratio(make_prime_set(m, {c}));
            ++phi;
        }
        CHECK(avg / phi == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sato_tate_histogram basics") {
    auto h1 = sato_tate_histogram(1, 1, 500, 1);
    REQUIRE(h1.mass.size() == 1);
    CHECK(h1.mass[0] == doctest::Approx(1.0));
    CHECK(h1.samples > 0);
    CHECK_THROWS_AS(sato_tate_histogram(0, 1, 100, 4), std::invalid_argument);
    CHECK_THROWS_AS(sato_tate_histogram(1, 1, 100, 0), std::invalid_argument);
}

TEST_CASE("the -1 twist negates traces exactly where -1 is a non-residue") {
    // (1,-1) is the quadratic twist of (1,1) by -1: a_p flips sign at
    // p = 3 (mod 4) and is unchanged at p = 1 (mod 4), so the angle
    // distributions mirror each other prime by prime on the flipped set.
    for (long long p : oracles::trial_division_primes(500)) {
        if (p <= 3 || p == 31) continue; // 31 divides the discriminant
        long long t = trace_of_frobenius({1, 1, p});
        long long tt = trace_of_frobenius({1, p - 1, p});
        if (p % 4 == 3) REQUIRE(tt == -t);
        else REQUIRE(tt == t);
    }
}

TEST_CASE("empirical angles approach the Sato-Tate law") {
    auto h = sato_tate_histogram(1, 1, 100000, 20);
    CHECK(h.sup_distance < 0.05); // measured 0.0088 at this range
    auto smaller = sato_tate_histogram(1, 1, 3000, 20);
    CHECK(h.sup_distance < smaller.sup_distance);
}
