#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "ssavg/arith.hpp"

using namespace ssavg;

TEST_CASE("sieve_primes basics") {
    CHECK(sieve_primes(10) == std::vector<long long>{2, 3, 5, 7});
    CHECK(sieve_primes(1).empty());
    CHECK(sieve_primes(0).empty());
    CHECK(sieve_primes(2) == std::vector<long long>{2});
}

TEST_CASE("sieve_primes agrees with trial division up to 1e4") {
    auto fast = sieve_primes(10000);
    auto slow = oracles::trial_division_primes(10000);
    CHECK(fast == slow);
    CHECK(fast.size() == 1229);
}

TEST_CASE("prime table matches the sieve") {
    auto t = make_prime_table(500);
    auto primes = sieve_primes(500);
    long long count = 0;
    for (long long n = 0; n <= 500; ++n)
        if (t(n)) ++count;
    CHECK(count == (long long)primes.size());
    for (long long p : primes) CHECK(t(p));
}

TEST_CASE("kronecker examples") {
    for (long long n : {-7LL, -2LL, -1LL, 1LL, 2LL, 9LL, 15LL, 101LL})
        CHECK(kronecker(1, n) == 1);
    CHECK(kronecker(-1, 3) == -1); // squares mod 3 are {0,1}
    CHECK(kronecker(2, 15) == 1);  // (2|3)(2|5) = (-1)(-1)
    CHECK(kronecker(4, 2) == 0);
    CHECK(kronecker(0, 1) == 1);
    CHECK(kronecker(0, 5) == 0);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(-1, 0) == 1);
}

TEST_CASE("kronecker equals Euler-criterion Legendre for odd primes") {
    for (long long p : oracles::trial_division_primes(97)) {
        if (p == 2) continue;
        for (long long a = -p; a <= p; ++a)
            CHECK(kronecker(a, p) == oracles::legendre_euler(a, p));
    }
}

TEST_CASE("kronecker equals Jacobi for odd n") {
    for (long long n = 1; n <= 99; n += 2)
        for (long long a = 0; a < n; ++a)
            CHECK(kronecker(a, n) == oracles::jacobi_by_factoring(a, n));
}

TEST_CASE("kronecker multiplicativity in the top argument") {
    for (long long n = 1; n <= 99; n += 2)
        for (long long a = -50; a <= 50; ++a)
            for (long long b = -50; b <= 50; b += 7)
                CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
}

TEST_CASE("euler_phi examples and brute agreement") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(15) == 8);
    CHECK(euler_phi(9) == 6);
    for (long long n = 1; n <= 300; ++n)
        CHECK(euler_phi(n) == oracles::phi_brute(n));
    CHECK_THROWS_AS(euler_phi(0), std::invalid_argument);
}

TEST_CASE("factorize and divisors") {
    auto f = factorize(360);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::pair<long long, int>{2, 3});
    CHECK(f.factors[1] == std::pair<long long, int>{3, 2});
    CHECK(f.factors[2] == std::pair<long long, int>{5, 1});
    CHECK(divisors(f).size() == 24);
    long long product = 1;
    for (auto [p, e] : f.factors)
        for (int i = 0; i < e; ++i) product *= p;
    CHECK(product == 360);
}

TEST_CASE("phi_quotient_identity examples") {
    CHECK(phi_quotient_identity(3, 15) == std::pair<long long, long long>{8, 8});
    CHECK(phi_quotient_identity(6, 4) == std::pair<long long, long long>{4, 4});
    for (long long m : {2LL, 7LL, 30LL}) {
        auto [lhs, rhs] = phi_quotient_identity(1, m);
        CHECK(lhs == euler_phi(m));
        CHECK(rhs == euler_phi(m));
    }
}

TEST_CASE("phi_quotient_identity exhaustive to 500") {
    for (long long n = 1; n <= 500; ++n)
        for (long long m = 1; m <= 500; ++m) {
            auto [lhs, rhs] = phi_quotient_identity(n, m);
            REQUIRE(lhs == rhs);
        }
}

namespace {

// Closed form of the character sum lemma: (-c | k*l_k) phi(n)/phi(k) when the
// k-coprime part of n/k is a square, else 0.
long long closed_form_sum(long long n, long long m, long long c) {
    long long k = std::gcd(n, m);
    long long l = n / k;
    long long lk = 1;
    for (auto [p, e] : factorize(l).factors)
        if (k % p == 0)
            for (int i = 0; i < e; ++i) lk *= p;
    long long ls = l / lk;
    if (!is_perfect_square(ls)) return 0;
    return kronecker(-c, k * lk) * (euler_phi(n) / euler_phi(k));
}

} // namespace

TEST_CASE("character_class_sum examples") {
    CHECK(character_class_sum(9, 3, 1) == 3);
    CHECK(character_class_sum(5, 1, 1) == 0);
    CHECK(character_class_sum(1, 7, 3) == 1);
    CHECK_THROWS_AS(character_class_sum(4, 3, 1), std::invalid_argument);
}

TEST_CASE("character_class_sum matches the closed form exhaustively") {
    for (long long n = 1; n <= 99; n += 2)
        for (long long m = 1; m <= 30; ++m)
            for (long long c = 0; c < m; ++c) {
                if (std::gcd(c, m) != 1) continue;
                REQUIRE(character_class_sum(n, m, c) == closed_form_sum(n, m, c));
            }
}

TEST_CASE("isqrt and perfect squares") {
    for (long long n = 0; n <= 2000; ++n) {
        long long r = isqrt(n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
    CHECK(is_perfect_square(0));
    CHECK(is_perfect_square(144));
    CHECK(!is_perfect_square(145));
    CHECK(!is_perfect_square(-4));
}
