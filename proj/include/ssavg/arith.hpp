#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ssavg {

// A reduced residue class c mod m. Used both as a prime congruence condition
// (where gcd(c,m)=1 is required) and as plain modular bookkeeping.
struct ResidueClass {
    long long c = 0;
    long long m = 1;
};

struct FactoredInteger {
    long long n = 1;
    std::vector<std::pair<long long, int>> factors; // (prime, exponent), primes ascending
};

// All primes <= x, ascending.
std::vector<long long> sieve_primes(long long x);

// Shared primality bitmap for census-style loops.
struct PrimeTable {
    long long limit = 0;
    std::vector<bool> is_prime;
    bool operator()(long long n) const { return n >= 0 && n <= limit && is_prime[(size_t)n]; }
};
PrimeTable make_prime_table(long long x);

// Full Kronecker symbol (a|n); n may be even, zero or negative.
int kronecker(long long a, long long n);

long long euler_phi(long long n);

FactoredInteger factorize(long long n);

// All divisors of n, unsorted.
std::vector<long long> divisors(const FactoredInteger& f);

// Returns (phi(nm/k), phi(n)phi(m)/phi(k)) with k = gcd(n,m). The two agree.
std::pair<long long, long long> phi_quotient_identity(long long n, long long m);

// S = sum over b mod n, gcd(b,n)=1, b = -c (mod k) of the Jacobi symbol (b|n),
// with k = gcd(n,m). Direct summation; n must be odd and >= 1.
long long character_class_sum(long long n, long long m, long long c);

// Integer sqrt helpers.
long long isqrt(long long n);
bool is_perfect_square(long long n);

} // namespace ssavg
