#include "ssavg/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ssavg {

std::vector<long long> sieve_primes(long long x) {
    std::vector<long long> primes;
    if (x < 2) return primes;
    std::vector<bool> comp((size_t)x + 1, false);
    for (long long i = 2; i * i <= x; ++i) {
        if (comp[(size_t)i]) continue;
        for (long long j = i * i; j <= x; j += i) comp[(size_t)j] = true;
    }
    for (long long i = 2; i <= x; ++i)
        if (!comp[(size_t)i]) primes.push_back(i);
    return primes;
}

PrimeTable make_prime_table(long long x) {
    PrimeTable t;
    t.limit = x < 0 ? 0 : x;
    t.is_prime.assign((size_t)t.limit + 1, true);
    if (t.limit >= 0) t.is_prime[0] = false;
    if (t.limit >= 1) t.is_prime[1] = false;
    for (long long i = 2; i * i <= t.limit; ++i) {
        if (!t.is_prime[(size_t)i]) continue;
        for (long long j = i * i; j <= t.limit; j += i) t.is_prime[(size_t)j] = false;
    }
    return t;
}

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    // strip powers of two from n, each contributing (a|2)
    int v = 0;
    while ((n & 1) == 0) { n /= 2; ++v; }
    int k = 1;
    if (v & 1) {
        long long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) k = -1; // (a|2) = -1 for a = +-3 mod 8
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // Jacobi loop, n odd positive
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a /= 2;
            long long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) k = -k;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) k = -k;
        a %= n;
    }
    return n == 1 ? k : 0;
}

FactoredInteger factorize(long long n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    FactoredInteger f;
    f.n = n;
    for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.factors.emplace_back(p, e);
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

std::vector<long long> divisors(const FactoredInteger& f) {
    std::vector<long long> divs{1};
    for (auto [p, e] : f.factors) {
        size_t cur = divs.size();
        long long pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < cur; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

long long euler_phi(long long n) {
    if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
    long long result = n;
    for (auto [p, e] : factorize(n).factors) result -= result / p;
    return result;
}

std::pair<long long, long long> phi_quotient_identity(long long n, long long m) {
    long long k = std::gcd(n, m);
    return {euler_phi(n / k * m), euler_phi(n) * euler_phi(m) / euler_phi(k)};
}

long long character_class_sum(long long n, long long m, long long c) {
    if (n < 1 || (n & 1) == 0)
        throw std::invalid_argument("character_class_sum: n must be odd and positive");
    if (m < 1) throw std::invalid_argument("character_class_sum: m must be positive");
    long long k = std::gcd(n, m);
    long long target = ((-c) % k + k) % k;
    long long s = 0;
    for (long long b = 0; b < n; ++b) {
        if (std::gcd(b, n) != 1) continue;
        if (b % k != target) continue;
        s += kronecker(b, n);
    }
    return s;
}

long long isqrt(long long n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    long long r = (long long)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(long long n) {
    if (n < 0) return false;
    long long r = isqrt(n);
    return r * r == n;
}

} // namespace ssavg
