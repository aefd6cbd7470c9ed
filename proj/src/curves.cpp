#include "ssavg/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ssavg/arith.hpp"

namespace ssavg {

namespace detail {

FpContext::FpContext(long long p_) : p(p_) {
    chi.assign((size_t)p, -1);
    sqrt_of.assign((size_t)p, -1);
    chi[0] = 0;
    for (long long t = 1; t <= (p - 1) / 2; ++t) {
        long long sq = (unsigned long long)t * t % p;
        chi[(size_t)sq] = 1;
        sqrt_of[(size_t)sq] = (int32_t)t;
    }
    sqrt_of[0] = 0;
}

long long FpContext::trace(long long a, long long b) const {
    // Walk f(x) = x^3 + ax + b by finite differences; all increments < p.
    long long f = b % p;
    long long d1 = (1 + a) % p;     // f(x+1) - f(x) at x = 0
    long long d2 = 6 % p;           // second difference at x = 0
    const long long six = 6 % p;
    long long s = 0;
    for (long long x = 0; x < p; ++x) {
        s += chi[(size_t)f];
        f += d1; if (f >= p) f -= p;
        d1 += d2; if (d1 >= p) d1 -= p;
        d2 += six; if (d2 >= p) d2 -= p;
    }
    return -s;
}

long long mod_inverse(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr) {
        long long q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    if (r != 1) throw std::domain_error("mod_inverse: not invertible");
    return ((t % p) + p) % p;
}

namespace {

void validate(const FpCurve& e, long long& a, long long& b) {
    if (e.p <= 3) throw std::invalid_argument("FpCurve: p must exceed 3");
    if (e.p > (1LL << 31)) throw std::invalid_argument("FpCurve: p too large");
    a = ((e.a % e.p) + e.p) % e.p;
    b = ((e.b % e.p) + e.p) % e.p;
    long long disc = (4 * ((unsigned long long)a * a % e.p) % e.p * a +
                      27 * ((unsigned long long)b * b % e.p)) % e.p;
    if (disc == 0) throw std::invalid_argument("FpCurve: singular curve");
}

// Representative curve with given j != 0, 1728: (3c, 2c) with c = j/(1728-j).
void j_representative(long long j, long long p, long long& a, long long& b) {
    long long c = (unsigned long long)(j % p) *
                  mod_inverse(((1728 - j) % p + p) % p, p) % p;
    a = 3 * c % p;
    b = 2 * c % p;
}

} // namespace
} // namespace detail

long long trace_of_frobenius(const FpCurve& e) {
    long long a, b;
    detail::validate(e, a, b);
    detail::FpContext ctx(e.p);
    return ctx.trace(a, b);
}

bool is_supersingular(const FpCurve& e) {
    return trace_of_frobenius(e) == 0;
}

long long j_invariant(const FpCurve& e) {
    long long a, b;
    detail::validate(e, a, b);
    long long p = e.p;
    long long a3 = 4 * ((unsigned long long)a * a % p * a % p) % p;
    long long disc = (a3 + 27 * ((unsigned long long)b * b % p)) % p;
    return (1728 % p) * a3 % p * detail::mod_inverse(disc, p) % p;
}

int automorphism_count(const FpCurve& e) {
    long long a, b;
    detail::validate(e, a, b);
    long long p = e.p;
    int count = 0;
    for (long long u = 1; u < p; ++u) {
        long long u2 = (unsigned long long)u * u % p;
        long long u4 = (unsigned long long)u2 * u2 % p;
        long long u6 = (unsigned long long)u4 * u2 % p;
        if ((unsigned long long)u4 * a % p == (unsigned long long)a % p &&
            (unsigned long long)u6 * b % p == (unsigned long long)b % p)
            ++count;
    }
    return count;
}

std::map<long long, Rational> trace_spectrum(long long p) {
    if (p <= 3) throw std::invalid_argument("trace_spectrum: p must exceed 3");
    detail::FpContext ctx(p);
    std::map<long long, long long> pairs; // nonsingular (a,b) pairs by trace
    long long j1728 = 1728 % p;
    for (long long b = 1; b < p; ++b) pairs[ctx.trace(0, b)] += 1;
    for (long long a = 1; a < p; ++a) pairs[ctx.trace(a, 0)] += 1;
    for (long long j = 1; j < p; ++j) {
        if (j == j1728) continue;
        long long a, b;
        detail::j_representative(j, p, a, b);
        long long t = ctx.trace(a, b);
        pairs[t] += (p - 1) / 2;  // orbit of the representative
        pairs[-t] += (p - 1) / 2; // orbit of its quadratic twist
    }
    std::map<long long, Rational> spec;
    for (auto [r, n] : pairs) spec[r] = Rational(2 * n, p - 1);
    return spec;
}

Rational weighted_trace_count(long long p, long long r) {
    if (p <= 3) throw std::invalid_argument("weighted_trace_count: p must exceed 3");
    if (r * r >= 4 * p)
        throw std::invalid_argument("weighted_trace_count: r violates the Hasse bound");
    auto spec = trace_spectrum(p);
    auto it = spec.find(r);
    return it == spec.end() ? Rational(0) : it->second;
}

std::vector<long long> supersingular_j_set(long long p) {
    if (p <= 3) throw std::invalid_argument("supersingular_j_set: p must exceed 3");
    detail::FpContext ctx(p);
    std::vector<long long> js;
    long long j1728 = 1728 % p;
    if (ctx.trace(0, 1) == 0) js.push_back(0);
    if (ctx.trace(1, 0) == 0) js.push_back(j1728);
    for (long long j = 1; j < p; ++j) {
        if (j == j1728) continue;
        long long a, b;
        detail::j_representative(j, p, a, b);
        if (ctx.trace(a, b) == 0) js.push_back(j);
    }
    std::sort(js.begin(), js.end());
    return js;
}

std::vector<long long> supersingular_primes(long long a, long long b, long long x) {
    std::vector<long long> out;
    for (long long p : sieve_primes(x)) {
        if (p <= 3) continue;
        long long ar = ((a % p) + p) % p, br = ((b % p) + p) % p;
        long long disc = (4 * ((unsigned long long)ar * ar % p) % p * ar +
                          27 * ((unsigned long long)br * br % p)) % p;
        if (disc == 0) continue; // bad reduction
        detail::FpContext ctx(p);
        if (ctx.trace(ar, br) == 0) out.push_back(p);
    }
    return out;
}

const std::array<long long, 13>& cm_j_invariants() {
    static const std::array<long long, 13> js = {
        0LL,
        1728LL,
        -3375LL,
        8000LL,
        54000LL,
        -32768LL,
        287496LL,
        -884736LL,
        -12288000LL,
        16581375LL,
        -884736000LL,
        -147197952000LL,
        -262537412640768000LL,
    };
    return js;
}

bool is_cm_j_rational(long long a, long long b) {
    // j = 1728 * 4a^3 / (4a^3 + 27b^2) over Q; compare exactly.
    __int128 a3 = (__int128)4 * a * a * a;
    __int128 disc = a3 + (__int128)27 * b * b;
    if (disc == 0) throw std::invalid_argument("is_cm_j_rational: singular curve");
    for (long long J : cm_j_invariants())
        if ((__int128)1728 * a3 == (__int128)J * disc) return true;
    return false;
}

namespace {

// Exact doubling test over Q for an integer point P = (x0, y0), y0 != 0:
// P has exact order 4 iff y(2P) = 0.
bool doubles_to_two_torsion(long long a, long long x0, long long y0) {
    __int128 ln = (__int128)3 * x0 * x0 + a; // lambda = ln / ld
    __int128 ld = (__int128)2 * y0;
    __int128 ld2 = ld * ld;
    __int128 x2n = ln * ln - (__int128)2 * x0 * ld2; // x2 = x2n / ld2
    // y2 * ld^3 = ln * (x0*ld2 - x2n) - y0 * ld^3
    __int128 lhs = ln * ((__int128)x0 * ld2 - x2n);
    __int128 rhs = (__int128)y0 * ld2 * ld;
    return lhs == rhs;
}

} // namespace

bool has_order4_point(long long a, long long b) {
    for (long long x0 = -1000; x0 <= 1000; ++x0) {
        long long t = x0 * x0 * x0 + a * x0 + b;
        if (t <= 0) continue;
        long long y0 = isqrt(t);
        if (y0 * y0 != t) continue;
        if (doubles_to_two_torsion(a, x0, y0)) return true;
    }
    return false;
}

Torsion4Curve find_torsion4_curve() {
    for (long long a = -20; a <= 20; ++a) {
        for (long long b = -20; b <= 20; ++b) {
            if (4 * a * a * a + 27 * b * b == 0) continue;
            if (is_cm_j_rational(a, b)) continue;
            for (long long x0 = -100; x0 <= 100; ++x0) {
                long long t = x0 * x0 * x0 + a * x0 + b;
                if (t <= 0) continue;
                long long y0 = isqrt(t);
                if (y0 * y0 != t) continue;
                if (doubles_to_two_torsion(a, x0, y0))
                    return {a, b, x0, y0};
            }
        }
    }
    throw std::logic_error("find_torsion4_curve: search exhausted");
}

std::vector<long long> torsion_4_obstruction_demo(long long a, long long b, long long x) {
    if (!has_order4_point(a, b))
        throw std::invalid_argument(
            "torsion_4_obstruction_demo: no rational point of order 4 found");
    return supersingular_primes(a, b, x);
}

} // namespace ssavg
