#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "ssavg/rational.hpp"

namespace ssavg {

// Short Weierstrass curve Y^2 = X^3 + aX + b over F_p, p > 3 prime,
// 4a^3 + 27b^2 != 0 (mod p).
struct FpCurve {
    long long a = 0;
    long long b = 0;
    long long p = 5;
};

namespace detail {

// Per-prime quadratic character and square-root tables. Function-local to
// each computation; safe to build for different primes concurrently.
struct FpContext {
    long long p = 0;
    std::vector<int8_t> chi;     // chi[t] = Legendre symbol (t|p), chi[0] = 0
    std::vector<int32_t> sqrt_of; // sqrt_of[t*t % p] = some square root, else -1

    explicit FpContext(long long p);
    long long trace(long long a, long long b) const; // a,b reduced mod p, nonsingular
};

long long mod_inverse(long long a, long long p);

} // namespace detail

// a_p = p + 1 - #E(F_p), computed as -sum_x chi(x^3 + ax + b).
long long trace_of_frobenius(const FpCurve& e);

bool is_supersingular(const FpCurve& e);

// j = 1728 * 4a^3 / (4a^3 + 27b^2) mod p.
long long j_invariant(const FpCurve& e);

// #{u in F_p^* : (u^4 a, u^6 b) = (a, b)}, by direct enumeration.
int automorphism_count(const FpCurve& e);

// Weighted isomorphism-class counts by trace: each F_p-class counts 2/#Aut.
// The total mass is 2p, and the count at trace r equals the Hurwitz number
// H(r^2 - 4p).
std::map<long long, Rational> trace_spectrum(long long p);
Rational weighted_trace_count(long long p, long long r);

// All j in F_p whose curves are supersingular (one representative tested per
// j; a_p = 0 is twist-invariant).
std::vector<long long> supersingular_j_set(long long p);

// Good supersingular primes 3 < p <= x of the integer curve E_{a,b}.
std::vector<long long> supersingular_primes(long long a, long long b, long long x);

// The thirteen j-invariants of CM elliptic curves over Q.
const std::array<long long, 13>& cm_j_invariants();

// Exact test of whether the rational j-invariant of E_{a,b} is in the CM list.
bool is_cm_j_rational(long long a, long long b);

struct Torsion4Curve {
    long long a = 0;
    long long b = 0;
    long long x0 = 0; // witness point of exact order 4
    long long y0 = 0;
};

// Deterministic search over |a|,|b| <= 20 for a non-CM curve with an integer
// point of exact order 4 (verified by one exact doubling over Q).
Torsion4Curve find_torsion4_curve();

// True iff E_{a,b} has an integer point of exact order 4 with |x| <= 1000.
bool has_order4_point(long long a, long long b);

// Supersingular primes <= x of a verified 4-torsion curve, for the residue
// obstruction demo. Throws if no order-4 point is found.
std::vector<long long> torsion_4_obstruction_demo(long long a, long long b, long long x);

} // namespace ssavg
