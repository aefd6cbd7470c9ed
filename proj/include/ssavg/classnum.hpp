#pragma once

#include <cstdint>

#include "ssavg/rational.hpp"

namespace ssavg {

// Negative discriminants only: d < 0 and d = 0 or 1 (mod 4).
bool is_discriminant(long long d);

// Class number of the order of discriminant d: the number of SL2(Z)-reduced
// primitive positive-definite forms (a,b,c) with b^2-4ac = d.
long long class_number(long long d);

// Unit count of the order: 6 for d=-3, 4 for d=-4, 2 otherwise.
int unit_count(long long d);

// Hurwitz class number H(D) = 2 * sum over f^2|D with D/f^2 = 0,1 (4)
// of h(D/f^2)/w(D/f^2), as an exact rational (denominator divides 6).
Rational hurwitz(long long D);

struct DiscriminantRecord {
    long long d = 0;
    long long h = 0;
    int w = 2;
    double L1 = 0.0; // 2*pi*h/(w*sqrt(|d|))
};

// Memoized lookup; thread-safe with idempotent inserts.
DiscriminantRecord discriminant_record(long long d);

// L(1, chi_d) from the Dirichlet class number formula.
double l1_from_class_number(long long d);

// Independent evaluation of L(1, chi_d) = sum chi_d(n)/n by direct summation
// of full character periods plus a certified Euler-Maclaurin tail. The result
// differs from the true value by less than tol.
double l1_series(long long d, double tol);

} // namespace ssavg
