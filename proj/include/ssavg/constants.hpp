#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssavg/rational.hpp"

namespace ssavg {

// A union of reduced residue classes mod m. "All primes" is m = 1 with the
// single residue 0.
struct PrimeSet {
    long long m = 1;
    std::vector<long long> residues{0}; // sorted, distinct, in [0,m), coprime to m

    bool contains(long long p) const;
    Rational density() const; // |residues| / phi(m)
    std::string str() const;
};

PrimeSet make_prime_set(long long m, std::vector<long long> residues);
PrimeSet all_primes();

struct ConstantResult {
    double K = 0;
    double C = 0; // C = (2/pi) K
    std::map<long long, double> per_class;
    Rational density{1};
    // K / zeta(2) is an exact rational; absent if it overflows 64-bit words.
    std::optional<Rational> k_over_zeta2;
};

double zeta2();

// Predicted constant K for a single class p = c (mod m).
double k_constant_single(long long c, long long m);

// Exact value of k_constant_single / zeta(2).
Rational k_ratio_single(long long c, long long m);

// K and C for a union of classes (constants add over disjoint classes).
ConstantResult k_constant(const PrimeSet& ps);

struct FieldDescriptor {
    enum class Kind { quadratic, cyclotomic } kind = Kind::quadratic;
    long long param = -3; // squarefree D for quadratic, conductor m for cyclotomic
};

FieldDescriptor quadratic_field(long long d);
FieldDescriptor cyclotomic_field(long long m);

// The rational primes splitting totally in the field, as a congruence set.
PrimeSet split_prime_set(const FieldDescriptor& field);

// Closed-form C for Q(sqrt(sign*q)), q an odd prime, sign = +1 or -1.
double quadratic_closed_form(long long q, int sign);

} // namespace ssavg
