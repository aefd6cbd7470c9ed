#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssavg/constants.hpp"

namespace ssavg {

// The averaging box |a| <= A, |b| <= B, optionally restricted to minimal
// Weierstrass models.
struct CurveBox {
    long long A = 1;
    long long B = 1;
    bool minimal_only = false;
};

struct CensusReport {
    long long x = 0;
    CurveBox box;
    std::string prime_set;
    double empirical_avg = 0;
    double hurwitz_avg = 0;
    double lsum_over_x = 0;
    double predicted = 0; // C_P sqrt(x)/log x
    double ratio_emp_pred = 0;
    double ratio_hur_pred = 0;
    std::optional<long long> cm_pairs; // diagnostic, not part of the CSV row
};

// Minimal Weierstrass model test: no prime q has q^4 | a and q^6 | b.
bool minimality_filter(long long a, long long b);

// Brute-force census: for every pair in the box and every prime 3 < p <= x in
// ps, count the pair when its reduction mod p is nonsingular and
// supersingular. Intended for small boxes; the oracle for census_fast.
long long census_direct(const PrimeSet& ps, const CurveBox& box, long long x);

// Same value as census_direct, computed per prime from the supersingular
// j-invariants and exact lattice counts per residue. workers <= 0 selects
// CENSUS_WORKERS or the machine parallelism; output does not depend on the
// worker count.
long long census_fast(const PrimeSet& ps, const CurveBox& box, long long x,
                      int workers = 0);

// total / (4AB).
double family_average(long long total, const CurveBox& box);

// (1/2) sum over 3 < p <= x, p in ps of H(-4p)/p.
double hurwitz_average(const PrimeSet& ps, long long x);

// sum over f in {1,2} of (1/f) sum over admissible p <= x in ps of
// L(1, chi_d) log p, d = (0 - 4p)/f^2.
double lfunc_prime_sum(const PrimeSet& ps, long long x);

// Both sides of the exact Hurwitz/L-value identity, evaluated independently.
std::pair<double, double> cross_identity_check(const PrimeSet& ps, long long x);

// Fraction of pairs in the box (excluding the always-singular (0,0)) passing
// minimality_filter. Tends to 1/zeta(10).
double minimality_density(long long A, long long B);

// Exact count of box pairs whose rational j-invariant is one of the thirteen
// CM values.
long long cm_pairs_in_box(const CurveBox& box);

std::vector<CensusReport> convergence_report(const PrimeSet& ps, const CurveBox& box,
                                             const std::vector<long long>& x_grid,
                                             int workers = 0,
                                             bool cm_diagnostic = false);

int resolve_workers(int requested);

// #{n in [-L, L] : n = r (mod M)}, 0 <= r < M. The per-residue lattice count
// behind census_fast.
long long lattice_class_count(long long L, long long r, long long M);

} // namespace ssavg
