#pragma once

#include <vector>

#include "ssavg/constants.hpp"
#include "ssavg/rational.hpp"

namespace ssavg {

struct HeuristicParams {
    long long M = 1; // level, full image assumed
    long long k = 1; // rational torsion order
    long long n = 1; // field degree
};

// (2/pi) sin^2(theta) on [0, pi].
double sato_tate_density(double theta);

// g(xi) = (2/pi) sqrt(1 - xi^2) on [-1, 1].
double semicircle_density(double xi);

// F_M(t) = M |G(M)_t| / |G(M)| with G(M) = GL_2(Z/M), exact. M <= 60.
Rational trace_fraction(long long M, long long t);

// Invertible-matrix counts by trace mod M (index t = 0..M-1) and |G(M)|.
std::pair<std::vector<long long>, long long> gl2_trace_histogram(long long M);

// k if t = p + 1 (mod k), else 0.
long long torsion_indicator(long long t, long long p, long long k);

// c_p = 1 / sum over |t| <= floor(2 sqrt(p)) of g(t/2sqrt(p)) F_M(t) h(t,p,k).
// Throws std::domain_error when the support is empty (incompatible
// congruence conditions).
double model_normalizer(long long p, long long M, long long k);

// (2/pi) F_M(0) zeta(2) prod_{l|M} (1 - 1/l^2) / n.
double predicted_constant(const HeuristicParams& params);

// C_P / ((pi/3) * density(P)); 1 means no bias.
double bias_ratio(const PrimeSet& ps);

struct SatoTateHistogram {
    std::vector<double> mass;   // normalized bin masses over [0, pi]
    double sup_distance = 0.0;  // KS distance between empirical and ST CDF
    long long samples = 0;
};

// Frobenius-angle histogram of the non-CM integer curve E_{a,b} over good
// primes 3 < p <= x.
SatoTateHistogram sato_tate_histogram(long long a, long long b, long long x, int bins);

} // namespace ssavg
