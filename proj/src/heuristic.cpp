#include "ssavg/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "ssavg/arith.hpp"
#include "ssavg/curves.hpp"

namespace ssavg {

double sato_tate_density(double theta) {
    if (!(theta >= 0.0 && theta <= M_PI))
        throw std::invalid_argument("sato_tate_density: theta outside [0, pi]");
    double s = std::sin(theta);
    return 2.0 / M_PI * s * s;
}

double semicircle_density(double xi) {
    if (!(xi >= -1.0 && xi <= 1.0))
        throw std::invalid_argument("semicircle_density: xi outside [-1, 1]");
    return 2.0 / M_PI * std::sqrt(1.0 - xi * xi);
}

std::pair<std::vector<long long>, long long> gl2_trace_histogram(long long M) {
    if (M < 1) throw std::invalid_argument("gl2_trace_histogram: M must be positive");
    if (M > 1024)
        throw std::invalid_argument("gl2_trace_histogram: enumeration bound is M <= 1024");
    if (M == 1) return {{1}, 1};

    // #{(b,c) : bc = v (mod M)}
    std::vector<long long> cnt2((size_t)M, 0);
    for (long long b = 0; b < M; ++b)
        for (long long c = 0; c < M; ++c) ++cnt2[(size_t)(b * c % M)];
    // G[u] = #{(b,c) : gcd(u - bc, M) = 1}
    std::vector<char> coprime((size_t)M);
    for (long long w = 0; w < M; ++w) coprime[(size_t)w] = std::gcd(w, M) == 1;
    std::vector<long long> G((size_t)M, 0);
    for (long long u = 0; u < M; ++u)
        for (long long w = 0; w < M; ++w)
            if (coprime[(size_t)w]) G[(size_t)u] += cnt2[(size_t)((u - w + M) % M)];

    std::vector<long long> hist((size_t)M, 0);
    long long order = 0;
    for (long long a = 0; a < M; ++a)
        for (long long d = 0; d < M; ++d) {
            long long n = G[(size_t)(a * d % M)];
            hist[(size_t)((a + d) % M)] += n;
            order += n;
        }
    return {hist, order};
}

namespace {

std::pair<std::vector<long long>, long long> cached_histogram(long long M) {
    static std::mutex mu;
    static std::map<long long, std::pair<std::vector<long long>, long long>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(M);
    if (it == memo.end()) it = memo.emplace(M, gl2_trace_histogram(M)).first;
    return it->second;
}

} // namespace

Rational trace_fraction(long long M, long long t) {
    if (M > 60)
        throw std::invalid_argument("trace_fraction: enumeration bound is M <= 60");
    auto [hist, order] = cached_histogram(M);
    long long r = ((t % M) + M) % M;
    return Rational(M, 1) * Rational(hist[(size_t)r], order);
}

long long torsion_indicator(long long t, long long p, long long k) {
    if (k < 1) throw std::invalid_argument("torsion_indicator: k must be positive");
    long long diff = t - (p + 1);
    return (((diff % k) + k) % k == 0) ? k : 0;
}

double model_normalizer(long long p, long long M, long long k) {
    if (p <= 3) throw std::invalid_argument("model_normalizer: p must exceed 3");
    auto [hist, order] = cached_histogram(M);
    long long N = isqrt(4 * p);
    double twosqrt = 2.0 * std::sqrt((double)p);
    double sum = 0.0;
    for (long long t = -N; t <= N; ++t) {
        if (!torsion_indicator(t, p, k)) continue;
        long long r = ((t % M) + M) % M;
        double F = (double)M * (double)hist[(size_t)r] / (double)order;
        if (F == 0.0) continue;
        double xi = std::clamp((double)t / twosqrt, -1.0, 1.0);
        sum += semicircle_density(xi) * F * (double)k;
    }
    if (sum <= 0.0)
        throw std::domain_error("model_normalizer: incompatible congruence conditions");
    return 1.0 / sum;
}

double predicted_constant(const HeuristicParams& params) {
    if (params.M < 1 || params.k < 1 || params.n < 1)
        throw std::invalid_argument("predicted_constant: parameters must be positive");
    double F0 = trace_fraction(params.M, 0).to_double();
    double prod = 1.0;
    for (auto [l, e] : factorize(params.M).factors)
        prod *= 1.0 - 1.0 / ((double)l * (double)l);
    return 2.0 / M_PI * F0 * zeta2() * prod / (double)params.n;
}

double bias_ratio(const PrimeSet& ps) {
    return k_constant(ps).C / (M_PI / 3.0 * ps.density().to_double());
}

SatoTateHistogram sato_tate_histogram(long long a, long long b, long long x, int bins) {
    if (bins < 1) throw std::invalid_argument("sato_tate_histogram: bins must be >= 1");
    if (is_cm_j_rational(a, b))
        throw std::invalid_argument("sato_tate_histogram: CM curve rejected");
    std::vector<double> thetas;
    for (long long p : sieve_primes(x)) {
        if (p <= 3) continue;
        long long ar = ((a % p) + p) % p, br = ((b % p) + p) % p;
        long long disc = (4 * ((unsigned long long)ar * ar % p) % p * ar +
                          27 * ((unsigned long long)br * br % p)) % p;
        if (disc == 0) continue;
        detail::FpContext ctx(p);
        long long t = ctx.trace(ar, br);
        double xi = std::clamp((double)t / (2.0 * std::sqrt((double)p)), -1.0, 1.0);
        thetas.push_back(std::acos(xi));
    }
    SatoTateHistogram h;
    h.samples = (long long)thetas.size();
    h.mass.assign((size_t)bins, 0.0);
    for (double th : thetas) {
        int bi = std::min(bins - 1, (int)(th / M_PI * bins));
        h.mass[(size_t)bi] += 1.0;
    }
    if (h.samples > 0)
        for (auto& m : h.mass) m /= (double)h.samples;
    // Kolmogorov-Smirnov distance against F(t) = t/pi - sin(2t)/(2pi).
    std::sort(thetas.begin(), thetas.end());
    double sup = 0.0;
    for (size_t i = 0; i < thetas.size(); ++i) {
        double F = thetas[i] / M_PI - std::sin(2.0 * thetas[i]) / (2.0 * M_PI);
        double lo = (double)i / (double)thetas.size();
        double hi = (double)(i + 1) / (double)thetas.size();
        sup = std::max({sup, std::abs(F - lo), std::abs(F - hi)});
    }
    h.sup_distance = sup;
    return h;
}

} // namespace ssavg
