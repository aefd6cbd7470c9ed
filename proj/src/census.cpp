#include "ssavg/census.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ssavg/arith.hpp"
#include "ssavg/classnum.hpp"
#include "ssavg/curves.hpp"

namespace ssavg {

namespace {

long long floordiv(long long a, long long b) {
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

// #{n in [-L, L] : n = r (mod M)}, 0 <= r < M.
long long count_in_class(long long L, long long r, long long M) {
    return floordiv(L - r, M) + floordiv(L + r, M) + 1;
}

long long absll(long long v) { return v < 0 ? -v : v; }

bool is_small_prime(long long q) {
    if (q < 2) return false;
    for (long long t = 2; t * t <= q; ++t)
        if (q % t == 0) return false;
    return true;
}

// Primes q with q^4 | a (a != 0).
void fourth_power_primes(long long a, std::vector<long long>& out) {
    out.clear();
    a = absll(a);
    for (long long q = 2; q * q * q * q <= a; ++q)
        if (a % (q * q * q * q) == 0 && is_small_prime(q)) out.push_back(q);
}

// Enumerates every nonsingular (abar, bbar) in F_p^2 whose j-invariant is
// supersingular, invoking fn(abar, bbar) once per pair.
template <typename Fn>
void for_each_supersingular_pair(const detail::FpContext& ctx, Fn&& fn) {
    const long long p = ctx.p;
    const long long j1728 = 1728 % p;
    if (ctx.trace(0, 1) == 0)
        for (long long b = 1; b < p; ++b) fn(0, b);
    if (ctx.trace(1, 0) == 0)
        for (long long a = 1; a < p; ++a) fn(a, 0);
    for (long long j = 1; j < p; ++j) {
        if (j == j1728) continue;
        long long c = (unsigned long long)j *
                      detail::mod_inverse(((1728 - j) % p + p) % p, p) % p;
        long long ra = 3 * c % p, rb = 2 * c % p;
        if (ctx.trace(ra, rb) != 0) continue;
        // pairs with this j: b^2 = 4a^3(1728-j)/(27j)
        long long K = 4 * ((unsigned long long)(((1728 - j) % p + p) % p)) % p *
                      detail::mod_inverse(27 * j % p, p) % p;
        for (long long a = 1; a < p; ++a) {
            long long a3 = (unsigned long long)a * a % p * a % p;
            long long rhs = (unsigned long long)K * a3 % p;
            if (ctx.chi[(size_t)rhs] != 1) continue;
            long long s = ctx.sqrt_of[(size_t)rhs];
            fn(a, s);
            fn(a, p - s);
        }
    }
}

// Inclusion-exclusion corrections for the minimal census, grouped per prime.
// For a != 0 with Q(a) = {q : q^4 | a} nonempty, each nonempty subset S
// contributes (D = prod q^6, sign); for a = 0 the sixth-power-free Moebius
// terms (d^6, mu(d)), d >= 2, do the same job.
struct MinimalCorrections {
    std::vector<std::pair<long long, std::vector<std::pair<long long, int>>>> by_a;
    std::vector<std::pair<long long, int>> zero_terms;

    MinimalCorrections(long long A, long long B) {
        // Moduli beyond the box behave identically; saturate them to 2B+1 so
        // later arithmetic stays in 64 bits (count_b_joint treats D > 2B as
        // "only b = 0 qualifies").
        const long long cap = 2 * B + 1;
        std::vector<long long> qs;
        for (long long a = -A; a <= A; ++a) {
            if (a == 0) continue;
            fourth_power_primes(a, qs);
            if (qs.empty()) continue;
            std::vector<std::pair<long long, int>> subsets;
            size_t n = qs.size();
            for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
                __int128 D = 1;
                int bits = 0;
                for (size_t i = 0; i < n; ++i)
                    if (mask & (size_t(1) << i)) {
                        ++bits;
                        __int128 q3 = (__int128)qs[i] * qs[i] * qs[i];
                        D *= q3 * q3;
                        if (D > cap) D = cap;
                    }
                subsets.emplace_back((long long)D, bits % 2 ? -1 : 1);
            }
            by_a.emplace_back(a, std::move(subsets));
        }
        for (long long d = 2; d * d * d <= 2 * B / (d * d * d); ++d) {
            int mu = 1;
            long long t = d;
            for (long long q = 2; q * q <= t; ++q) {
                if (t % q) continue;
                t /= q;
                if (t % q == 0) { mu = 0; break; }
                mu = -mu;
            }
            if (mu == 0) continue;
            if (t > 1) mu = -mu;
            long long d3 = d * d * d;
            zero_terms.emplace_back(d3 * d3, mu);
        }
    }
};

struct PrimeMinimalTable {
    // per residue abar: list of (modulus pD, crt residue of {b=bbar (p), D|b})
    // is computed lazily per pair; store (D, inv(D) mod p, weight).
    struct Entry {
        long long D;
        long long invD; // -2: D exceeds the box; 0: p | D; else inv(D) mod p
        long long w;
    };
    std::vector<std::vector<Entry>> at;

    PrimeMinimalTable(long long p, long long B, const MinimalCorrections& mc)
        : at((size_t)p) {
        auto add = [&](long long abar, long long D, long long w) {
            long long invD;
            if (D > 2 * B) invD = -2;
            else if (D % p == 0) invD = 0;
            else invD = detail::mod_inverse(D % p, p);
            auto& v = at[(size_t)abar];
            for (auto& e : v)
                if (e.D == D) { e.w += w; return; }
            v.push_back({D, invD, w});
        };
        for (const auto& [a, subsets] : mc.by_a) {
            long long abar = ((a % p) + p) % p;
            for (auto [D, sign] : subsets) add(abar, D, sign);
        }
        for (auto [D, mu] : mc.zero_terms) add(0, D, mu);
    }
};

// #{b in [-B, B] : b = bbar (mod p), D | b}, bbar in [0, p).
long long count_b_joint(long long B, long long bbar, long long p,
                        const PrimeMinimalTable::Entry& e) {
    if (e.invD == -2) return bbar == 0 ? 1 : 0; // only b = 0 fits under D
    if (e.invD == 0) return bbar == 0 ? count_in_class(B, 0, e.D) : 0; // p | D
    long long t = (unsigned long long)bbar * e.invD % p;
    __int128 r = (__int128)e.D * t; // joint class rep in [0, pD)
    __int128 M = (__int128)e.D * p;
    if (M > 2 * (__int128)B) {
        long long hits = 0;
        if (r <= B) ++hits;
        if (M - r <= B) ++hits; // representative r - M
        return hits;
    }
    return count_in_class(B, (long long)r, (long long)M);
}

long long census_fast_prime(long long p, const CurveBox& box,
                            const MinimalCorrections* mc) {
    detail::FpContext ctx(p);
    std::vector<long long> NA((size_t)p), NB((size_t)p);
    for (long long r = 0; r < p; ++r) {
        NA[(size_t)r] = count_in_class(box.A, r, p);
        NB[(size_t)r] = count_in_class(box.B, r, p);
    }
    long long total = 0;
    if (!mc) {
        for_each_supersingular_pair(ctx, [&](long long a, long long b) {
            total += NA[(size_t)a] * NB[(size_t)b];
        });
        return total;
    }
    PrimeMinimalTable table(p, box.B, *mc);
    for_each_supersingular_pair(ctx, [&](long long a, long long b) {
        long long contrib = NA[(size_t)a] * NB[(size_t)b];
        for (const auto& e : table.at[(size_t)a])
            contrib += e.w * count_b_joint(box.B, b, p, e);
        total += contrib;
    });
    return total;
}

void validate_box(const CurveBox& box) {
    if (box.A < 1 || box.B < 1)
        throw std::invalid_argument("CurveBox: A and B must be at least 1");
}

std::vector<long long> census_primes(const PrimeSet& ps, long long x) {
    std::vector<long long> out;
    for (long long p : sieve_primes(x))
        if (p > 3 && ps.contains(p)) out.push_back(p);
    return out;
}

} // namespace

bool minimality_filter(long long a, long long b) {
    if (a == 0) {
        if (b == 0) return false;
        long long ab = absll(b);
        for (long long q = 2;; ++q) {
            long long q3 = q * q * q;
            if (q3 > ab / q3) break; // q^6 > |b|
            if (ab % (q3 * q3) == 0) return false;
        }
        return true;
    }
    long long aa = absll(a);
    for (long long q = 2; q * q * q * q <= aa; ++q) {
        if (a % (q * q * q * q)) continue;
        if (b == 0) return false;
        long long ab = absll(b), q3 = q * q * q;
        if (q3 <= ab / q3 && ab % (q3 * q3) == 0) return false;
    }
    return true;
}

long long census_direct(const PrimeSet& ps, const CurveBox& box, long long x) {
    validate_box(box);
    long long count = 0;
    for (long long p : census_primes(ps, x)) {
        detail::FpContext ctx(p);
        for (long long a = -box.A; a <= box.A; ++a) {
            long long ar = ((a % p) + p) % p;
            for (long long b = -box.B; b <= box.B; ++b) {
                if (box.minimal_only && !minimality_filter(a, b)) continue;
                long long br = ((b % p) + p) % p;
                long long disc = (4 * ((unsigned long long)ar * ar % p) % p * ar +
                                  27 * ((unsigned long long)br * br % p)) % p;
                if (disc == 0) continue;
                if (ctx.trace(ar, br) == 0) ++count;
            }
        }
    }
    return count;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CENSUS_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

long long census_fast(const PrimeSet& ps, const CurveBox& box, long long x,
                      int workers) {
    validate_box(box);
    auto primes = census_primes(ps, x);
    if (primes.empty()) return 0;
    std::optional<MinimalCorrections> mc;
    if (box.minimal_only) mc.emplace(box.A, box.B);
    const MinimalCorrections* mcp = mc ? &*mc : nullptr;

    int n = resolve_workers(workers);
    std::vector<long long> partial(primes.size(), 0);
    if (n <= 1 || primes.size() == 1) {
        for (size_t i = 0; i < primes.size(); ++i)
            partial[i] = census_fast_prime(primes[i], box, mcp);
    } else {
        std::atomic<size_t> next{0};
        auto work = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= primes.size()) return;
                partial[i] = census_fast_prime(primes[i], box, mcp);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    long long total = 0;
    for (long long v : partial) total += v; // fixed prime order
    return total;
}

long long lattice_class_count(long long L, long long r, long long M) {
    return count_in_class(L, r, M);
}

double family_average(long long total, const CurveBox& box) {
    validate_box(box);
    return (double)total / (4.0 * (double)box.A * (double)box.B);
}

double hurwitz_average(const PrimeSet& ps, long long x) {
    double sum = 0;
    for (long long p : census_primes(ps, x))
        sum += hurwitz(-4 * p).to_double() / (double)p;
    return 0.5 * sum;
}

double lfunc_prime_sum(const PrimeSet& ps, long long x) {
    double sum = 0;
    for (long long p : census_primes(ps, x)) {
        double lp = std::log((double)p);
        sum += l1_from_class_number(-4 * p) * lp; // f = 1, d = -4p
        if (p % 4 == 3) sum += 0.5 * l1_from_class_number(-p) * lp; // f = 2
    }
    return sum;
}

std::pair<double, double> cross_identity_check(const PrimeSet& ps, long long x) {
    double lhs = 0, rhs = 0;
    for (long long p : census_primes(ps, x)) {
        lhs += 0.5 * hurwitz(-4 * p).to_double() / (double)p;
        double sp = std::sqrt((double)p);
        double inner = l1_from_class_number(-4 * p) / sp;
        if (p % 4 == 3) inner += 0.5 * l1_from_class_number(-p) / sp;
        rhs += inner / M_PI;
    }
    return {lhs, rhs};
}

double minimality_density(long long A, long long B) {
    if (A < 1 || B < 1) throw std::invalid_argument("minimality_density: A,B >= 1");
    long long minimal = 0;
    std::vector<long long> qs;
    for (long long a = -A; a <= A; ++a) {
        if (a == 0) {
            for (long long b = -B; b <= B; ++b)
                if (b != 0 && minimality_filter(0, b)) ++minimal;
            continue;
        }
        fourth_power_primes(a, qs);
        if (qs.empty()) {
            minimal += 2 * B + 1;
            continue;
        }
        for (long long b = -B; b <= B; ++b)
            if (minimality_filter(a, b)) ++minimal;
    }
    long long pairs = (2 * A + 1) * (2 * B + 1) - 1; // (0,0) excluded
    return (double)minimal / (double)pairs;
}

long long cm_pairs_in_box(const CurveBox& box) {
    validate_box(box);
    auto passes = [&](long long a, long long b) {
        return !box.minimal_only || minimality_filter(a, b);
    };
    long long count = 0;
    // j = 0 and j = 1728 columns
    for (long long b = 1; b <= box.B; ++b)
        count += passes(0, b) + passes(0, -b);
    for (long long a = 1; a <= box.A; ++a)
        count += passes(a, 0) + passes(-a, 0);
    // the eleven families with a, b both nonzero
    for (long long J : cm_j_invariants()) {
        if (J == 0 || J == 1728) continue;
        for (long long s = -1; s <= 1; s += 2) {
            for (long long aa = 1; aa <= box.A; ++aa) {
                long long a = s * aa;
                __int128 num = (__int128)4 * a * a * a * (1728 - (__int128)J);
                __int128 den = (__int128)27 * J;
                if (num % den) continue;
                __int128 v = num / den;
                if (v <= 0 || v > (__int128)box.B * box.B) continue;
                long long b = isqrt((long long)v);
                if ((__int128)b * b != v) continue;
                count += passes(a, b) + passes(a, -b);
            }
        }
    }
    return count;
}

std::vector<CensusReport> convergence_report(const PrimeSet& ps, const CurveBox& box,
                                             const std::vector<long long>& x_grid,
                                             int workers, bool cm_diagnostic) {
    validate_box(box);
    for (size_t i = 1; i < x_grid.size(); ++i)
        if (x_grid[i] <= x_grid[i - 1])
            throw std::invalid_argument("convergence_report: x grid must ascend");
    double C = k_constant(ps).C;
    std::optional<long long> cm;
    if (cm_diagnostic) cm = cm_pairs_in_box(box);
    std::vector<CensusReport> out;
    for (long long x : x_grid) {
        CensusReport r;
        r.x = x;
        r.box = box;
        r.prime_set = ps.str();
        r.empirical_avg = family_average(census_fast(ps, box, x, workers), box);
        r.hurwitz_avg = hurwitz_average(ps, x);
        r.lsum_over_x = x > 0 ? lfunc_prime_sum(ps, x) / (double)x : 0.0;
        r.predicted = x >= 2 ? C * std::sqrt((double)x) / std::log((double)x) : 0.0;
        r.ratio_emp_pred = r.predicted > 0 ? r.empirical_avg / r.predicted : 0.0;
        r.ratio_hur_pred = r.predicted > 0 ? r.hurwitz_avg / r.predicted : 0.0;
        r.cm_pairs = cm;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace ssavg
