#include "ssavg/classnum.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ssavg/arith.hpp"

namespace ssavg {

namespace {

// Smallest-prime-factor table shared by all class number computations.
// Grown on demand under a mutex; readers take a shared_ptr snapshot.
std::shared_ptr<const std::vector<int32_t>> spf_snapshot(long long limit) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<int32_t>> table;
    std::lock_guard<std::mutex> lock(mu);
    if (!table || (long long)table->size() <= limit) {
        // grow geometrically: ascending sweeps would otherwise rebuild per call
        long long n = std::max<long long>(limit + 1, 1 << 16);
        if (table) n = std::max<long long>(n, 2 * (long long)table->size());
        auto t = std::make_shared<std::vector<int32_t>>((size_t)n, 0);
        auto& v = *t;
        for (long long i = 2; i < n; ++i) {
            if (v[(size_t)i]) continue;
            for (long long j = i; j < n; j += i)
                if (!v[(size_t)j]) v[(size_t)j] = (int32_t)i;
        }
        table = std::move(t);
    }
    return table;
}

constexpr long long kSpfCap = 1LL << 25;

void push_divisors(long long m, const std::vector<int32_t>* spf,
                   std::vector<long long>& divs) {
    divs.clear();
    divs.push_back(1);
    long long t = m;
    while (t > 1) {
        long long p;
        if (spf && t < (long long)spf->size()) {
            p = (*spf)[(size_t)t];
        } else {
            p = t;
            for (long long q = 2; q * q <= t; q += (q == 2 ? 1 : 2))
                if (t % q == 0) { p = q; break; }
        }
        int e = 0;
        while (t % p == 0) { t /= p; ++e; }
        size_t cur = divs.size();
        long long pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < cur; ++j) divs.push_back(divs[j] * pk);
        }
    }
}

} // namespace

bool is_discriminant(long long d) {
    if (d >= 0) return false;
    long long r = ((d % 4) + 4) % 4;
    return r == 0 || r == 1;
}

long long class_number(long long d) {
    if (!is_discriminant(d))
        throw std::invalid_argument("class_number: d must be negative and 0,1 mod 4");
    long long absd = -d;
    long long mmax = (absd / 3 + absd) / 4 + 2;
    std::shared_ptr<const std::vector<int32_t>> spf;
    if (mmax <= kSpfCap) spf = spf_snapshot(mmax);

    long long h = 0;
    std::vector<long long> divs;
    for (long long b = absd & 1; 3 * b * b <= absd; b += 2) {
        long long m = (b * b + absd) / 4;
        push_divisors(m, spf ? spf.get() : nullptr, divs);
        for (long long a : divs) {
            if (a < b || a < 1 || a * a > m) continue;
            long long c = m / a;
            if (std::gcd(a, std::gcd(b, c)) != 1) continue;
            h += (b == 0 || b == a || a == c) ? 1 : 2;
        }
    }
    return h;
}

int unit_count(long long d) {
    if (d >= 0) throw std::invalid_argument("unit_count: d must be negative");
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

DiscriminantRecord discriminant_record(long long d) {
    static std::mutex mu;
    static std::unordered_map<long long, DiscriminantRecord> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(d);
        if (it != memo.end()) return it->second;
    }
    DiscriminantRecord rec;
    rec.d = d;
    rec.h = class_number(d);
    rec.w = unit_count(d);
    rec.L1 = 2.0 * M_PI * (double)rec.h / ((double)rec.w * std::sqrt((double)(-d)));
    {
        std::lock_guard<std::mutex> lock(mu);
        memo.emplace(d, rec); // idempotent: any thread computes the same value
    }
    return rec;
}

Rational hurwitz(long long D) {
    if (!is_discriminant(D))
        throw std::invalid_argument("hurwitz: D must be negative and 0,1 mod 4");
    Rational acc(0);
    for (long long f = 1; f * f <= -D; ++f) {
        if (D % (f * f)) continue;
        long long d = D / (f * f);
        if (!is_discriminant(d)) continue;
        auto rec = discriminant_record(d);
        acc += Rational(rec.h, rec.w);
    }
    return acc * Rational(2);
}

double l1_from_class_number(long long d) {
    return discriminant_record(d).L1;
}

double l1_series(long long d, double tol) {
    if (!is_discriminant(d)) throw std::invalid_argument("l1_series: invalid discriminant");
    if (!(tol > 0)) throw std::invalid_argument("l1_series: tol must be positive");
    const long long q = -d;

    std::vector<int> chi((size_t)q);
    for (long long r = 0; r < q; ++r) chi[(size_t)r] = kronecker(d, r);

    // chi_d is a nontrivial character mod |d|: the prefix sums over one
    // period are bounded and the full period sums to zero.
    long long prefix = 0, bmax = 0;
    for (long long r = 0; r < q; ++r) {
        prefix += chi[(size_t)r];
        bmax = std::max(bmax, prefix < 0 ? -prefix : prefix);
    }
    if (prefix != 0)
        throw std::logic_error("l1_series: character period does not sum to zero");
    const long double B = (long double)std::max<long long>(bmax, 1);

    // Tail after N = C*q terms: sum over blocks M = N, N+q, ... of
    //   f(M) = sum_r chi(r)/(M+r) = sum_{j>=1} (-1)^j W_j / M^{j+1},
    // with W_j = sum_r chi(r) r^j and |W_j| <= B q^j. Truncate at J and sum
    // the block series via Hurwitz-zeta style partial sums; every remainder
    // is bounded explicitly so the result is certified below tol.
    const int J = 8;
    long long C = 10;
    const long double lq = (long double)q;
    long double N = 0;
    for (;; C *= 2) {
        if (C > (1LL << 24))
            throw std::runtime_error("l1_series: cannot certify tolerance");
        N = (long double)C * lq;
        long double trunc = (B / (1.0L - 1.0L / C)) * powl(lq, J + 1) *
                            (powl(N, -(long double)(J + 2)) +
                             powl(N, -(long double)(J + 1)) / ((J + 1) * lq));
        if (trunc < 0.25L * (long double)tol) break;
    }
    const long long Nn = C * q;

    long double direct = 0.0L;
    for (long long n = 1; n <= Nn; ++n)
        direct += (long double)chi[(size_t)(n % q)] / (long double)n;

    std::vector<long double> W((size_t)J + 1, 0.0L);
    for (long long r = 1; r < q; ++r) {
        if (!chi[(size_t)r]) continue;
        long double rj = (long double)r;
        for (int j = 1; j <= J; ++j) {
            W[(size_t)j] += (long double)chi[(size_t)r] * rj;
            rj *= (long double)r;
        }
    }

    const long long K = 4096;
    long double tail = 0.0L;
    for (int j = 1; j <= J; ++j) {
        int s = j + 1;
        long double Z = 0.0L;
        for (long long k = 0; k < K; ++k)
            Z += powl(N + (long double)k * lq, -(long double)s);
        long double Mk = N + ((long double)K - 0.5L) * lq;
        Z += powl(Mk, (long double)(1 - s)) / (lq * (long double)(s - 1));
        tail += ((j & 1) ? -1.0L : 1.0L) * W[(size_t)j] * Z;
    }
    return (double)(direct + tail);
}

} // namespace ssavg
