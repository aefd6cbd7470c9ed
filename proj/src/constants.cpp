#include "ssavg/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ssavg/arith.hpp"

namespace ssavg {

namespace {

template <typename T>
T frac(long long n, long long d);

template <>
Rational frac<Rational>(long long n, long long d) { return Rational(n, d); }

template <>
double frac<double>(long long n, long long d) { return (double)n / (double)d; }

// One summand of the divisor sum: (-c|k)/k * prod over p|k, p not dividing
// mm/k of (1 - (-c|p)/p)^{-1}. Symbols are Kronecker symbols so that even k
// (which occur in the 4|m second term once 8|m) are well defined.
template <typename T>
T divisor_term(long long k, long long mm, long long c) {
    T t = frac<T>(kronecker(-c, k), k);
    for (auto [p, e] : factorize(k).factors) {
        if ((mm / k) % p == 0) continue;
        t = t * frac<T>(p, p - kronecker(-c, p));
    }
    return t;
}

template <typename T>
T squares_product(long long mm) {
    T prod = frac<T>(1, 1);
    for (auto [p, e] : factorize(mm).factors)
        prod = prod * frac<T>(p * p - 1, p * p);
    return prod;
}

// K / zeta(2) for the class c mod m.
template <typename T>
T k_ratio_impl(long long c, long long m) {
    if (m < 1) throw std::invalid_argument("k_constant: modulus must be positive");
    c = ((c % m) + m) % m;
    if (std::gcd(c, m) != 1)
        throw std::invalid_argument("k_constant: residue not coprime to modulus");
    if (m % 4 == 2) return k_ratio_impl<T>(c % (m / 2), m / 2);

    auto divs = divisors(factorize(m));
    std::sort(divs.begin(), divs.end());
    if (m % 2 == 1) {
        T sum = frac<T>(0, 1);
        for (long long k : divs) sum = sum + divisor_term<T>(k, m, c);
        return frac<T>(1, euler_phi(m)) * squares_product<T>(m) * sum;
    }
    // 4 | m
    T sum = frac<T>(0, 1);
    for (long long k : divs)
        if (k % 2 == 1) sum = sum + divisor_term<T>(k, m, c);
    T first = frac<T>(1, euler_phi(m)) * squares_product<T>(m) * sum;
    if (c % 4 != 3) return first;
    long long m4 = m / 4;
    T sum2 = frac<T>(0, 1);
    for (long long k : divisors(factorize(m4)))
        sum2 = sum2 + divisor_term<T>(k, m4, c);
    T second = frac<T>(1, 2 * euler_phi(m)) * squares_product<T>(m4) * sum2;
    return first + second;
}

} // namespace

double zeta2() { return M_PI * M_PI / 6.0; }

double k_constant_single(long long c, long long m) {
    return k_ratio_impl<double>(c, m) * zeta2();
}

Rational k_ratio_single(long long c, long long m) {
    return k_ratio_impl<Rational>(c, m);
}

bool PrimeSet::contains(long long p) const {
    long long r = ((p % m) + m) % m;
    return std::binary_search(residues.begin(), residues.end(), r);
}

Rational PrimeSet::density() const {
    return Rational((long long)residues.size(), euler_phi(m));
}

std::string PrimeSet::str() const {
    if (m == 1) return "all";
    std::string s;
    for (size_t i = 0; i < residues.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(residues[i]);
    }
    return s + " mod " + std::to_string(m);
}

PrimeSet make_prime_set(long long m, std::vector<long long> residues) {
    if (m < 1) throw std::invalid_argument("PrimeSet: modulus must be positive");
    for (auto& c : residues) {
        c = ((c % m) + m) % m;
        if (std::gcd(c, m) != 1)
            throw std::invalid_argument("PrimeSet: residue not coprime to modulus");
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    if (residues.empty()) throw std::invalid_argument("PrimeSet: no residues");
    PrimeSet ps;
    ps.m = m;
    ps.residues = std::move(residues);
    return ps;
}

PrimeSet all_primes() { return make_prime_set(1, {0}); }

ConstantResult k_constant(const PrimeSet& ps) {
    ConstantResult res;
    res.density = ps.density();
    bool exact_ok = true;
    Rational exact(0);
    for (long long c : ps.residues) {
        double kc = k_constant_single(c, ps.m);
        res.per_class[c] = kc;
        res.K += kc;
        if (exact_ok) {
            try {
                exact += k_ratio_single(c, ps.m);
            } catch (const std::overflow_error&) {
                exact_ok = false;
            }
        }
    }
    res.C = 2.0 / M_PI * res.K;
    if (exact_ok) res.k_over_zeta2 = exact;
    return res;
}

FieldDescriptor quadratic_field(long long d) {
    return {FieldDescriptor::Kind::quadratic, d};
}

FieldDescriptor cyclotomic_field(long long m) {
    return {FieldDescriptor::Kind::cyclotomic, m};
}

PrimeSet split_prime_set(const FieldDescriptor& field) {
    if (field.kind == FieldDescriptor::Kind::cyclotomic) {
        long long m = field.param;
        if (m < 1) throw std::invalid_argument("split_prime_set: conductor must be positive");
        return make_prime_set(m, {1 % m});
    }
    long long d = field.param;
    if (d == 0 || d == 1) throw std::invalid_argument("split_prime_set: D must not be 0 or 1");
    long long ad = d < 0 ? -d : d;
    for (auto [p, e] : factorize(ad).factors)
        if (e > 1) throw std::invalid_argument("split_prime_set: D must be squarefree");
    long long disc = (((d % 4) + 4) % 4 == 1) ? d : 4 * d;
    long long mod = disc < 0 ? -disc : disc;
    std::vector<long long> residues;
    for (long long c = 1; c < mod; ++c)
        if (std::gcd(c, mod) == 1 && kronecker(disc, c) == 1) residues.push_back(c);
    return make_prime_set(mod, std::move(residues));
}

double quadratic_closed_form(long long q, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("quadratic_closed_form: sign must be +1 or -1");
    if (q < 3 || q % 2 == 0)
        throw std::invalid_argument("quadratic_closed_form: q must be an odd prime");
    for (long long t = 3; t * t <= q; t += 2)
        if (q % t == 0) throw std::invalid_argument("quadratic_closed_form: q must be prime");
    double base = M_PI / 3.0 * 0.5;
    double qd = (double)q;
    if (sign < 0)
        return base * ((q % 4 == 3) ? (qd - 1.0) / qd : (qd - 0.25) / qd);
    return base * ((q % 4 == 3) ? (qd + 0.25) / qd : (qd + 1.0) / qd);
}

} // namespace ssavg
