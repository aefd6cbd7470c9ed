#include "ssavg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ssavg/arith.hpp"
#include "ssavg/census.hpp"
#include "ssavg/classnum.hpp"
#include "ssavg/curves.hpp"
#include "ssavg/heuristic.hpp"

namespace ssavg {

using ordered_json = nlohmann::ordered_json;

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

// JSON numbers go through the same 12-significant-digit policy as text.
double json_real(double v) { return std::stod(format_real(v)); }

} // namespace

namespace {

[[noreturn]] void parse_fail(size_t pos, const std::string& what) {
    throw std::invalid_argument("prime set spec error at position " +
                                std::to_string(pos) + ": " + what);
}

long long parse_int(const std::string& s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = 0;
    long long v = 0;
    bool neg = start < s.size() && s[start] == '-';
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        v = v * 10 + (s[pos] - '0');
        ++pos;
        ++digits;
    }
    if (!digits) parse_fail(start, "expected an integer");
    return neg ? -v : v;
}

void skip_spaces(const std::string& s, size_t& pos) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
}

} // namespace

PrimeSet parse_prime_set(const std::string& spec) {
    size_t pos = 0;
    skip_spaces(spec, pos);
    if (spec.compare(pos, 3, "all") == 0) {
        size_t end = pos + 3;
        skip_spaces(spec, end);
        if (end != spec.size()) parse_fail(end, "trailing characters after 'all'");
        return all_primes();
    }
    if (spec.compare(pos, 6, "split:") == 0) {
        pos += 6;
        if (spec.compare(pos, 2, "Q(") != 0) parse_fail(pos, "expected 'Q('");
        pos += 2;
        bool quadratic;
        if (spec.compare(pos, 5, "sqrt:") == 0) { quadratic = true; pos += 5; }
        else if (spec.compare(pos, 5, "zeta:") == 0) { quadratic = false; pos += 5; }
        else parse_fail(pos, "expected 'sqrt:' or 'zeta:'");
        long long v = parse_int(spec, pos);
        if (pos >= spec.size() || spec[pos] != ')') parse_fail(pos, "expected ')'");
        ++pos;
        skip_spaces(spec, pos);
        if (pos != spec.size()) parse_fail(pos, "trailing characters");
        return split_prime_set(quadratic ? quadratic_field(v) : cyclotomic_field(v));
    }
    // "c1,c2,... mod m"
    std::vector<long long> residues;
    residues.push_back(parse_int(spec, pos));
    skip_spaces(spec, pos);
    while (pos < spec.size() && spec[pos] == ',') {
        ++pos;
        skip_spaces(spec, pos);
        residues.push_back(parse_int(spec, pos));
        skip_spaces(spec, pos);
    }
    if (spec.compare(pos, 3, "mod") != 0) parse_fail(pos, "expected 'mod'");
    pos += 3;
    skip_spaces(spec, pos);
    long long m = parse_int(spec, pos);
    skip_spaces(spec, pos);
    if (pos != spec.size()) parse_fail(pos, "trailing characters");
    return make_prime_set(m, residues); // throws on non-coprime residues
}

namespace {

std::string exact_c_hint(const Rational& k_over_zeta2) {
    // C = (pi/3) * (K/zeta(2)): express as num*pi/den.
    Rational r = k_over_zeta2 * Rational(1, 3);
    std::string num = r.num == 1 ? "pi" : std::to_string(r.num) + "*pi";
    return r.den == 1 ? num : num + "/" + std::to_string(r.den);
}

void emit_census_csv(const std::vector<CensusReport>& rows, std::ostream& os) {
    os << "x,A,B,prime_set,empirical_avg,hurwitz_avg,lsum_over_x,predicted,"
          "ratio_emp_pred,ratio_hur_pred\n";
    for (const auto& r : rows) {
        os << r.x << ',' << r.box.A << ',' << r.box.B << ",\"" << r.prime_set << "\","
           << format_real(r.empirical_avg) << ',' << format_real(r.hurwitz_avg) << ','
           << format_real(r.lsum_over_x) << ',' << format_real(r.predicted) << ','
           << format_real(r.ratio_emp_pred) << ',' << format_real(r.ratio_hur_pred)
           << '\n';
    }
}

ordered_json census_row_json(const CensusReport& r) {
    ordered_json j;
    j["x"] = r.x;
    j["A"] = r.box.A;
    j["B"] = r.box.B;
    j["prime_set"] = r.prime_set;
    j["empirical_avg"] = json_real(r.empirical_avg);
    j["hurwitz_avg"] = json_real(r.hurwitz_avg);
    j["lsum_over_x"] = json_real(r.lsum_over_x);
    j["predicted"] = json_real(r.predicted);
    j["ratio_emp_pred"] = json_real(r.ratio_emp_pred);
    j["ratio_hur_pred"] = json_real(r.ratio_hur_pred);
    if (r.cm_pairs) j["cm_pairs"] = *r.cm_pairs;
    return j;
}

void emit_census(const std::vector<CensusReport>& rows, RunConfig::Fmt fmt,
                 std::ostream& os) {
    switch (fmt) {
        case RunConfig::Fmt::csv:
            emit_census_csv(rows, os);
            break;
        case RunConfig::Fmt::json: {
            ordered_json arr = ordered_json::array();
            for (const auto& r : rows) arr.push_back(census_row_json(r));
            os << arr.dump(2) << '\n';
            break;
        }
        case RunConfig::Fmt::gnuplot:
            os << "# x empirical_avg predicted\n";
            for (const auto& r : rows)
                os << r.x << ' ' << format_real(r.empirical_avg) << ' '
                   << format_real(r.predicted) << '\n';
            break;
    }
}

int run_constants(const RunConfig& cfg, std::ostream& os) {
    PrimeSet ps = parse_prime_set(cfg.set_spec);
    ConstantResult res = k_constant(ps);
    double bias = bias_ratio(ps);
    if (cfg.format == RunConfig::Fmt::json) {
        ordered_json j;
        j["set"] = ps.str();
        j["K"] = json_real(res.K);
        j["C"] = json_real(res.C);
        if (res.k_over_zeta2) j["C_exact_hint"] = exact_c_hint(*res.k_over_zeta2);
        j["density"] = res.density.str();
        j["bias_ratio"] = json_real(bias);
        ordered_json pc;
        for (auto [c, k] : res.per_class) pc[std::to_string(c)] = json_real(k);
        j["per_class"] = pc;
        os << j.dump(2) << '\n';
    } else {
        os << "set,K,C,density,bias_ratio\n";
        os << '"' << ps.str() << "\"," << format_real(res.K) << ','
           << format_real(res.C) << ',' << res.density.str() << ','
           << format_real(bias) << '\n';
    }
    return 0;
}

int run_census(const RunConfig& cfg, std::ostream& os) {
    PrimeSet ps = parse_prime_set(cfg.set_spec);
    CurveBox box{cfg.A, cfg.B, cfg.minimal};
    auto rows = convergence_report(ps, box, cfg.x_grid, cfg.workers, cfg.cm_diagnostic);
    emit_census(rows, cfg.format, os);
    return 0;
}

int run_hurwitz(const RunConfig& cfg, std::ostream& os) {
    if (cfg.d != 0) {
        Rational h = hurwitz(cfg.d);
        if (cfg.format == RunConfig::Fmt::json) {
            ordered_json j;
            j["D"] = cfg.d;
            j["H"] = h.str();
            j["H_real"] = json_real(h.to_double());
            os << j.dump(2) << '\n';
        } else {
            os << "D,H\n" << cfg.d << ',' << h.str() << '\n';
        }
        return 0;
    }
    if (cfg.x_grid.empty())
        throw std::invalid_argument("hurwitz: provide --d or --x/--x-grid");
    PrimeSet ps = parse_prime_set(cfg.set_spec);
    double C = k_constant(ps).C;
    ordered_json arr = ordered_json::array();
    if (cfg.format == RunConfig::Fmt::csv)
        os << "x,hurwitz_avg,predicted,ratio_hur_pred\n";
    else if (cfg.format == RunConfig::Fmt::gnuplot)
        os << "# x hurwitz_avg predicted\n";
    for (long long x : cfg.x_grid) {
        double h = hurwitz_average(ps, x);
        double pred = x >= 2 ? C * std::sqrt((double)x) / std::log((double)x) : 0.0;
        double ratio = pred > 0 ? h / pred : 0.0;
        switch (cfg.format) {
            case RunConfig::Fmt::csv:
                os << x << ',' << format_real(h) << ',' << format_real(pred) << ','
                   << format_real(ratio) << '\n';
                break;
            case RunConfig::Fmt::gnuplot:
                os << x << ' ' << format_real(h) << ' ' << format_real(pred) << '\n';
                break;
            case RunConfig::Fmt::json: {
                ordered_json j;
                j["x"] = x;
                j["hurwitz_avg"] = json_real(h);
                j["predicted"] = json_real(pred);
                j["ratio_hur_pred"] = json_real(ratio);
                arr.push_back(j);
                break;
            }
        }
    }
    if (cfg.format == RunConfig::Fmt::json) os << arr.dump(2) << '\n';
    return 0;
}

int run_lsum(const RunConfig& cfg, std::ostream& os) {
    if (cfg.x_grid.empty())
        throw std::invalid_argument("lsum: provide --x or --x-grid");
    PrimeSet ps = parse_prime_set(cfg.set_spec);
    double K = k_constant(ps).K;
    ordered_json arr = ordered_json::array();
    if (cfg.format == RunConfig::Fmt::csv) os << "x,lsum,lsum_over_x,K,ratio_lsum_Kx\n";
    else if (cfg.format == RunConfig::Fmt::gnuplot) os << "# x lsum_over_x K\n";
    for (long long x : cfg.x_grid) {
        double s = lfunc_prime_sum(ps, x);
        double over = x > 0 ? s / (double)x : 0.0;
        double ratio = K > 0 && x > 0 ? s / (K * (double)x) : 0.0;
        switch (cfg.format) {
            case RunConfig::Fmt::csv:
                os << x << ',' << format_real(s) << ',' << format_real(over) << ','
                   << format_real(K) << ',' << format_real(ratio) << '\n';
                break;
            case RunConfig::Fmt::gnuplot:
                os << x << ' ' << format_real(over) << ' ' << format_real(K) << '\n';
                break;
            case RunConfig::Fmt::json: {
                ordered_json j;
                j["x"] = x;
                j["lsum"] = json_real(s);
                j["lsum_over_x"] = json_real(over);
                j["K"] = json_real(K);
                j["ratio_lsum_kx"] = json_real(ratio);
                arr.push_back(j);
                break;
            }
        }
    }
    if (cfg.format == RunConfig::Fmt::json) os << arr.dump(2) << '\n';
    return 0;
}

int run_heuristic(const RunConfig& cfg, std::ostream& os) {
    HeuristicParams params{cfg.M, cfg.k, cfg.n};
    ordered_json j;
    j["M"] = cfg.M;
    j["k"] = cfg.k;
    j["n"] = cfg.n;
    j["F_M_0"] = trace_fraction(cfg.M, 0).str();
    j["predicted_C"] = json_real(predicted_constant(params));
    if (cfg.p > 0)
        j["normalizer_scaled"] = json_real(2.0 * std::sqrt((double)cfg.p) *
                                           model_normalizer(cfg.p, cfg.M, cfg.k));
    PrimeSet ps = parse_prime_set(cfg.set_spec);
    j["set"] = ps.str();
    j["bias_ratio"] = json_real(bias_ratio(ps));
    os << j.dump(2) << '\n';
    return 0;
}

struct VerifyState {
    std::ostream& os;
    bool ok = true;
    void check(const std::string& name, bool pass) {
        os << (pass ? "PASS " : "FAIL ") << name << '\n';
        ok = ok && pass;
    }
};

int run_verify(const RunConfig& cfg, std::ostream& os) {
    VerifyState v{os};

    for (long long m : {3LL, 4LL, 5LL, 8LL, 12LL, 15LL}) {
        double sum = 0;
        for (long long c = 0; c < m; ++c)
            if (std::gcd(c, m) == 1) sum += k_constant_single(c, m);
        v.check("partition sum mod " + std::to_string(m),
                std::abs(sum - zeta2()) < 1e-12 * zeta2());
    }

    v.check("refinement K(3,4) = K(3,8)+K(7,8)",
            std::abs(k_constant_single(3, 4) -
                     (k_constant_single(3, 8) + k_constant_single(7, 8))) < 1e-12);

    for (const char* spec : {"all", "1 mod 3"}) {
        auto [lhs, rhs] = cross_identity_check(parse_prime_set(spec), 2000);
        v.check(std::string("cross identity (") + spec + ", x=2000)",
                std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, lhs));
    }

    bool deuring = true;
    for (long long p : sieve_primes(61)) {
        if (p <= 3) continue;
        auto spec = trace_spectrum(p);
        Rational mass(0);
        for (auto& [r, cnt] : spec) {
            if (cnt != hurwitz(r * r - 4 * p)) deuring = false;
            mass += cnt;
        }
        if (mass != Rational(2 * p)) deuring = false;
    }
    v.check("Deuring identity and mass 2p for p <= 61", deuring);

    std::mt19937 rng(12345);
    bool census_ok = true;
    for (int i = 0; i < 5 && census_ok; ++i) {
        CurveBox box{(long long)(rng() % 12 + 1), (long long)(rng() % 12 + 1),
                     (i % 2) == 1};
        long long x = 20 + (long long)(rng() % 60);
        PrimeSet ps = (i % 3 == 0) ? all_primes()
                                   : make_prime_set(3, {1 + (long long)(i % 2)});
        census_ok = census_fast(ps, box, x, cfg.workers) == census_direct(ps, box, x);
    }
    v.check("census_fast equals census_direct on random configs", census_ok);

    bool fl = true;
    for (long long l : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL})
        fl = fl && trace_fraction(l, 0) == Rational(l * l, l * l - 1);
    v.check("F_l(0) = l^2/(l^2-1)", fl);

    double dens = minimality_density(500, 500);
    double z10inv = 93555.0 / std::pow(M_PI, 10);
    v.check("minimality density near 1/zeta(10)", std::abs(dens - z10inv) < 2e-2);

    return v.ok ? 0 : 2;
}

int run_demo(const RunConfig& cfg, std::ostream& os) {
    os << "== torsion-4 obstruction ==\n";
    Torsion4Curve t4 = find_torsion4_curve();
    os << "curve: y^2 = x^3 + (" << t4.a << ")x + (" << t4.b << "), order-4 point ("
       << t4.x0 << ", " << t4.y0 << ")\n";
    auto ss = torsion_4_obstruction_demo(t4.a, t4.b, cfg.demo_x);
    long long r1 = 0, r3 = 0;
    for (long long p : ss) (p % 4 == 1 ? r1 : r3)++;
    os << "supersingular primes <= " << cfg.demo_x << ": " << ss.size()
       << " (" << r1 << " are 1 mod 4, " << r3 << " are 3 mod 4)\n";

    os << "control curve y^2 = x^3 + x + 1 (trivial torsion):\n";
    auto ctrl = supersingular_primes(1, 1, cfg.demo_x);
    r1 = r3 = 0;
    for (long long p : ctrl) (p % 4 == 1 ? r1 : r3)++;
    os << "supersingular primes <= " << cfg.demo_x << ": " << ctrl.size()
       << " (" << r1 << " are 1 mod 4, " << r3 << " are 3 mod 4)\n";

    os << "== Sato-Tate histogram for y^2 = x^3 + x + 1 ==\n";
    auto h = sato_tate_histogram(1, 1, cfg.demo_x, cfg.bins);
    os << "samples: " << h.samples << ", sup-norm distance to Sato-Tate CDF: "
       << format_real(h.sup_distance) << '\n';
    for (size_t i = 0; i < h.mass.size(); ++i)
        os << "bin " << i << ": " << format_real(h.mass[i]) << '\n';
    return 0;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& os) {
    try {
        switch (cfg.cmd) {
            case RunConfig::Cmd::constants: return run_constants(cfg, os);
            case RunConfig::Cmd::census: return run_census(cfg, os);
            case RunConfig::Cmd::hurwitz: return run_hurwitz(cfg, os);
            case RunConfig::Cmd::lsum: return run_lsum(cfg, os);
            case RunConfig::Cmd::heuristic: return run_heuristic(cfg, os);
            case RunConfig::Cmd::verify: return run_verify(cfg, os);
            case RunConfig::Cmd::demo: return run_demo(cfg, os);
        }
    } catch (const std::invalid_argument& e) {
        os << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        os << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace ssavg
