#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ssavg/constants.hpp"

namespace ssavg {

struct RunConfig {
    enum class Cmd { constants, census, hurwitz, lsum, heuristic, verify, demo };
    enum class Fmt { csv, json, gnuplot };

    Cmd cmd = Cmd::constants;
    std::string set_spec = "all";
    long long A = 1;
    long long B = 1;
    std::vector<long long> x_grid;
    long long d = 0; // hurwitz: single discriminant query
    bool minimal = false;
    bool cm_diagnostic = false;
    int workers = 0;
    long long M = 1, k = 1, n = 1, p = 0; // heuristic inputs
    long long demo_x = 10000;
    int bins = 20;
    Fmt format = Fmt::json;
    std::string out_path; // empty: stdout
};

// "all" | "c1,c2 mod m" | "split:Q(sqrt:D)" | "split:Q(zeta:m)".
// Throws std::invalid_argument with the offending position on parse errors.
PrimeSet parse_prime_set(const std::string& spec);

// Executes the configured subcommand, writing the report to os.
// Returns 0 on success, 1 on usage errors, 2 on invariant violations.
int run(const RunConfig& cfg, std::ostream& os);

// 12 significant digits, shared by every emitter.
std::string format_real(double v);

} // namespace ssavg
