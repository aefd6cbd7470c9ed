#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ssavg/cli.hpp"
#include "ssavg/constants.hpp"

using namespace ssavg;

TEST_CASE("parse_prime_set accepts the documented grammar") {
    CHECK(parse_prime_set("all").m == 1);
    auto a = parse_prime_set("1 mod 3");
    CHECK(a.m == 3);
    CHECK(a.residues == std::vector<long long>{1});
    auto b = parse_prime_set("1,4 mod 5");
    CHECK(b.m == 5);
    CHECK(b.residues == std::vector<long long>{1, 4});
    auto c = parse_prime_set("split:Q(sqrt:5)");
    CHECK(c.m == 5);
    CHECK(c.residues == std::vector<long long>{1, 4});
    auto d = parse_prime_set("split:Q(sqrt:-3)");
    CHECK(d.residues == std::vector<long long>{1});
    auto e = parse_prime_set("split:Q(zeta:15)");
    CHECK(e.m == 15);
    CHECK(e.residues == std::vector<long long>{1});
}

TEST_CASE("parse_prime_set errors carry a position") {
    CHECK_THROWS_WITH_AS(parse_prime_set("2 mod 4"),
                         doctest::Contains("not coprime"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_prime_set("1 mod"),
                         doctest::Contains("position"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_prime_set("split:Q(cube:5)"),
                         doctest::Contains("position 8"), std::invalid_argument);
    CHECK_THROWS_AS(parse_prime_set("frogs"), std::invalid_argument);
    CHECK_THROWS_AS(parse_prime_set("1 mod 3 extra"), std::invalid_argument);
}

TEST_CASE("format_real uses 12 significant digits") {
    CHECK(format_real(M_PI / 9) == "0.349065850399");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(0.5) == "0.5");
}

TEST_CASE("constants subcommand emits K, C and the exact hint") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::constants;
    cfg.set_spec = "1 mod 3";
    std::ostringstream os;
    CHECK(run(cfg, os) == 0);
    auto s = os.str();
    CHECK(s.find("\"K\": 0.548311355616") != std::string::npos);
    CHECK(s.find("\"C\": 0.349065850399") != std::string::npos);
    CHECK(s.find("\"C_exact_hint\": \"pi/9\"") != std::string::npos);
}

TEST_CASE("constants hint covers multiples of pi") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::constants;
    cfg.set_spec = "2 mod 3";
    std::ostringstream os;
    CHECK(run(cfg, os) == 0);
    CHECK(os.str().find("\"C_exact_hint\": \"2*pi/9\"") != std::string::npos);

    cfg.set_spec = "all";
    std::ostringstream os2;
    CHECK(run(cfg, os2) == 0);
    CHECK(os2.str().find("\"C_exact_hint\": \"pi/3\"") != std::string::npos);
}

TEST_CASE("census CSV header and row shape") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::census;
    cfg.set_spec = "1 mod 3";
    cfg.A = 10;
    cfg.B = 10;
    cfg.x_grid = {50, 100};
    cfg.workers = 1;
    cfg.format = RunConfig::Fmt::csv;
    std::ostringstream os;
    REQUIRE(run(cfg, os) == 0);
    std::istringstream in(os.str());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "x,A,B,prime_set,empirical_avg,hurwitz_avg,lsum_over_x,predicted,"
          "ratio_emp_pred,ratio_hur_pred");
    std::string row;
    int rows = 0;
    while (std::getline(in, row))
        if (!row.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("census output is identical across worker counts") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::census;
    cfg.set_spec = "all";
    cfg.A = 8;
    cfg.B = 8;
    cfg.x_grid = {60};
    cfg.format = RunConfig::Fmt::csv;
    cfg.workers = 1;
    std::ostringstream a, b;
    REQUIRE(run(cfg, a) == 0);
    cfg.workers = 4;
    REQUIRE(run(cfg, b) == 0);
    CHECK(a.str() == b.str());
}

TEST_CASE("gnuplot format has comment header and three columns") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::census;
    cfg.set_spec = "all";
    cfg.A = 5;
    cfg.B = 5;
    cfg.x_grid = {30};
    cfg.workers = 1;
    cfg.format = RunConfig::Fmt::gnuplot;
    std::ostringstream os;
    REQUIRE(run(cfg, os) == 0);
    auto s = os.str();
    CHECK(s.rfind("#", 0) == 0);
    std::istringstream in(s);
    std::string line;
    std::getline(in, line); // comment
    std::getline(in, line);
    int fields = 1;
    for (char ch : line)
        if (ch == ' ') ++fields;
    CHECK(fields == 3);
}

TEST_CASE("hurwitz subcommand prints exact rationals") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::hurwitz;
    cfg.d = -12;
    std::ostringstream os;
    REQUIRE(run(cfg, os) == 0);
    CHECK(os.str().find("\"H\": \"4/3\"") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::constants;
    cfg.set_spec = "2 mod 4";
    std::ostringstream os;
    CHECK(run(cfg, os) == 1);
}

TEST_CASE("heuristic subcommand reports the scaled normalizer") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::heuristic;
    cfg.M = 12;
    cfg.k = 1;
    cfg.n = 2;
    cfg.p = 10007;
    std::ostringstream os;
    REQUIRE(run(cfg, os) == 0);
    auto s = os.str();
    CHECK(s.find("\"F_M_0\"") != std::string::npos);
    CHECK(s.find("\"predicted_C\"") != std::string::npos);
    CHECK(s.find("\"normalizer_scaled\"") != std::string::npos);
}

TEST_CASE("verify subcommand passes and exits 0") {
    RunConfig cfg;
    cfg.cmd = RunConfig::Cmd::verify;
    cfg.workers = 1;
    std::ostringstream os;
    CHECK(run(cfg, os) == 0);
    CHECK(os.str().find("FAIL") == std::string::npos);
}
