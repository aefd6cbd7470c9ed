#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ssavg/cli.hpp"

namespace {

std::vector<long long> parse_grid(const std::string& csv) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"supersingular prime census and predicted constants"};
    app.require_subcommand(1);

    ssavg::RunConfig cfg;
    std::string format = "json";
    std::string x_grid_csv;
    long long x_single = 0;

    auto add_common = [&](CLI::App* sub, bool with_box) {
        sub->add_option("--set", cfg.set_spec,
                        "prime set: all | \"c1,c2 mod m\" | split:Q(sqrt:D) | split:Q(zeta:m)");
        sub->add_option("--x", x_single, "single bound x");
        sub->add_option("--x-grid", x_grid_csv, "comma-separated ascending bounds");
        sub->add_option("--workers", cfg.workers, "worker threads (0: CENSUS_WORKERS or hardware)");
        sub->add_option("--format", format, "csv | json | gnuplot");
        sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
        if (with_box) {
            sub->add_option("--A", cfg.A, "box half-width for a");
            sub->add_option("--B", cfg.B, "box half-width for b");
            sub->add_flag("--minimal", cfg.minimal, "restrict to minimal Weierstrass models");
            sub->add_flag("--cm-diagnostic", cfg.cm_diagnostic,
                          "report the CM pair count of the box");
        }
    };

    auto* c_constants = app.add_subcommand("constants", "predicted constants K_P and C_P");
    add_common(c_constants, false);

    auto* c_census = app.add_subcommand("census", "family census vs prediction");
    add_common(c_census, true);

    auto* c_hurwitz = app.add_subcommand("hurwitz", "Hurwitz numbers and averages");
    add_common(c_hurwitz, false);
    c_hurwitz->add_option("--d", cfg.d, "single discriminant: print exact H(d)");

    auto* c_lsum = app.add_subcommand("lsum", "L-value prime sums");
    add_common(c_lsum, false);

    auto* c_heuristic = app.add_subcommand("heuristic", "approximation-model quantities");
    add_common(c_heuristic, false);
    c_heuristic->add_option("--M", cfg.M, "level (full image assumed)");
    c_heuristic->add_option("--k", cfg.k, "rational torsion order");
    c_heuristic->add_option("--n", cfg.n, "field degree");
    c_heuristic->add_option("--p", cfg.p, "prime for the normalizer check");

    auto* c_verify = app.add_subcommand("verify", "run the invariant suite");
    add_common(c_verify, false);

    auto* c_demo = app.add_subcommand("demo", "torsion-4 obstruction and Sato-Tate demos");
    add_common(c_demo, false);
    c_demo->add_option("--bins", cfg.bins, "histogram bins");

    CLI11_PARSE(app, argc, argv);

    if (c_constants->parsed()) cfg.cmd = ssavg::RunConfig::Cmd::constants;
    else if (c_census->parsed()) cfg.cmd = ssavg::RunConfig::Cmd::census;
    else if (c_hurwitz->parsed()) cfg.cmd = ssavg::RunConfig::Cmd::hurwitz;
    else if (c_lsum->parsed()) cfg.cmd = ssavg::RunConfig::Cmd::lsum;
    else if (c_heuristic->parsed()) cfg.cmd = ssavg::RunConfig::Cmd::heuristic;
    else if (c_verify->parsed()) cfg.cmd = ssavg::RunConfig::Cmd::verify;
    else cfg.cmd = ssavg::RunConfig::Cmd::demo;

    try {
        if (!x_grid_csv.empty()) cfg.x_grid = parse_grid(x_grid_csv);
        else if (x_single > 0) cfg.x_grid = {x_single};
        if (cfg.cmd == ssavg::RunConfig::Cmd::census && cfg.x_grid.empty()) {
            std::cerr << "error: census requires --x or --x-grid\n";
            return 1;
        }
        if (cfg.cmd == ssavg::RunConfig::Cmd::demo && x_single > 0) cfg.demo_x = x_single;

        if (format == "csv") cfg.format = ssavg::RunConfig::Fmt::csv;
        else if (format == "json") cfg.format = ssavg::RunConfig::Fmt::json;
        else if (format == "gnuplot") cfg.format = ssavg::RunConfig::Fmt::gnuplot;
        else {
            std::cerr << "error: unknown format '" << format << "'\n";
            return 1;
        }

        if (!cfg.out_path.empty()) {
            std::ofstream out(cfg.out_path);
            if (!out) {
                std::cerr << "error: cannot open " << cfg.out_path << '\n';
                return 1;
            }
            return ssavg::run(cfg, out);
        }
        return ssavg::run(cfg, std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
