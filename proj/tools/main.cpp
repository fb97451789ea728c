#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using isingmaps::cli::RunConfig;

int main(int argc, char** argv) {
    RunConfig cfg;
    try {
        cfg.precision_bits = isingmaps::cli::default_precision();
    } catch (const isingmaps::cli::UsageError& e) {
        std::cerr << isingmaps::cli::error_json("UsageError", e.what()).dump(2) << "\n";
        return 2;
    }

    CLI::App app{"Ising model on random tetravalent planar maps: series, singularities, critical exponents"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out, "Write output to this file instead of stdout");
    app.add_option("--precision", cfg.precision_bits, "Working precision in bits (env ISINGMAPS_PRECISION)")
        ->check(CLI::Range(16L, 1L << 20));
    app.add_option("--jobs", cfg.jobs, "Worker threads for sweeps and enumeration")->check(CLI::PositiveNumber);

    auto point = [&](CLI::App* s) {
        s->add_option("--nu", cfg.nu, "nu = e^(2 beta), exact rational (comma list for radius sweeps)");
        s->add_option("--c", cfg.c, "c = e^h, exact rational (comma list for radius sweeps)");
    };

    auto* coeffs = app.add_subcommand("coeffs", "Coefficients Z_1..Z_nmax of the partition function");
    point(coeffs);
    coeffs->add_option("--n-max", cfg.n_max, "Largest n");
    coeffs->add_flag("--symbolic", cfg.symbolic, "Exact Laurent polynomials in nu, c");
    coeffs->add_flag("--numeric", cfg.numeric, "High-precision values at (nu, c) (default)");
    coeffs->add_flag("--exact", cfg.exact, "Exact rational values at (nu, c)");

    auto* enumerate = app.add_subcommand("enumerate", "Brute-force partition function by map enumeration (n <= 4)");
    enumerate->add_option("--n", cfg.n, "Number of vertices")->required();

    auto* radius = app.add_subcommand("radius", "Dominant singularity rho, mu = c*rho, S(rho), exponent");
    point(radius);
    radius->add_option("--tol", cfg.tol, "Enclosure width for rho");
    radius->add_flag("--allow-outside", cfg.allow_outside, "Allow |c - 1| > 1/4 (adds a warning)");

    auto* puiseux = app.add_subcommand("puiseux", "Newton-polygon expansion of S at its dominant singularity");
    point(puiseux);
    puiseux->add_option("--terms", cfg.terms, "Terms per branch");

    auto* observables = app.add_subcommand("observables", "Free energy, magnetization, susceptibility");
    point(observables);
    observables->add_flag("--thermo", cfg.thermo, "Thermodynamic M and chi by finite differences of rho in c");
    observables->add_option("--step", cfg.h, "Finite-difference step in c");
    observables->add_option("--tol", cfg.tol, "Step-halving tolerance");
    observables->add_option("--n", cfg.n, "Also report finite-n observables for this n")->each([&](const std::string&) {
        cfg.finite = true;
    });
    observables->add_flag("--numeric", cfg.numeric, "Finite-n values by numeric differences instead of exactly");

    auto* fit = app.add_subcommand("exponent-fit", "Fit Z_n mu^n ~ A n^(-alpha)");
    point(fit);
    fit->add_option("--n-max", cfg.n_max, "Largest n");
    fit->add_option("--n-min", cfg.n_min, "Smallest n in the fit (default n_max/2)");
    fit->add_flag("--allow-outside", cfg.allow_outside, "Allow |c - 1| > 1/4");

    app.add_subcommand("check", "Run the invariant battery; nonzero exit on any failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    std::string out, err;
    const int rc = isingmaps::cli::execute(cfg, out, err);
    if (!err.empty()) std::cerr << err;
    if (!cfg.out.empty() && rc != 2) {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << isingmaps::cli::error_json("UsageError", "cannot write " + cfg.out).dump(2) << "\n";
            return 2;
        }
        f << out;
    } else {
        std::cout << out;
    }
    return rc;
}
