#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcf/config.hpp"
#include "gcf/suites.hpp"
#include "gcf/variational.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fibration-lab: numerical verification of great circle fibrations of S^3"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> suites;

    CLI::App* run = app.add_subcommand("run", "run verification suites from a config");
    run->add_option("--config", config_path, "config file (JSON)")->required();
    run->add_option("--suite", suites, "suite name (repeatable; overrides config)");
    run->add_option("--out", out_dir, "output directory (overrides config)");

    CLI::App* certify = app.add_subcommand("certify", "certify the strictly decreasing property");
    certify->add_option("--config", config_path, "config file (JSON)")->required();

    CLI::App* functionals_cmd =
        app.add_subcommand("functionals", "energy and volume of the fibration");
    functionals_cmd->add_option("--config", config_path, "config file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        gcf::RunConfig cfg = gcf::load_config(config_path);
        if (!suites.empty()) {
            for (const auto& s : suites) {
                bool known = false;
                for (const auto& k : gcf::all_suites()) known = known || k == s;
                if (!known) throw std::invalid_argument("unknown suite '" + s + "'");
            }
            cfg.suites = suites;
        }
        if (!out_dir.empty()) cfg.output_dir = out_dir;

        if (run->parsed()) {
            const int status = gcf::run_all(cfg);
            std::printf("reports written to %s (%s)\n", cfg.output_dir.c_str(),
                        status == 0 ? "all suites passed" : "FAILURES, see summary.txt");
            return status;
        }
        if (certify->parsed()) {
            const gcf::DilationCertificate cert =
                gcf::certify_decreasing(cfg.map, cfg.samples.certify,
                                        cfg.tolerances.margin_decreasing);
            std::printf("map=%s samples=%d sup_singular_value=%.9f decreasing=%s\n",
                        cfg.map.name.c_str(), cert.n_samples, cert.sup_sv,
                        cert.decreasing ? "yes" : "no");
            return cert.decreasing ? 0 : 1;
        }
        if (functionals_cmd->parsed()) {
            const gcf::Fibration fib = gcf::Fibration::create(
                cfg.map, {cfg.tolerances.solver_tol, cfg.tolerances.solver_max_iter},
                cfg.samples.certify);
            const gcf::FunctionalReport rep = gcf::functionals(fib, cfg.grid);
            std::printf("energy=%.9f volume=%.9f nodes=%zu estimated_error=%.3e\n", rep.energy,
                        rep.volume, rep.quadrature_nodes, rep.estimated_error);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
