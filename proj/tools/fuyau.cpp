// fuyau: batch solves, the invariant suite, and A sweeps.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fuyau/errors.hpp"
#include "fuyau/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral continuity-method solver for a sigma_2-type equation on flat complex tori"};
    app.require_subcommand(1);

    std::string solve_config;
    auto* solve = app.add_subcommand("solve", "Run continuation 0 -> 1 (or 1 -> 0) for a config");
    solve->add_option("config", solve_config, "JSON config (schema fuyau-config/1)")->required();

    fuyau::CheckOptions check_opt;
    auto* check = app.add_subcommand("check", "Run the runtime invariant suite");
    check->add_option("--filter", check_opt.filter, "Only checks whose name contains this text");
    check->add_option("--kappa-scale", check_opt.kappa_scale,
                      "Scale the frozen equivalence constant (negative control; != 1 must fail)");
    bool list = false;
    check->add_flag("--list", list, "List check names and exit");

    std::string study_config, a_list;
    bool reverse = false;
    auto* study = app.add_subcommand("study", "Sweep A with fixed rho, mu, alpha and write study.csv");
    study->add_option("config", study_config, "JSON config")->required();
    study->add_option("--A-list", a_list, "Comma-separated positive A values")->required();
    study->add_flag("--reverse", reverse, "Add the reverse-direction uniqueness cross-check per row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : fuyau::exit_code::config_error;
    }

    try {
        if (*solve) return fuyau::cmd_solve(solve_config, std::cout, std::cerr);
        if (*check) {
            if (list) {
                for (const auto& n : fuyau::check_names()) std::cout << n << '\n';
                return 0;
            }
            return fuyau::cmd_check(check_opt, std::cout);
        }
        if (*study) {
            std::vector<double> as;
            try {
                as = fuyau::parse_A_list(a_list);
            } catch (const fuyau::ConfigError& e) {
                std::cerr << "config error: " << e.what() << '\n';
                return fuyau::exit_code::config_error;
            }
            return fuyau::cmd_study(study_config, as, reverse, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return fuyau::exit_code::aborted;
    }
    return 0;
}
