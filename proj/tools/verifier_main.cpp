#include <iostream>

#include "CLI11.hpp"
#include "driver.hpp"
#include "jsonio.hpp"

int main(int argc, char** argv) {
    CLI::App app{"verifier: scenario runner for the eventually-constant sequence ring toolkit"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a registered scenario and emit a report");
    driver::Scenario scenario;
    std::string out_path, format = "text";
    run->add_option("--scenario", scenario.name, "scenario name (see `verifier list`)")->required();
    run->add_option("--seed", scenario.seed, "base seed for all sampled trials");
    run->add_option("--trials", scenario.trials, "trial count (0 = scenario default)");
    run->add_option("--depth", scenario.depth, "truncation levels beyond the stable index");
    run->add_option("--out", out_path, "output file (default: stdout)");
    run->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    // list
    app.add_subcommand("list", "list registered scenarios");

    // check-files
    auto* check = app.add_subcommand("check-files", "validate algebra/module/ring definition files");
    std::vector<std::string> paths;
    check->add_option("paths", paths, "definition files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list")) {
            for (const auto& n : driver::scenario_names()) std::cout << n << "\n";
            return 0;
        }
        if (app.got_subcommand("check-files")) {
            bool all_ok = true;
            for (const auto& p : paths) {
                io::FileReport rep = io::check_file(p);
                std::cout << (rep.ok ? "OK  " : "FAIL") << " [" << rep.kind << "] " << rep.path;
                if (!rep.ok) std::cout << ": " << rep.error;
                std::cout << "\n";
                all_ok = all_ok && rep.ok;
            }
            return all_ok ? 0 : 1;
        }
        driver::Report rep = driver::run_scenario(scenario);
        driver::emit(rep, format, out_path);
        return rep.failed == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
