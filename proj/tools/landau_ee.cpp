#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "landau_ee/config.hpp"
#include "landau_ee/parallel.hpp"
#include "landau_ee/study.hpp"

using namespace landau_ee;

int main(int argc, char** argv) {
    CLI::App app{"Entanglement entropy of perturbed Landau Hamiltonians"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int jobs = -1;
    long long seed = -1;
    bool list_keys = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Configuration file (INI sections or JSON echo)")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides LANDAU_EE_OUT and run.out)");
        sub->add_option("--jobs", jobs, "Worker threads, 0 = all cores (overrides LANDAU_EE_JOBS and run.jobs)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", seed, "Random seed (overrides run.seed)")->check(CLI::NonNegativeNumber);
    };
    CLI::App* verify = app.add_subcommand("verify", "Run the identity and property suites");
    CLI::App* scan = app.add_subcommand("scan", "Area-law scan over L; writes CSV, JSON and plots");
    CLI::App* kernels = app.add_subcommand("kernels", "Evaluate and cross-check kernels at configured points");
    for (CLI::App* sub : {verify, scan, kernels}) add_common(sub);
    app.add_flag("--list-keys", list_keys, "Print every configuration key with its default and exit");

    // --list-keys works without a subcommand.
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--list-keys") {
            for (const auto& [k, v] : describe_keys()) std::cout << k << " = " << v << "\n";
            return 0;
        }
    }
    CLI11_PARSE(app, argc, argv);

    try {
        StudyConfig cfg = load_config(config_path);
        apply_environment(cfg);
        if (!out_dir.empty()) cfg.out = out_dir;
        if (jobs >= 0) cfg.jobs = jobs;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.validate();
        set_threads(cfg.jobs);

        if (verify->parsed()) return cmd_verify(cfg, std::cout);
        if (scan->parsed()) return cmd_scan(cfg, std::cout);
        return cmd_kernels(cfg, std::cout);
    } catch (const ValidationError& e) {
        std::cerr << "landau-ee: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "landau-ee: " << e.what() << "\n";
        return 1;
    }
}
