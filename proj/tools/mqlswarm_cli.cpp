// Command-line front end: run a config, run a named preset, or validate a
// config file. Exit code 0 on success, 1 with a one-line diagnostic otherwise.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mqlswarm.hpp"

namespace fs = std::filesystem;
using namespace mqlswarm;

namespace {

void report(const RunResult& result, const fs::path& dir) {
    const auto& s = result.summary;
    std::printf("%s seed=%llu M=%zu T=%zu: connected_fraction=%s dispersion=%s (initial %s) "
                "components=%zu -> %s\n",
                std::string(to_string(s.config.algorithm)).c_str(),
                static_cast<unsigned long long>(s.config.seed), s.config.swarm_size,
                s.config.iterations, format_real(s.final_connected_fraction).c_str(),
                format_real(s.final_dispersion).c_str(), format_real(s.initial_dispersion).c_str(),
                s.final_components.size(), dir.string().c_str());
}

RunResult run_and_write(const SwarmConfig& cfg, const fs::path& dir) {
    auto result = run_experiment(cfg);
    write_run_outputs(result, dir);
    report(result, dir);
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swarm simulator: Q-learning particles versus standard PSO"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string algo;
    std::optional<std::size_t> iterations;
    std::string out_dir;

    auto* run = app.add_subcommand("run", "Run one experiment from a config file");
    run->add_option("--config", config_path, "JSON config file (defaults apply when omitted)");
    run->add_option("--seed", seed, "Override the seed");
    run->add_option("--algo", algo, "Override the algorithm")->check(CLI::IsMember({"mql", "pso"}));
    run->add_option("--iterations", iterations, "Override the number of ticks");
    run->add_option("--out", out_dir, "Output directory (overrides output_dir)");

    std::string preset_name;
    std::uint64_t preset_seed = 1;
    std::string preset_out = "out";
    auto* pre = app.add_subcommand("preset", "Run a named experiment preset");
    pre->add_option("name", preset_name, "fig3-compare or fig4-individuals")->required();
    pre->add_option("--out", preset_out, "Output directory");
    pre->add_option("--seed", preset_seed, "Seed shared by every arm of the preset");

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "Check a config file and print the effective config");
    val->add_option("--config", validate_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*run) {
            SwarmConfig cfg = config_path.empty() ? SwarmConfig{} : load_config(config_path);
            if (seed) cfg.seed = *seed;
            if (!algo.empty()) cfg.algorithm = algorithm_from_string(algo);
            if (iterations) cfg.iterations = *iterations;
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            cfg.validate();
            std::cout << to_json(cfg).dump() << '\n';
            run_and_write(cfg, cfg.output_dir);
        } else if (*pre) {
            const auto configs = preset(preset_name, preset_seed);
            const fs::path root(preset_out);
            for (auto cfg : configs) {
                const fs::path dir =
                    configs.size() > 1 ? root / std::string(to_string(cfg.algorithm)) : root;
                cfg.output_dir = dir.string();
                std::cout << to_json(cfg).dump() << '\n';
                run_and_write(cfg, dir);
            }
        } else if (*val) {
            std::cout << to_json(load_config(validate_path)).dump(2) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
