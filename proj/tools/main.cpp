// SPDX-License-Identifier: Apache-2.0
//
// latham: tensor-structured core-Hamiltonian assembly and FFT-based
// diagonalization for lattice and periodic systems.
//
//   latham kernel --config c.cfg --out dir
//   latham solve  --config c.cfg --out dir
//   latham bench  --config c.cfg --out dir
//   latham energy --config c.cfg --out dir

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>

#include "commands.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitResourceCap = 4;

int run(const std::string& name, const std::string& config_path, const std::string& out_dir) {
    using namespace latham;
    using namespace latham::cli;
    try {
        const ExperimentConfig cfg = parse_config_file(config_path);
        std::filesystem::create_directories(out_dir);
        if (name == "kernel") cmd_kernel(cfg, out_dir);
        else if (name == "solve") cmd_solve(cfg, out_dir);
        else if (name == "bench") cmd_bench(cfg, out_dir);
        else cmd_energy(cfg, out_dir);
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const ResourceCapError& e) {
        std::fprintf(stderr, "resource cap: %s\n", e.what());
        return kExitResourceCap;
    } catch (const DefinitenessError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitNumerical;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor-structured lattice core-Hamiltonian toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::string chosen;
    for (const char* name : {"kernel", "solve", "bench", "energy"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->callback([&chosen, name] { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return run(chosen, config_path, out_dir);
}
