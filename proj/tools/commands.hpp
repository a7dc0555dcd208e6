// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "config.hpp"

namespace latham::cli {

void cmd_kernel(const ExperimentConfig& cfg, const std::filesystem::path& out);
void cmd_solve(const ExperimentConfig& cfg, const std::filesystem::path& out);
void cmd_bench(const ExperimentConfig& cfg, const std::filesystem::path& out);
void cmd_energy(const ExperimentConfig& cfg, const std::filesystem::path& out);

}  // namespace latham::cli
