#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "priorlab/hier_reg.hpp"
#include "priorlab/io.hpp"
#include "priorlab/summarize.hpp"

namespace priorlab {

inline constexpr const char* kVersion = "0.3.1";

struct OutputBundle {
  std::filesystem::path summary;
  std::vector<std::filesystem::path> densities;
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> extra;  // table.txt, curves, saturation
  std::vector<SummaryRow> rows;
};

// Runs one study and writes its files under config.out (created if needed).
OutputBundle run_study(const RunConfig& config);

// Synthetic hierarchical dataset: β̄ = (17, −9.5), Σ = diag(0.5², 0.5²),
// τ²_j = 1, standard normal covariate.
SimulatedHier default_hier_dataset(std::uint64_t seed, std::size_t m, std::size_t n_j);

// "lognormal" → S_i ~ LN(−1, 0.5), "gamma" → S_i ~ G(4, 1).
HierHyper hier_hyper_for(const std::string& prior, std::size_t k);

}  // namespace priorlab
