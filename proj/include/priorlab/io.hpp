#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "priorlab/logistic.hpp"
#include "priorlab/summarize.hpp"

namespace priorlab {

// Reads a `y,x` CSV (UTF-8, LF or CRLF, '.' decimals).  Row order is kept.
// ParseError carries the 1-based file line (the header is line 1) and column.
BinaryDataset load_binary_csv(const std::filesystem::path& path, bool flip_y = false);

enum class Study { Logistic, Hier, Evenness, Induced, Pte };
enum class Layout { Plain, Paper };
enum class SamplerKind { Auto, RandomWalk, Fisher };

std::string study_name(Study s);

struct RunConfig {
  Study study = Study::Logistic;
  std::vector<std::string> priors;
  std::vector<double> sigmas;
  std::optional<double> g;
  std::vector<double> gammas;
  std::size_t K = 8;
  std::vector<std::uint64_t> Ns;
  std::size_t iters = 0;
  std::size_t burnin = 0;
  std::uint64_t seed = 0;
  std::filesystem::path data;
  std::filesystem::path out = "out";
  Layout layout = Layout::Plain;
  std::optional<double> scale;  // nullopt = AUTO
  bool flip_y = false;
  SamplerKind sampler = SamplerKind::Auto;
  Vec theta;
  std::size_t m = 4;
  std::size_t nj = 36;

  // Canonical `key=value` lines, sorted by key; hashed into the manifest.
  std::string echo() const;
};

using KeyValues = std::map<std::string, std::string>;

// Keys accepted in config files and as flags (without the leading dashes).
const std::vector<std::string>& config_keys();

// `key=value` per line; '#' starts a comment.  Unknown keys throw UnknownKey.
KeyValues read_config_file(const std::filesystem::path& path);

// Validates and fills study-specific defaults.  Throws UnknownKey,
// MissingRequired or TypeError.
RunConfig build_config(const KeyValues& kv);

// read_config_file + build_config.
RunConfig parse_config_file(const std::filesystem::path& path);

// Values printed with 6 significant digits.
void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
void write_density_csv(const std::filesystem::path& path, const DensityGrid& density);

std::string format_g6(double v);
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace priorlab
