#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "scimap/layout.hpp"
#include "scimap/similarity.hpp"

namespace scimap {

/// Every knob of a full pipeline run. Defaults: cited direction, tau 0.2,
/// one clustering at gamma 1.
struct PipelineConfig {
  Direction direction = Direction::cited;
  double tau = 0.2;
  std::string layout_algorithm = "mds";  // mds | fr
  StressWeights weights = StressWeights::uniform;
  std::uint64_t layout_seed = 1;
  int max_iter = 500;
  double tol = 1e-6;
  int fr_iterations = 300;
  double d_max = 1.0;
  std::vector<double> gammas{1.0};
  std::uint64_t cluster_seed = 1;

  std::filesystem::path journals = "journals.csv";
  std::filesystem::path triplets = "triplets.csv";
  std::filesystem::path data;  // optional WoS export
  std::filesystem::path out_dir = ".";

  /// Throws InvalidArgument naming the offending key.
  void validate() const;

  /// Flat key -> value view; keys match the CLI flag names.
  std::map<std::string, std::string> to_map() const;
  static PipelineConfig from_map(const std::map<std::string, std::string>& kv);
};

/// `key = value` lines; `#` starts a comment. Repeated keys accumulate
/// (used for gamma), and a comma-separated value is split.
std::multimap<std::string, std::string> read_key_values(std::istream& in);
std::multimap<std::string, std::string> read_key_values(const std::filesystem::path& path);

void write_config(std::ostream& out, const PipelineConfig& config);
PipelineConfig read_config(std::istream& in);

}  // namespace scimap
