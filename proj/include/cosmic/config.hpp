#pragma once

// Experiment configuration: a flat `key = value` text format plus
// command-line overrides, resolved into typed settings per subcommand.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cosmic/engine.hpp"

namespace cosmic {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Settings = std::map<std::string, std::string>;

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
Settings parse_settings(std::istream& in);
Settings load_settings(const std::string& path);

enum class Command { Run2d, RunSeq, Verify, Export };
enum class OperatorKind { Paper2d, Seqspace, Translation };

std::string to_string(OperatorKind kind);

struct ExperimentConfig {
  OperatorKind op = OperatorKind::Paper2d;
  int n_max = 0;                 ///< paper2d only
  std::size_t n_coords = 512;    ///< seqspace only
  Vec v;                         ///< translation only
  std::size_t k_max = 0;
  Schedule schedule = LevelCrossingSchedule{};
  Vec x0;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::vector<Vec> q;            ///< injected directions for verify
  std::size_t samples = 10000;
  double box = 1e6;
  double eps_angle = 0.1;
  double min_norm = 10.0;
  bool fast_path = true;
  std::map<std::string, double> tol;

  double tolerance(const std::string& name) const { return tol.at(name); }
};

/// Tolerance names and their defaults.
const std::map<std::string, double>& default_tolerances();

/// Validates `settings` for `cmd` and fills defaults. Throws ConfigError.
ExperimentConfig resolve(const Settings& settings, Command cmd);

/// The fully resolved configuration as flat key/value pairs.
Settings describe(const ExperimentConfig& config);

}  // namespace cosmic
