#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latsurf/deformation.hpp"
#include "latsurf/potential.hpp"
#include "latsurf/region.hpp"

namespace latsurf::cli {

// All problems found while validating a config, one message per item.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> items);
  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
};

// Parsed run configuration (JSON, schema version 1).  Region and potential
// are optional at parse time; each subcommand checks for what it needs.
struct RunConfig {
  std::optional<ConvexRegion> region;
  std::optional<Potential> potential;
  DeformationGradient F = DeformationGradient::identity();
  double epsilon = kDefaultEpsilon;
  long long seed = 0;
  std::vector<std::string> warnings;  // non-fatal notes (inexact rationals)
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Fixed 12-significant-digit rendering used for every numeric output.
std::string fmt12(double v);

// Entry point behind main(): parses args (without the program name), runs
// one subcommand, writes results to out and diagnostics to err.  Returns
// 0 on success, 1 on computation errors, 2 on usage or config errors.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err);

}  // namespace latsurf::cli
