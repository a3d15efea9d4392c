#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orliczcorr/body.hpp"
#include "orliczcorr/correlation.hpp"
#include "orliczcorr/isotropize.hpp"
#include "orliczcorr/sampling.hpp"
#include "orliczcorr/test_functions.hpp"

namespace orliczcorr {

enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitConfig = 2, kExitBudget = 3, kExitSampling = 4 };

/// Everything a run needs. Parsed from a JSON config file whose keys mirror
/// these fields one-to-one (see README); unknown keys are rejected.
struct RunConfig {
  std::optional<BodyModel> body;
  std::uint64_t seed = 1;
  std::filesystem::path out;
  int threads = 0;
  bool expect_fail = false;

  std::optional<std::array<std::size_t, 2>> pair;
  UnivariateTestFn f = UnivariateTestFn::square();
  UnivariateTestFn g = UnivariateTestFn::square();

  CrossMassGrid grid;
  bool logconcavity = true;
  std::size_t logconcavity_grid = 40;
  double logconcavity_tolerance = 1e-9;

  QuadratureOptions quadrature;
  FormulaOptions formula;
  DirectOptions direct;
  double max_discrepancy = 1e-4;

  std::optional<SamplerConfig> sampler;
  std::size_t batches_per_chain = 4;
  std::vector<double> thresholds{0.25, 0.5, 1.0, 2.0};
  std::size_t random_directions = 4;
  std::vector<std::vector<double>> directions;

  bool isotropize = true;
  IsotropizeOptions isotropize_options;
};

/// Strict parse; relative body paths resolve against `base_dir`. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// The resolved configuration embedded in every summary. Output location and
/// thread count are left out: neither changes any result.
nlohmann::json to_json(const RunConfig& config);

/// Entry point of the orliczcorr executable; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace orliczcorr
