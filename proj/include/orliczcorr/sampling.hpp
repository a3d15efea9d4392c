#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "orliczcorr/body.hpp"
#include "orliczcorr/kernels.hpp"

namespace orliczcorr {

enum class SamplerMethod { rejection, hit_and_run };
/// Hit-and-run directions: uniform on the sphere, or a uniformly chosen
/// coordinate axis (exact chords through the Young inverse, O(1) per step).
enum class DirectionMode { sphere, coordinate };

std::string_view to_string(SamplerMethod m);
std::string_view to_string(DirectionMode d);
SamplerMethod parse_sampler_method(std::string_view s);
DirectionMode parse_direction_mode(std::string_view s);

/// Generator used by every chain, recorded in reports.
inline constexpr std::string_view kGeneratorName = "std::mt19937_64 (splitmix64 chain seeding)";

struct SamplerConfig {
  SamplerMethod method = SamplerMethod::hit_and_run;
  DirectionMode direction = DirectionMode::sphere;
  std::uint64_t seed = 1;
  /// Zero selects the default 10 n^2.
  std::size_t burn_in = 0;
  /// Zero selects the default n.
  std::size_t thinning = 0;
  std::size_t chains = 8;
  std::size_t samples_per_chain = 10'000;
  /// Consecutive rejected proposals tolerated before giving up.
  std::size_t max_rejections = 10'000'000;
  Execution execution = Execution::parallel;
};

/// Fills defaults that depend on the dimension.
SamplerConfig resolve(SamplerConfig config, std::size_t dim);

/// splitmix64 finalizer; chain c runs on mt19937_64(splitmix64(seed + c)).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t chain_seed(std::uint64_t seed, std::size_t chain);

struct SamplingDiagnostics {
  std::size_t proposals = 0;
  std::size_t accepted = 0;
  /// Accepted / proposals for rejection; 1 for hit-and-run.
  double acceptance_rate = 1.0;
  std::size_t steps = 0;
  /// Hit-and-run chord points redrawn after landing outside by round-off.
  std::size_t redraws = 0;
};

/// Receives sample `index` of chain `chain`. Calls for one chain come from a
/// single thread in increasing index order; different chains may run concurrently.
using SampleSink = std::function<void(std::size_t chain, std::size_t index, Point x)>;

/// Runs all chains of a resolved or unresolved config, streaming samples.
SamplingDiagnostics run_sampler(const BodyModel& body, const SamplerConfig& config, const SampleSink& sink);

/// Samples held in memory, chain-major (chain 0 first).
struct SampleBatch {
  std::string body_id;
  SamplerConfig config;
  std::size_t dim = 0;
  std::vector<double> data;
  SamplingDiagnostics diagnostics;
  std::string generator{kGeneratorName};

  std::size_t size() const noexcept { return dim == 0 ? 0 : data.size() / dim; }
  Point row(std::size_t k) const { return Point(data.data() + k * dim, dim); }
};

SampleBatch sample(const BodyModel& body, const SamplerConfig& config);

}  // namespace orliczcorr
