#include "orliczcorr/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orliczcorr/body_io.hpp"
#include "orliczcorr/cross_section.hpp"
#include "orliczcorr/errors.hpp"
#include "orliczcorr/experiments.hpp"
#include "orliczcorr/kernels.hpp"
#include "orliczcorr/report_io.hpp"
#include "orliczcorr/run_output.hpp"

namespace orliczcorr {

namespace {

[[noreturn]] void bad(std::string_view where, std::string_view key, std::string_view what) {
  throw ConfigError(std::string(where) + ": '" + std::string(key) + "' " + std::string(what));
}

double get_double(const json& j, std::string_view where, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) bad(where, key, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(where, key, "must be finite");
  return d;
}

double get_positive(const json& j, std::string_view where, const char* key) {
  const double d = get_double(j, where, key);
  if (!(d > 0.0)) bad(where, key, "must be positive");
  return d;
}

std::uint64_t get_unsigned(const json& j, std::string_view where, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) bad(where, key, "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::size_t get_count(const json& j, std::string_view where, const char* key, std::size_t min = 1) {
  const auto v = get_unsigned(j, where, key);
  if (v < min) bad(where, key, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

bool get_bool(const json& j, std::string_view where, const char* key) {
  const json& v = j.at(key);
  if (!v.is_boolean()) bad(where, key, "must be true or false");
  return v.get<bool>();
}

std::string get_string(const json& j, std::string_view where, const char* key) {
  const json& v = j.at(key);
  if (!v.is_string()) bad(where, key, "must be a string");
  return v.get<std::string>();
}

// An explicit null keeps the default, so embedded configs parse back.
template <class F>
void when(const json& j, const char* key, F&& f) {
  if (j.contains(key) && !j.at(key).is_null()) f();
}

std::vector<double> get_vector(const json& v, std::string_view where, std::string_view key) {
  if (!v.is_array()) bad(where, key, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad(where, key, "must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void parse_sampler(const json& j, SamplerConfig& s) {
  constexpr std::string_view w = "sampler";
  require_known_keys(j, {"method", "direction", "burn_in", "thinning", "chains", "samples_per_chain", "max_rejections"},
                     w);
  when(j, "method", [&] { s.method = parse_sampler_method(get_string(j, w, "method")); });
  when(j, "direction", [&] { s.direction = parse_direction_mode(get_string(j, w, "direction")); });
  when(j, "burn_in", [&] { s.burn_in = get_count(j, w, "burn_in", 0); });
  when(j, "thinning", [&] { s.thinning = get_count(j, w, "thinning", 0); });
  when(j, "chains", [&] { s.chains = get_count(j, w, "chains"); });
  when(j, "samples_per_chain", [&] { s.samples_per_chain = get_count(j, w, "samples_per_chain"); });
  when(j, "max_rejections", [&] { s.max_rejections = get_count(j, w, "max_rejections"); });
}

}  // namespace

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
  constexpr std::string_view w = "config";
  require_known_keys(j,
                     {"body", "seed", "out", "threads", "expect_fail", "pair", "f", "g", "grid", "logconcavity",
                      "quadrature", "formula", "direct", "max_discrepancy", "sampler", "batches_per_chain",
                      "thresholds", "directions", "isotropize"},
                     w);
  RunConfig c;
  when(j, "body", [&] {
    const json& b = j.at("body");
    if (b.is_string()) {
      std::filesystem::path p = b.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      c.body = read_body_file(p);
    } else {
      c.body = body_from_json(b);
    }
  });
  when(j, "seed", [&] { c.seed = get_unsigned(j, w, "seed"); });
  when(j, "out", [&] { c.out = get_string(j, w, "out"); });
  when(j, "threads", [&] { c.threads = static_cast<int>(get_count(j, w, "threads", 0)); });
  when(j, "expect_fail", [&] { c.expect_fail = get_bool(j, w, "expect_fail"); });
  when(j, "pair", [&] {
    const json& p = j.at("pair");
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
      bad(w, "pair", "must be two non-negative coordinate indices");
    c.pair = std::array<std::size_t, 2>{p[0].get<std::size_t>(), p[1].get<std::size_t>()};
    if ((*c.pair)[0] == (*c.pair)[1]) bad(w, "pair", "must name two different coordinates");
  });
  when(j, "f", [&] { c.f = UnivariateTestFn::from_json(j.at("f")); });
  when(j, "g", [&] { c.g = UnivariateTestFn::from_json(j.at("g")); });
  when(j, "grid", [&] {
    const json& g = j.at("grid");
    constexpr std::string_view gw = "grid";
    require_known_keys(g, {"points", "gap", "tolerance"}, gw);
    when(g, "points", [&] { c.grid.points = get_count(g, gw, "points", 2); });
    when(g, "gap", [&] {
      c.grid.gap = get_positive(g, gw, "gap");
      if (c.grid.gap >= 1.0) bad(gw, "gap", "must lie in (0, 1)");
    });
    when(g, "tolerance", [&] {
      c.grid.tolerance = get_double(g, gw, "tolerance");
      if (c.grid.tolerance < 0.0) bad(gw, "tolerance", "must be non-negative");
    });
  });
  when(j, "logconcavity", [&] {
    const json& g = j.at("logconcavity");
    constexpr std::string_view lw = "logconcavity";
    require_known_keys(g, {"enabled", "grid", "tolerance"}, lw);
    when(g, "enabled", [&] { c.logconcavity = get_bool(g, lw, "enabled"); });
    when(g, "grid", [&] { c.logconcavity_grid = get_count(g, lw, "grid", 3); });
    when(g, "tolerance", [&] {
      c.logconcavity_tolerance = get_double(g, lw, "tolerance");
      if (c.logconcavity_tolerance < 0.0) bad(lw, "tolerance", "must be non-negative");
    });
  });
  when(j, "quadrature", [&] {
    const json& q = j.at("quadrature");
    constexpr std::string_view qw = "quadrature";
    require_known_keys(q, {"rel_tol", "max_depth", "max_dimension", "max_evaluations", "closed_form_power_groups"}, qw);
    when(q, "rel_tol", [&] { c.quadrature.rel_tol = get_positive(q, qw, "rel_tol"); });
    when(q, "max_depth", [&] { c.quadrature.max_depth = static_cast<int>(get_count(q, qw, "max_depth")); });
    when(q, "max_dimension", [&] { c.quadrature.max_dimension = get_count(q, qw, "max_dimension"); });
    when(q, "max_evaluations", [&] { c.quadrature.max_evaluations = get_count(q, qw, "max_evaluations"); });
    when(q, "closed_form_power_groups",
         [&] { c.quadrature.closed_form_power_groups = get_bool(q, qw, "closed_form_power_groups"); });
  });
  when(j, "formula", [&] {
    const json& f = j.at("formula");
    require_known_keys(f, {"gauss_points"}, "formula");
    when(f, "gauss_points", [&] { c.formula.gauss_points = get_count(f, "formula", "gauss_points", 2); });
  });
  when(j, "direct", [&] {
    const json& d = j.at("direct");
    constexpr std::string_view dw = "direct";
    require_known_keys(d, {"rel_tol", "max_depth", "max_intervals"}, dw);
    when(d, "rel_tol", [&] { c.direct.rel_tol = get_positive(d, dw, "rel_tol"); });
    when(d, "max_depth", [&] { c.direct.max_depth = static_cast<int>(get_count(d, dw, "max_depth")); });
    when(d, "max_intervals", [&] { c.direct.max_intervals = get_count(d, dw, "max_intervals"); });
  });
  when(j, "max_discrepancy", [&] { c.max_discrepancy = get_positive(j, w, "max_discrepancy"); });
  when(j, "sampler", [&] {
    SamplerConfig s;
    parse_sampler(j.at("sampler"), s);
    c.sampler = s;
  });
  when(j, "batches_per_chain", [&] { c.batches_per_chain = get_count(j, w, "batches_per_chain"); });
  when(j, "thresholds", [&] {
    c.thresholds = get_vector(j.at("thresholds"), w, "thresholds");
    if (c.thresholds.empty()) bad(w, "thresholds", "must not be empty");
    for (double t : c.thresholds)
      if (!(t > 0.0) || !std::isfinite(t)) bad(w, "thresholds", "must all be positive");
  });
  when(j, "directions", [&] {
    const json& d = j.at("directions");
    constexpr std::string_view dw = "directions";
    require_known_keys(d, {"random", "explicit"}, dw);
    when(d, "random", [&] { c.random_directions = get_count(d, dw, "random", 0); });
    when(d, "explicit", [&] {
      if (!d.at("explicit").is_array()) bad(dw, "explicit", "must be an array of vectors");
      for (const auto& v : d.at("explicit")) c.directions.push_back(get_vector(v, dw, "explicit"));
    });
  });
  when(j, "isotropize", [&] {
    const json& o = j.at("isotropize");
    constexpr std::string_view ow = "isotropize";
    auto& io = c.isotropize_options;
    require_known_keys(o, {"enabled", "tolerance", "normalize_volume", "allow_quadrature", "chains", "samples_per_chain"},
                       ow);
    when(o, "enabled", [&] { c.isotropize = get_bool(o, ow, "enabled"); });
    when(o, "tolerance", [&] { io.tolerance = get_positive(o, ow, "tolerance"); });
    when(o, "normalize_volume", [&] { io.normalize_volume = get_bool(o, ow, "normalize_volume"); });
    when(o, "allow_quadrature", [&] { io.allow_quadrature = get_bool(o, ow, "allow_quadrature"); });
    when(o, "chains", [&] { io.sampler.chains = get_count(o, ow, "chains"); });
    when(o, "samples_per_chain", [&] { io.sampler.samples_per_chain = get_count(o, ow, "samples_per_chain"); });
  });
  return c;
}

json to_json(const RunConfig& c) {
  json dirs = json::array();
  for (const auto& d : c.directions) dirs.push_back(d);
  const auto& io = c.isotropize_options;
  json sampler = nullptr;
  if (c.sampler) {
    sampler = to_json(*c.sampler);
    sampler.erase("seed");
  }
  return {{"body", c.body ? body_to_json(*c.body) : json(nullptr)},
          {"seed", c.seed},
          {"expect_fail", c.expect_fail},
          {"pair", c.pair ? json{(*c.pair)[0], (*c.pair)[1]} : json(nullptr)},
          {"f", c.f.to_json()},
          {"g", c.g.to_json()},
          {"grid", to_json(c.grid)},
          {"logconcavity",
           {{"enabled", c.logconcavity}, {"grid", c.logconcavity_grid}, {"tolerance", c.logconcavity_tolerance}}},
          {"quadrature", to_json(c.quadrature)},
          {"formula", to_json(c.formula)},
          {"direct", to_json(c.direct)},
          {"max_discrepancy", c.max_discrepancy},
          {"sampler", sampler},
          {"batches_per_chain", c.batches_per_chain},
          {"thresholds", c.thresholds},
          {"directions", {{"random", c.random_directions}, {"explicit", dirs}}},
          {"isotropize",
           {{"enabled", c.isotropize},
            {"tolerance", io.tolerance},
            {"normalize_volume", io.normalize_volume},
            {"allow_quadrature", io.allow_quadrature},
            {"chains", io.sampler.chains},
            {"samples_per_chain", io.sampler.samples_per_chain}}}};
}

namespace {

struct Outcome {
  bool pass = true;
  std::string message;
};

const BodyModel& require_body(const RunConfig& c) {
  if (!c.body) throw ConfigError("config: this command needs a 'body'");
  return *c.body;
}

const OrliczBall& require_orlicz(const RunConfig& c) {
  const auto* b = std::get_if<OrliczBall>(&require_body(c));
  if (!b) throw ConfigError("config: this command needs a generalized Orlicz body");
  return *b;
}

std::array<std::size_t, 2> resolve_pair(const RunConfig& c, const BodyModel& body) {
  std::array<std::size_t, 2> p{0, 1};
  if (c.pair)
    p = *c.pair;
  else if (std::holds_alternative<CounterexampleBody>(body))
    p = {1, 2};
  const std::size_t n = body_dim(body);
  if (p[0] >= n || p[1] >= n) throw ConfigError("config: 'pair' indices must be below the body dimension");
  return p;
}

SamplerConfig sampler_for(const RunConfig& c, SamplerConfig fallback = {}) {
  SamplerConfig s = c.sampler.value_or(fallback);
  s.seed = c.seed;
  return s;
}

json header(const std::string& command, const RunConfig& c) {
  return {{"tool", kToolVersion}, {"command", command}, {"config", to_json(c)}};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Outcome cmd_verify_crossmass(const RunConfig& c, RunOutput& out) {
  const BodyModel& body = require_body(c);
  const auto [i, j] = resolve_pair(c, body);
  const CrossSection cs(body, i, j, c.quadrature);
  const CrossMassVerdict v = crossmass_check(cs, c.grid);

  json summary = header("verify-crossmass", c);
  summary["crossmass"] = to_json(v);
  if (c.f.monotone() && c.g.monotone()) summary["sign_verdict"] = std::string(to_string(sign_verdict(v)));
  bool lc_holds = true;
  if (c.logconcavity && cs.remaining() && cs.remaining()->dimension() > 0) {
    const auto lc = logconcavity_check(*cs.remaining(), c.logconcavity_grid, c.logconcavity_tolerance);
    summary["logconcavity"] = to_json(lc);
    lc_holds = lc.holds;
  }
  const bool pass = c.expect_fail ? !v.holds : (v.holds && lc_holds);
  summary["expect_fail"] = c.expect_fail;
  summary["pass"] = pass;
  out.write_json("summary.json", summary);
  out.write_text("margins.csv", margins_csv(v));
  out.write_text("slices.csv", slices_csv(v));
  return {pass, "min margin " + fmt(v.min_margin) + ", " + std::to_string(v.violations) + " violations of " +
                    std::to_string(v.quadruples) + (v.holds ? ", holds" : ", fails")};
}

Outcome cmd_covariance(const RunConfig& c, RunOutput& out) {
  const BodyModel& body = require_body(c);
  const auto [i, j] = resolve_pair(c, body);
  CovarianceOptions opts{c.formula, c.direct, c.quadrature};
  const CovarianceReport r = covariance_report(body, i, j, c.f, c.g, opts);
  const bool pass = r.relative_discrepancy <= c.max_discrepancy;
  json summary = header("covariance", c);
  summary["covariance"] = to_json(r);
  summary["pass"] = pass;
  out.write_json("summary.json", summary);
  std::ostringstream csv;
  csv << "body,i,j,f,g,value_formula,value_direct,cov,volume,relative_discrepancy\n"
      << r.body_id << ',' << r.i << ',' << r.j << ',' << r.f << ',' << r.g << ',' << format_double(r.value_formula)
      << ',' << format_double(r.value_direct) << ',' << format_double(r.cov) << ',' << format_double(r.volume) << ','
      << format_double(r.relative_discrepancy) << '\n';
  out.write_text("covariance.csv", csv.str());
  return {pass, "cov " + fmt(r.cov) + ", formula/direct discrepancy " + fmt(r.relative_discrepancy)};
}

/// Isotropizes (when enabled) and samples; shared by sigma, tails and clt.
Campaign prepared_campaign(const RunConfig& c, json& summary, bool with_directions) {
  const OrliczBall& original = require_orlicz(c);
  OrliczBall body = original;
  if (c.isotropize) {
    IsotropizeOptions io = c.isotropize_options;
    io.sampler.seed = splitmix64(c.seed);
    io.quadrature = c.quadrature;
    const IsotropizeResult iso = isotropize(original, io);
    summary["isotropize"] = to_json(iso);
    body = iso.body;
  }
  CampaignConfig cc;
  cc.sampler = sampler_for(c);
  cc.batches_per_chain = c.batches_per_chain;
  if (with_directions) {
    default_directions(body.dim(), c.seed, c.random_directions, cc.directions, cc.direction_labels);
    for (std::size_t k = 0; k < c.directions.size(); ++k) {
      cc.directions.push_back(c.directions[k]);
      cc.direction_labels.push_back("explicit" + std::to_string(k + 1));
    }
  }
  Campaign campaign = run_campaign(BodyModel{body}, cc);
  summary["sampler"] = to_json(campaign.sampler);
  summary["generator"] = std::string(kGeneratorName);
  summary["diagnostics"] = to_json(campaign.diagnostics);
  return campaign;
}

Outcome cmd_sigma(const RunConfig& c, RunOutput& out) {
  json summary = header("sigma", c);
  const Campaign campaign = prepared_campaign(c, summary, false);
  const SigmaResult r = sigma_result(campaign);
  summary["moments"] = to_json(r.moments);
  summary["bound"] = kSqrt5;
  summary["violation"] = r.violation;
  summary["pass"] = r.within;
  out.write_json("summary.json", summary);
  out.write_text("moments.csv", moments_csv(r.moments));
  out.write_text("cov_sq.csv", cov_sq_csv(r.moments));
  std::ostringstream plot;
  plot << "body,n,samples,sigma,sigma_se,bound\n"
       << campaign.body_id << ',' << campaign.dim << ',' << r.moments.samples << ','
       << format_double(r.moments.sigma.value) << ',' << format_double(r.moments.sigma.se) << ','
       << format_double(kSqrt5) << '\n';
  out.write_text("sigma_plot.csv", plot.str());
  return {r.within, "sigma " + fmt(r.moments.sigma.value) + " +- " + fmt(r.moments.sigma.se) + " (bound " +
                        fmt(kSqrt5) + ")"};
}

Outcome cmd_tails(const RunConfig& c, RunOutput& out) {
  json summary = header("tails", c);
  const Campaign campaign = prepared_campaign(c, summary, false);
  const TailReport r = tail_report(campaign, c.thresholds);
  summary["tails"] = to_json(r);
  summary["pass"] = r.pass;
  out.write_json("summary.json", summary);
  out.write_text("tails.csv", tails_csv(r));
  out.write_text("tails_plot.csv", tail_curve_csv(campaign));
  return {r.pass, "epsilon " + fmt(r.epsilon) + ", empirical " + fmt(r.epsilon_empirical)};
}

Outcome cmd_clt(const RunConfig& c, RunOutput& out) {
  json summary = header("clt", c);
  const Campaign campaign = prepared_campaign(c, summary, true);
  const CltReport r = clt_report(campaign);
  summary["clt"] = to_json(r);
  summary["pass"] = true;
  out.write_json("summary.json", summary);
  out.write_text("clt.csv", clt_csv(r));
  out.write_text("clt_plot.csv", clt_curve_csv(campaign, r.l2.value));
  return {true, "c_hat " + fmt(r.c_hat) + " (" + r.c_hat_direction + ")"};
}

Outcome cmd_counterexample(const RunConfig& c, RunOutput& out) {
  CounterexampleConfig cc;
  cc.grid = c.grid;
  cc.covariance = {c.formula, c.direct, c.quadrature};
  cc.sampler = sampler_for(c, cc.sampler);
  const CounterexampleReport r = run_counterexample(cc);
  json summary = header("counterexample", c);
  summary["counterexample"] = to_json(r);
  summary["generator"] = std::string(kGeneratorName);
  summary["pass"] = r.pass;
  out.write_json("summary.json", summary);
  out.write_text("margins.csv", margins_csv(r.verdict));
  out.write_text("slices.csv", slices_csv(r.verdict));
  return {r.pass, "probe margin " + fmt(r.probe_margin) + ", cov " + fmt(r.covariance.cov) + ", MC " +
                      fmt(r.mc_cov.value) + " +- " + fmt(r.mc_cov.se)};
}

Outcome cmd_sample(const RunConfig& c, RunOutput& out) {
  const BodyModel& body = require_body(c);
  const SampleBatch batch = sample(body, sampler_for(c));
  const MomentReport m = estimate_moments(batch, c.batches_per_chain);
  json summary = header("sample", c);
  summary["sampler"] = to_json(batch.config);
  summary["generator"] = batch.generator;
  summary["diagnostics"] = to_json(batch.diagnostics);
  summary["moments"] = to_json(m);
  summary["pass"] = true;
  out.write_json("summary.json", summary);
  out.write_text("samples.csv", samples_csv(batch));
  return {true, std::to_string(batch.size()) + " samples"};
}

Outcome cmd_isotropize(const RunConfig& c, RunOutput& out) {
  const OrliczBall& body = require_orlicz(c);
  IsotropizeOptions io = c.isotropize_options;
  io.sampler.seed = splitmix64(c.seed);
  io.quadrature = c.quadrature;
  const IsotropizeResult r = isotropize(body, io);
  json summary = header("isotropize", c);
  summary["isotropize"] = to_json(r);
  summary["pass"] = r.equalized;
  out.write_json("summary.json", summary);
  out.write_json("body.json", body_to_json(BodyModel{r.body}));
  return {r.equalized, r.method + ", spread " + fmt(r.spread)};
}

using Command = Outcome (*)(const RunConfig&, RunOutput&);

struct CommandSpec {
  const char* name;
  const char* help;
  Command run;
};

constexpr CommandSpec kCommands[] = {
    {"verify-crossmass", "Check the cross-mass inequality on a grid of slice quadruples", cmd_verify_crossmass},
    {"covariance", "cov(f(X_i), g(X_j)) by the slice formula and by direct integration", cmd_covariance},
    {"sigma", "Estimate sigma_K on the isotropized body and compare with sqrt 5", cmd_sigma},
    {"tails", "Empirical tails of |X|^2/n and |X|/sqrt n against the Chebyshev bounds", cmd_tails},
    {"clt", "Kolmogorov distance of one-dimensional projections to the normal law", cmd_clt},
    {"counterexample", "The 1-symmetric body with positively correlated squares", cmd_counterexample},
    {"sample", "Draw uniform samples and write them as CSV", cmd_sample},
    {"isotropize", "Equalize the coordinate second moments by rescaling", cmd_isotropize},
};

RunConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return parse_run_config(j, std::filesystem::path(path).parent_path());
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Slice-measure covariance and concentration experiments on generalized Orlicz balls", "orliczcorr"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  bool expect_fail = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "Seed for every random stream of the run");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--expect-fail", expect_fail, "Pass when the checked property fails (counterexample bodies)");
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);

  std::vector<CLI::App*> subs;
  for (const auto& cmd : kCommands) subs.push_back(app.add_subcommand(cmd.name, cmd.help));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  const CommandSpec* chosen = nullptr;
  for (std::size_t k = 0; k < subs.size(); ++k)
    if (subs[k]->parsed()) chosen = &kCommands[k];

  try {
    RunConfig config = load_config(config_path);
    if (seed) config.seed = *seed;
    if (out_dir) config.out = *out_dir;
    if (threads) config.threads = *threads;
    if (expect_fail) config.expect_fail = true;
    if (config.out.empty()) config.out = std::string("orliczcorr-") + chosen->name;
    set_thread_count(config.threads);

    RunOutput out(config.out);
    const Outcome outcome = chosen->run(config, out);
    out.finish();
    std::cout << chosen->name << ": " << (outcome.pass ? "pass" : "FAIL") << " (" << outcome.message << ") -> "
              << config.out.string() << '\n';
    return outcome.pass ? kExitPass : kExitFailure;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ContractError& e) {
    std::cerr << "invalid request: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid request: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const SearchError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const SamplingError& e) {
    std::cerr << "sampling error: " << e.what() << '\n';
    return kExitSampling;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args);
}

}  // namespace orliczcorr
