#include "orliczcorr/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "orliczcorr/body_io.hpp"

namespace orliczcorr {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json estimates(const std::vector<Estimate>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back(to_json(e));
  return a;
}

json quad(const std::array<double, 4>& q) { return json::array({q[0], q[1], q[2], q[3]}); }

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) {
    bool first = true;
    for (auto h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }
  Csv& operator<<(double v) { return cell(format_double(v)); }
  Csv& operator<<(std::size_t v) { return cell(std::to_string(v)); }
  Csv& operator<<(bool v) { return cell(v ? "true" : "false"); }
  Csv& operator<<(const std::string& v) { return cell(v); }
  void end() {
    out_ << '\n';
    fresh_ = true;
  }
  std::string str() const { return out_.str(); }

 private:
  Csv& cell(const std::string& s) {
    if (!fresh_) out_ << ',';
    out_ << s;
    fresh_ = false;
    return *this;
  }
  std::ostringstream out_;
  bool fresh_ = true;
};

}  // namespace

json to_json(const QuadratureOptions& o) {
  return {{"rel_tol", o.rel_tol},
          {"max_depth", o.max_depth},
          {"max_dimension", o.max_dimension},
          {"max_evaluations", o.max_evaluations},
          {"closed_form_power_groups", o.closed_form_power_groups}};
}

json to_json(const FormulaOptions& o) { return {{"gauss_points", o.gauss_points}}; }

json to_json(const DirectOptions& o) {
  return {{"rel_tol", o.rel_tol}, {"max_depth", o.max_depth}, {"max_intervals", o.max_intervals}};
}

json to_json(const CovarianceOptions& o) {
  return {{"formula", to_json(o.formula)}, {"direct", to_json(o.direct)}, {"quadrature", to_json(o.quadrature)}};
}

json to_json(const CrossMassGrid& g) {
  return {{"points", g.points}, {"gap", g.gap}, {"tolerance", g.tolerance}};
}

json to_json(const SamplerConfig& c) {
  return {{"method", std::string(to_string(c.method))},
          {"direction", std::string(to_string(c.direction))},
          {"seed", c.seed},
          {"burn_in", c.burn_in},
          {"thinning", c.thinning},
          {"chains", c.chains},
          {"samples_per_chain", c.samples_per_chain},
          {"max_rejections", c.max_rejections}};
}

json to_json(const SamplingDiagnostics& d) {
  return {{"proposals", d.proposals},
          {"accepted", d.accepted},
          {"acceptance_rate", d.acceptance_rate},
          {"steps", d.steps},
          {"redraws", d.redraws}};
}

json to_json(const Estimate& e) { return {{"value", number(e.value)}, {"se", number(e.se)}}; }

json to_json(const CovarianceReport& r) {
  return {{"body", r.body_id},
          {"pair", {r.i, r.j}},
          {"f", r.f},
          {"g", r.g},
          {"value_formula", r.value_formula},
          {"value_direct", r.value_direct},
          {"cov", r.cov},
          {"volume", r.volume},
          {"mean_f", r.mean_f},
          {"mean_g", r.mean_g},
          {"mean_fg", r.mean_fg},
          {"floor", r.floor},
          {"relative_discrepancy", r.relative_discrepancy},
          {"direct_converged", r.direct_converged},
          {"direct_rel_error", r.direct_rel_error},
          {"options", to_json(r.options)}};
}

json to_json(const CrossMassVerdict& v) {
  return {{"body", v.body_id},
          {"pair", {v.i, v.j}},
          {"grid", to_json(v.grid)},
          {"ys", v.ys},
          {"zs", v.zs},
          {"min_margin", v.min_margin},
          {"max_margin", v.max_margin},
          {"worst", quad(v.worst)},
          {"best", quad(v.best)},
          {"quadruples", v.quadruples},
          {"violations", v.violations},
          {"positive", v.positive},
          {"sign", std::string(to_string(sign_verdict(v)))},
          {"holds", v.holds}};
}

json to_json(const LogConcavityVerdict& v) {
  return {{"grid", v.grid},
          {"tolerance", v.tolerance},
          {"triples", v.triples},
          {"violations", v.violations},
          {"min_margin", v.min_margin},
          {"worst", {v.worst[0], v.worst[1], v.worst[2]}},
          {"holds", v.holds}};
}

json to_json(const MomentReport& r) {
  json j{{"body", r.body_id},
         {"dim", r.dim},
         {"samples", r.samples},
         {"chains", r.chains},
         {"batches", r.batches},
         {"method", std::string(to_string(r.method))},
         {"l2", to_json(r.l2)},
         {"norm2", to_json(r.norm2)},
         {"norm4", to_json(r.norm4)},
         {"sigma", to_json(r.sigma)},
         {"ess", r.ess},
         {"mean", estimates(r.mean)},
         {"m2", estimates(r.m2)},
         {"m4", estimates(r.m4)},
         {"kurtosis_margin", estimates(r.kurtosis_margin)},
         {"warnings", r.warnings}};
  if (r.dim > 1) {
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < r.dim; ++i)
      for (std::size_t j = i + 1; j < r.dim; ++j)
        if (r.cov_sq(i, j).value > r.cov_sq(bi, bj).value) {
          bi = i;
          bj = j;
        }
    j["cov_sq_max"] = {{"pair", {bi, bj}}, {"value", r.cov_sq(bi, bj).value}, {"se", r.cov_sq(bi, bj).se}};
  }
  return j;
}

json to_json(const TailReport& r) {
  auto rows = [](const std::vector<TailRow>& v) {
    json a = json::array();
    for (const auto& t : v)
      a.push_back({{"multiple", t.multiple},
                   {"t", t.t},
                   {"empirical", t.empirical},
                   {"se", t.se},
                   {"bound", t.bound},
                   {"pass", t.pass}});
    return a;
  };
  return {{"body", r.body_id},
          {"dim", r.dim},
          {"samples", r.samples},
          {"l2", to_json(r.l2)},
          {"squared", rows(r.squared)},
          {"norm", rows(r.norm)},
          {"epsilon", r.epsilon},
          {"epsilon_empirical", r.epsilon_empirical},
          {"epsilon_se", r.epsilon_se},
          {"epsilon_pass", r.epsilon_pass},
          {"pass", r.pass}};
}

json to_json(const CltReport& r) {
  json dirs = json::array();
  for (const auto& d : r.directions)
    dirs.push_back({{"label", d.label},
                    {"l3", d.l3},
                    {"weight", d.weight},
                    {"statistic", d.statistic},
                    {"se", d.se},
                    {"ratio", d.ratio}});
  return {{"body", r.body_id},
          {"dim", r.dim},
          {"samples", r.samples},
          {"l2", to_json(r.l2)},
          {"directions", dirs},
          {"c_hat", r.c_hat},
          {"c_hat_direction", r.c_hat_direction}};
}

json to_json(const CounterexampleReport& r) {
  return {{"probe", quad(r.probe)},
          {"probe_margin", r.probe_margin},
          {"probe_closed_form", r.probe_closed_form},
          {"crossmass", to_json(r.verdict)},
          {"sign", std::string(to_string(r.sign))},
          {"region_quadruples", r.region_quadruples},
          {"region_negative", r.region_negative},
          {"covariance", to_json(r.covariance)},
          {"mc_cov_sq", to_json(r.mc_cov)},
          {"mc_samples", r.mc_samples},
          {"pass", r.pass}};
}

json to_json(const IsotropizeResult& r) {
  return {{"body", body_to_json(BodyModel{r.body})},
          {"multipliers", r.multipliers},
          {"before", estimates(r.before)},
          {"after", estimates(r.after)},
          {"method", r.method},
          {"volume", number(r.volume)},
          {"spread", r.spread},
          {"equalized", r.equalized}};
}

std::string margins_csv(const CrossMassVerdict& v) {
  Csv csv{"a", "b", "c", "d", "y", "ybar", "z", "zbar", "margin"};
  const std::size_t nz = v.zs.size();
  for (std::size_t a = 1; a < v.ys.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      for (std::size_t c = 1; c < nz; ++c)
        for (std::size_t d = 0; d < c; ++d) {
          csv << a << b << c << d << v.ys[a] << v.ys[b] << v.zs[c] << v.zs[d]
              << crossmass_margin(v.table, nz, a, b, c, d);
          csv.end();
        }
  return csv.str();
}

std::string slices_csv(const CrossMassVerdict& v) {
  Csv csv{"y", "z", "m"};
  for (std::size_t a = 0; a < v.ys.size(); ++a)
    for (std::size_t c = 0; c < v.zs.size(); ++c) {
      csv << v.ys[a] << v.zs[c] << v.table[a * v.zs.size() + c];
      csv.end();
    }
  return csv.str();
}

std::string moments_csv(const MomentReport& r) {
  Csv csv{"coordinate", "mean", "mean_se", "m2", "m2_se", "m4", "m4_se", "kurtosis_margin", "kurtosis_margin_se"};
  for (std::size_t i = 0; i < r.dim; ++i) {
    csv << i << r.mean[i].value << r.mean[i].se << r.m2[i].value << r.m2[i].se << r.m4[i].value << r.m4[i].se
        << r.kurtosis_margin[i].value << r.kurtosis_margin[i].se;
    csv.end();
  }
  return csv.str();
}

std::string cov_sq_csv(const MomentReport& r) {
  Csv csv{"i", "j", "cov_sq", "cov_sq_se", "cov", "cov_se"};
  for (std::size_t i = 0; i < r.dim; ++i)
    for (std::size_t j = i + 1; j < r.dim; ++j) {
      csv << i << j << r.cov_sq(i, j).value << r.cov_sq(i, j).se << r.cov(i, j).value << r.cov(i, j).se;
      csv.end();
    }
  return csv.str();
}

std::string tails_csv(const TailReport& r) {
  Csv csv{"kind", "multiple", "t", "empirical", "se", "bound", "pass"};
  auto rows = [&](const std::string& kind, const std::vector<TailRow>& v) {
    for (const auto& t : v) {
      csv << kind << t.multiple << t.t << t.empirical << t.se << t.bound << t.pass;
      csv.end();
    }
  };
  rows("squared", r.squared);
  rows("norm", r.norm);
  return csv.str();
}

std::string clt_csv(const CltReport& r) {
  Csv csv{"direction", "l3", "weight", "statistic", "se", "ratio"};
  for (const auto& d : r.directions) {
    csv << d.label << d.l3 << d.weight << d.statistic << d.se << d.ratio;
    csv.end();
  }
  return csv.str();
}

std::string samples_csv(const SampleBatch& batch) {
  std::ostringstream out;
  out << "chain,index";
  for (std::size_t i = 0; i < batch.dim; ++i) out << ",x" << i + 1;
  out << '\n';
  const std::size_t spc = batch.config.samples_per_chain;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    out << k / spc << ',' << k % spc;
    for (double v : batch.row(k)) out << ',' << format_double(v);
    out << '\n';
  }
  return out.str();
}

std::string tail_curve_csv(const Campaign& campaign, std::size_t points) {
  std::vector<double> multiples(points);
  for (std::size_t k = 0; k < points; ++k)
    multiples[k] = 0.05 * std::pow(4.0 / 0.05, static_cast<double>(k) / static_cast<double>(points - 1));
  const TailReport r = tail_report(campaign, multiples);
  Csv csv{"kind", "multiple", "t", "empirical", "lower", "upper", "bound"};
  auto rows = [&](const std::string& kind, const std::vector<TailRow>& v) {
    for (const auto& t : v) {
      csv << kind << t.multiple << t.t << t.empirical << std::max(0.0, t.empirical - 2.0 * t.se)
          << std::min(1.0, t.empirical + 2.0 * t.se) << t.bound;
      csv.end();
    }
  };
  rows("squared", r.squared);
  rows("norm", r.norm);
  return csv.str();
}

std::string clt_curve_csv(const Campaign& campaign, double variance, std::size_t points) {
  Csv csv{"direction", "t", "empirical_cdf", "normal_cdf"};
  const double scale = 1.0 / std::sqrt(2.0 * variance);
  for (std::size_t k = 0; k < campaign.projections.size(); ++k) {
    std::vector<double> v = campaign.projections[k];
    if (v.empty()) continue;
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    for (std::size_t q = 0; q < points; ++q) {
      const std::size_t idx = std::min(v.size() - 1, static_cast<std::size_t>((static_cast<double>(q) + 0.5) / points * n));
      const double t = v[idx];
      csv << campaign.direction_labels[k] << t << static_cast<double>(idx + 1) / n << 0.5 * std::erfc(-t * scale);
      csv.end();
    }
  }
  return csv.str();
}

}  // namespace orliczcorr
