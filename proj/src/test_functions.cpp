#include "orliczcorr/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "orliczcorr/body_io.hpp"
#include "orliczcorr/errors.hpp"

namespace orliczcorr {

UnivariateTestFn UnivariateTestFn::square() {
  UnivariateTestFn f;
  f.family_ = TestFamily::square;
  f.power_ = 2;
  return f;
}

UnivariateTestFn UnivariateTestFn::even_power(int k) {
  if (k < 1) throw DomainError("even power t^(2k) needs k >= 1");
  UnivariateTestFn f;
  f.family_ = TestFamily::even_power;
  f.power_ = 2 * k;
  return f;
}

UnivariateTestFn UnivariateTestFn::abs() {
  UnivariateTestFn f;
  f.family_ = TestFamily::abs;
  f.power_ = 1;
  return f;
}

UnivariateTestFn UnivariateTestFn::constant(double c) {
  if (!std::isfinite(c)) throw DomainError("constant test function must be finite");
  UnivariateTestFn f;
  f.family_ = TestFamily::constant;
  f.constant_ = c;
  return f;
}

UnivariateTestFn UnivariateTestFn::tabulated(std::vector<Knot> table) {
  if (table.empty()) throw DomainError("tabulated test function needs at least one knot");
  std::map<double, double> by_t;
  for (const auto& k : table) {
    if (!std::isfinite(k.t) || !std::isfinite(k.value)) throw DomainError("tabulated knots must be finite");
    if (!by_t.emplace(k.t, k.value).second) throw DomainError("tabulated knots must have distinct t");
  }
  std::vector<Knot> positive;
  for (const auto& [t, v] : by_t) {
    if (t < 0.0) {
      auto mirror = by_t.find(-t);
      if (mirror == by_t.end() || mirror->second != v)
        throw ContractError("tabulated test function is not symmetric (h(-t) != h(t))");
    } else {
      positive.push_back({t, v});
    }
  }
  if (positive.empty() || positive.front().t != 0.0)
    throw DomainError("tabulated test function must include t = 0");
  UnivariateTestFn f;
  f.family_ = TestFamily::tabulated;
  f.table_ = std::move(positive);
  f.monotone_ = std::is_sorted(f.table_.begin(), f.table_.end(),
                               [](const Knot& a, const Knot& b) { return a.value < b.value; });
  return f;
}

double UnivariateTestFn::operator()(double t) const {
  const double a = std::abs(t);
  switch (family_) {
    case TestFamily::square: return a * a;
    case TestFamily::even_power: return std::pow(a, power_);
    case TestFamily::abs: return a;
    case TestFamily::constant: return constant_;
    case TestFamily::tabulated: {
      if (a >= table_.back().t) return table_.back().value;
      auto it = std::upper_bound(table_.begin(), table_.end(), a,
                                 [](double x, const Knot& k) { return x < k.t; });
      const Knot& hi = *it;
      const Knot& lo = *(it - 1);
      return lo.value + (hi.value - lo.value) * (a - lo.t) / (hi.t - lo.t);
    }
  }
  return 0.0;
}

std::vector<double> UnivariateTestFn::kinks() const {
  std::vector<double> out;
  if (family_ == TestFamily::tabulated)
    for (const auto& k : table_)
      if (k.t > 0.0) out.push_back(k.t);
  return out;
}

std::string UnivariateTestFn::describe() const {
  std::ostringstream os;
  switch (family_) {
    case TestFamily::square: os << "square"; break;
    case TestFamily::even_power: os << "even-power(" << power_ << ")"; break;
    case TestFamily::abs: os << "abs"; break;
    case TestFamily::constant: os << "constant(" << constant_ << ")"; break;
    case TestFamily::tabulated: os << "tabulated(" << table_.size() << " knots)"; break;
  }
  return os.str();
}

nlohmann::json UnivariateTestFn::to_json() const {
  nlohmann::json j;
  switch (family_) {
    case TestFamily::square: j["family"] = "square"; break;
    case TestFamily::even_power:
      j["family"] = "even-power";
      j["k"] = power_ / 2;
      break;
    case TestFamily::abs: j["family"] = "abs"; break;
    case TestFamily::constant:
      j["family"] = "constant";
      j["c"] = constant_;
      break;
    case TestFamily::tabulated: {
      j["family"] = "tabulated";
      nlohmann::json knots = nlohmann::json::array();
      for (const auto& k : table_) knots.push_back(nlohmann::json::array({k.t, k.value}));
      j["knots"] = std::move(knots);
      break;
    }
  }
  return j;
}

UnivariateTestFn UnivariateTestFn::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ConfigError("test function: expected an object with a string 'family'");
  const auto family = j.at("family").get<std::string>();
  try {
    if (family == "square") {
      require_known_keys(j, {"family"}, "test function");
      return square();
    }
    if (family == "abs") {
      require_known_keys(j, {"family"}, "test function");
      return abs();
    }
    if (family == "even-power") {
      require_known_keys(j, {"family", "k"}, "test function");
      if (!j.contains("k") || !j.at("k").is_number_integer()) throw ConfigError("even-power: integer 'k' required");
      return even_power(j.at("k").get<int>());
    }
    if (family == "constant") {
      require_known_keys(j, {"family", "c"}, "test function");
      if (!j.contains("c") || !j.at("c").is_number()) throw ConfigError("constant: number 'c' required");
      return constant(j.at("c").get<double>());
    }
    if (family == "tabulated") {
      require_known_keys(j, {"family", "knots"}, "test function");
      if (!j.contains("knots") || !j.at("knots").is_array()) throw ConfigError("tabulated: 'knots' array required");
      std::vector<Knot> knots;
      for (const auto& k : j.at("knots")) {
        if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
          throw ConfigError("tabulated: each knot must be [t, value]");
        knots.push_back({k[0].get<double>(), k[1].get<double>()});
      }
      return tabulated(std::move(knots));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("test function: ") + e.what());
  }
  throw ConfigError("test function: unknown family '" + family + "'");
}

}  // namespace orliczcorr
