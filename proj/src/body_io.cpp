#include "orliczcorr/body_io.hpp"

#include <fstream>
#include <sstream>

#include "orliczcorr/errors.hpp"

namespace orliczcorr {

using nlohmann::json;

void require_known_keys(const json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

namespace {

double get_number(const json& j, const char* key, std::string_view where) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(where) + ": '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

json young_to_json(const YoungFunction& f) {
  json j;
  j["family"] = std::string(to_string(f.family()));
  switch (f.family()) {
    case YoungFamily::power: j["p"] = f.exponent(); break;
    case YoungFamily::scaled_power:
      j["p"] = f.exponent();
      j["s"] = f.coefficient();
      break;
    case YoungFamily::exp_poly: j["s"] = f.coefficient(); break;
    case YoungFamily::piecewise_linear: {
      json knots = json::array();
      for (const auto& k : f.knots()) knots.push_back(json::array({k.t, k.value}));
      j["knots"] = std::move(knots);
      break;
    }
  }
  return j;
}

YoungFunction young_from_json(const json& j) {
  constexpr std::string_view where = "young function";
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ConfigError("young function: expected an object with a string 'family'");
  const auto family = parse_young_family(j.at("family").get<std::string>());
  if (!family) throw ConfigError("young function: unknown family '" + j.at("family").get<std::string>() + "'");
  try {
    switch (*family) {
      case YoungFamily::power:
        require_known_keys(j, {"family", "p"}, where);
        return YoungFunction::power(get_number(j, "p", where));
      case YoungFamily::scaled_power:
        require_known_keys(j, {"family", "p", "s"}, where);
        return YoungFunction::scaled_power(get_number(j, "p", where), get_number(j, "s", where));
      case YoungFamily::exp_poly:
        require_known_keys(j, {"family", "s"}, where);
        return YoungFunction::exp_poly(j.contains("s") ? get_number(j, "s", where) : 1.0);
      case YoungFamily::piecewise_linear: {
        require_known_keys(j, {"family", "knots"}, where);
        if (!j.contains("knots") || !j.at("knots").is_array())
          throw ConfigError("piecewise-linear: 'knots' must be an array of [t, value] pairs");
        std::vector<Knot> knots;
        for (const auto& k : j.at("knots")) {
          if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
            throw ConfigError("piecewise-linear: each knot must be [t, value]");
          knots.push_back({k[0].get<double>(), k[1].get<double>()});
        }
        return YoungFunction::piecewise_linear(std::move(knots));
      }
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("young function: ") + e.what());
  }
  throw ConfigError("young function: unsupported family");
}

json body_to_json(const BodyModel& body) {
  if (std::holds_alternative<CounterexampleBody>(body)) return json{{"kind", "counterexample"}};
  const auto& ball = std::get<OrliczBall>(body);
  json j;
  j["kind"] = "orlicz";
  j["name"] = ball.name();
  j["dim"] = ball.dim();
  json young = json::array();
  for (std::size_t i = 0; i < ball.dim(); ++i) young.push_back(young_to_json(ball.young(i)));
  j["young"] = std::move(young);
  j["scales"] = ball.scales();
  return j;
}

BodyModel body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("body: expected an object with a string 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "counterexample") {
    require_known_keys(j, {"kind", "name"}, "body");
    return CounterexampleBody{};
  }
  if (kind != "orlicz") throw ConfigError("body: unknown kind '" + kind + "'");
  require_known_keys(j, {"kind", "name", "dim", "young", "scales"}, "body");
  if (!j.contains("dim") || !j.at("dim").is_number_unsigned())
    throw ConfigError("body: 'dim' must be a non-negative integer");
  const auto n = j.at("dim").get<std::size_t>();
  if (!j.contains("young") || !j.at("young").is_array()) throw ConfigError("body: 'young' must be an array");
  const json& yj = j.at("young");
  std::vector<YoungFunction> young;
  if (yj.size() == 1 && n > 1) {
    young.assign(n, young_from_json(yj[0]));
  } else {
    if (yj.size() != n) throw ConfigError("body: 'young' must list dim entries (or exactly one)");
    for (const auto& y : yj) young.push_back(young_from_json(y));
  }
  std::vector<double> scales(n, 1.0);
  if (j.contains("scales")) {
    const json& sj = j.at("scales");
    if (!sj.is_array() || sj.size() != n) throw ConfigError("body: 'scales' must list dim numbers");
    for (std::size_t i = 0; i < n; ++i) {
      if (!sj[i].is_number()) throw ConfigError("body: 'scales' must list dim numbers");
      scales[i] = sj[i].get<double>();
    }
  }
  std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "";
  try {
    return OrliczBall(std::move(young), std::move(scales), std::move(name));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("body: ") + e.what());
  }
}

BodyModel read_body_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open body file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("body file " + path.string() + ": " + e.what());
  }
  return body_from_json(j);
}

void write_body_file(const std::filesystem::path& path, const BodyModel& body) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write body file " + path.string());
  out << body_to_json(body).dump(2) << "\n";
}

}  // namespace orliczcorr
