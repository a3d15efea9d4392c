#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "orliczcorr/body.hpp"

namespace orliczcorr {

/// Body description documents (JSON).
///
///   {"kind": "orlicz", "name": "l2-3", "dim": 3,
///    "young": [{"family": "power", "p": 2}, ...],
///    "scales": [1, 1, 1]}
///   {"kind": "counterexample"}
///
/// Young entries: power {p}; scaled-power {p, s}; exp-poly {s};
/// piecewise-linear {knots: [[t, f(t)], ...]}. Unknown keys are rejected.
/// Doubles are written with round-trip precision, so parse -> serialize -> parse
/// reproduces the body exactly.
nlohmann::json young_to_json(const YoungFunction& f);
YoungFunction young_from_json(const nlohmann::json& j);

nlohmann::json body_to_json(const BodyModel& body);
BodyModel body_from_json(const nlohmann::json& j);

BodyModel read_body_file(const std::filesystem::path& path);
void write_body_file(const std::filesystem::path& path, const BodyModel& body);

/// Rejects keys of `j` not in `allowed`; `where` names the object in the message.
void require_known_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view where);

}  // namespace orliczcorr
