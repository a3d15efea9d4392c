#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

namespace orliczcorr {

inline constexpr const char* kToolVersion = "orliczcorr 0.1.0";

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// One run directory. Files are written immediately; finish() adds
/// manifest.json listing every file written with its size and SHA-256.
/// Nothing written here carries a timestamp, so reruns are byte-identical.
class RunOutput {
 public:
  explicit RunOutput(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  void write_text(const std::string& name, const std::string& content);
  /// Pretty-printed with two-space indentation and a trailing newline.
  void write_json(const std::string& name, const nlohmann::json& content);

  /// Writes manifest.json and returns its content.
  nlohmann::json finish();

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::pair<std::size_t, std::string>> files_;
};

}  // namespace orliczcorr
