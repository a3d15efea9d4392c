#include "orliczcorr/run_output.hpp"

#include <fstream>

#include <openssl/evp.h>

#include "orliczcorr/errors.hpp"

namespace orliczcorr {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[digest[k] >> 4]);
    out.push_back(hex[digest[k] & 0xf]);
  }
  return out;
}

RunOutput::RunOutput(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void RunOutput::write_text(const std::string& name, const std::string& content) {
  std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + (dir_ / name).string());
  out << content;
  out.close();
  if (!out) throw ConfigError("failed writing " + (dir_ / name).string());
  files_[name] = {content.size(), sha256_hex(content)};
}

void RunOutput::write_json(const std::string& name, const nlohmann::json& content) {
  write_text(name, content.dump(2) + "\n");
}

nlohmann::json RunOutput::finish() {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [name, info] : files_)
    files.push_back({{"path", name}, {"bytes", info.first}, {"sha256", info.second}});
  nlohmann::json manifest{{"tool", kToolVersion}, {"files", files}};
  const std::string text = manifest.dump(2) + "\n";
  std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + (dir_ / "manifest.json").string());
  out << text;
  return manifest;
}

}  // namespace orliczcorr
