#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace qbb {

inline constexpr const char* kCacheVersion = "qbb-cache-1";

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, v >>= 4) s[k] = digits[v & 15];
  return s;
}

struct CachedRun {
  std::string output;
  int exit_code = 0;
  std::string diagnostics;  // stderr text
};

// Content-addressed store of command outputs. The key text (datum, nu, command and arguments)
// is kept in the entry and compared on lookup, so a hash collision reads as a miss.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<CachedRun> load(const std::string& key) const {
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      auto j = nlohmann::json::parse(ss.str());
      if (j.at("version") != kCacheVersion || j.at("key") != key) return std::nullopt;
      return CachedRun{j.at("output").get<std::string>(), j.at("exit_code").get<int>(), j.value("diagnostics", std::string())};
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
  }

  // Atomic: the entry is written to a temporary file in the same directory and renamed.
  void store(const std::string& key, const CachedRun& run) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    nlohmann::ordered_json j;
    j["version"] = kCacheVersion;
    j["key"] = key;
    j["exit_code"] = run.exit_code;
    j["output"] = run.output;
    j["diagnostics"] = run.diagnostics;
    std::random_device rd;
    auto tmp = dir_ / (".tmp-" + hex64((static_cast<std::uint64_t>(rd()) << 32) ^ rd()));
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << j.dump();
      if (!out) return;
    }
    std::filesystem::rename(tmp, path(key), ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

  std::filesystem::path path(const std::string& key) const { return dir_ / (hex64(fnv1a(key)) + ".json"); }

 private:
  std::filesystem::path dir_;
};

}  // namespace qbb
