#pragma once

// Append-only JSON-lines cache of N_f(k) results keyed by
// (coeffs, k, diameter, ladder). Unreadable lines are skipped.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "linform/json_io.hpp"

namespace linform {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct CacheKey {
  std::vector<std::int64_t> coeffs;
  std::int64_t k = 0;
  std::int64_t diameter = 0;
  std::int64_t ladder = 0;

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct CacheRecord {
  CacheKey key;
  Json result;  ///< to_json(ExtremalResult) without "raw_gcd"
  std::int64_t timestamp = 0;
  std::string tool_version{kToolVersion};
};

inline Json to_json(const CacheRecord& rec) {
  Json j{{"coeffs", rec.key.coeffs}, {"k", rec.key.k}, {"diameter", rec.key.diameter},
         {"ladder", rec.key.ladder}};
  for (const auto& [key, value] : rec.result.items())
    if (!j.contains(key)) j[key] = value;
  j["timestamp"] = rec.timestamp;
  j["tool_version"] = rec.tool_version;
  return j;
}

inline CacheRecord cache_record_from_json(const Json& j) {
  CacheRecord rec;
  rec.key.coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
  rec.key.k = j.at("k").get<std::int64_t>();
  rec.key.diameter = j.at("diameter").get<std::int64_t>();
  rec.key.ladder = j.at("ladder").get<std::int64_t>();
  rec.timestamp = j.at("timestamp").get<std::int64_t>();
  rec.tool_version = j.at("tool_version").get<std::string>();
  rec.result = Json::object();
  for (const auto& [key, value] : j.items())
    if (key != "ladder" && key != "timestamp" && key != "tool_version") rec.result[key] = value;
  extremal_from_json(rec.result);  // validates the payload
  return rec;
}

inline CacheRecord make_cache_record(const ExtremalResult& r, std::int64_t ladder) {
  CacheRecord rec;
  rec.key = {r.form.coeffs(), r.k, r.diameter, ladder};
  rec.result = to_json(r);
  rec.result.erase("raw_gcd");
  rec.timestamp = std::chrono::duration_cast<std::chrono::seconds>(
                      std::chrono::system_clock::now().time_since_epoch())
                      .count();
  return rec;
}

class ResultCache {
 public:
  /// `warn` receives one message per skipped line.
  explicit ResultCache(std::string path, std::function<void(const std::string&)> warn = {})
      : path_(std::move(path)), warn_(std::move(warn)) {}

  const std::string& path() const noexcept { return path_; }

  std::vector<CacheRecord> load() const {
    std::vector<CacheRecord> out;
    std::ifstream in(path_);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        out.push_back(cache_record_from_json(Json::parse(line)));
      } catch (const std::exception& e) {
        if (warn_) warn_(path_ + ":" + std::to_string(lineno) + ": skipping corrupt cache line (" + e.what() + ")");
      }
    }
    return out;
  }

  std::optional<CacheRecord> find(const CacheKey& key) const {
    for (auto& rec : load())
      if (rec.key == key) return rec;
    return std::nullopt;
  }

  /// Appends one line under an exclusive advisory lock.
  void append(const CacheRecord& rec) const {
    const std::string line = to_json(rec).dump() + "\n";
    const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) fail(ErrorCode::InvalidArgument, "cannot open cache file " + path_);
    ::flock(fd, LOCK_EX);
    std::size_t off = 0;
    while (off < line.size()) {
      const auto n = ::write(fd, line.data() + off, line.size() - off);
      if (n <= 0) break;
      off += static_cast<std::size_t>(n);
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (off != line.size()) fail(ErrorCode::InvalidArgument, "short write to cache file " + path_);
  }

 private:
  std::string path_;
  std::function<void(const std::string&)> warn_;
};

}  // namespace linform
