// Append-only verdict store: one JSON object per line, addressed by the
// canonical key of the classified graph. Certificates are stored in
// canonical labels so a hit can be mapped onto any isomorphic input.
//
// Appends take an exclusive flock and a single write(2) of the full line; a
// reader that meets a torn final line (crash mid-append) truncates it under
// the same lock and reports a warning.

#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ikc/canonical.hpp"
#include "ikc/engine.hpp"
#include "ikc/io.hpp"

namespace ikc {

struct VerdictCacheRecord {
  std::string key_hash;  // 16 hex digits of the canonical key digest
  std::string key;       // full canonical key, hex
  Status status = Status::Unknown;
  json certificate;      // to_json(verdict) in canonical labels
  std::string engine_version;
  std::int64_t timestamp = 0;  // unix seconds

  friend bool operator==(const VerdictCacheRecord&, const VerdictCacheRecord&) = default;
};

inline json to_json(const VerdictCacheRecord& r) {
  return {{"keyHash", r.key_hash},          {"key", r.key},
          {"status", to_string(r.status)},  {"certificate", r.certificate},
          {"engineVersion", r.engine_version}, {"timestamp", r.timestamp}};
}

inline VerdictCacheRecord cache_record_from_json(const json& j) {
  return {j.at("keyHash").get<std::string>(), j.at("key").get<std::string>(),
          status_from_string(j.at("status").get<std::string>()), j.at("certificate"),
          j.at("engineVersion").get<std::string>(), j.at("timestamp").get<std::int64_t>()};
}

inline std::string key_hash(const CanonicalKey& k) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t d = k.digest();
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, d >>= 4) s[static_cast<std::size_t>(i)] = digits[d & 15];
  return s;
}

class VerdictCache {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  explicit VerdictCache(std::filesystem::path dir, std::string engine_version = kEngineVersion, WarningSink warn = {})
      : dir_(std::move(dir)), file_(dir_ / "verdicts.jsonl"), version_(std::move(engine_version)), warn_(std::move(warn)) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& file() const { return file_; }

  /// Latest record for the key written by this engine version.
  std::optional<VerdictCacheRecord> get(const CanonicalKey& key) {
    std::lock_guard lock(mu_);
    const std::string hash = key_hash(key), hex = key.hex();
    std::optional<VerdictCacheRecord> hit;
    for (const auto& line : read_lines()) {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;
      if (j.value("keyHash", "") != hash || j.value("key", "") != hex) continue;
      if (j.value("engineVersion", "") != version_) continue;
      try {
        hit = cache_record_from_json(j);
      } catch (const std::exception&) {
      }
    }
    return hit;
  }

  void put(const VerdictCacheRecord& rec) {
    std::lock_guard lock(mu_);
    const std::string line = to_json(rec).dump() + "\n";
    const int fd = ::open(file_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd < 0) throw std::runtime_error("cannot open cache file " + file_.string());
    ::flock(fd, LOCK_EX);
    repair_tail(fd);
    std::size_t done = 0;
    while (done < line.size()) {
      const ssize_t n = ::write(fd, line.data() + done, line.size() - done);
      if (n <= 0) break;
      done += static_cast<std::size_t>(n);
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (done != line.size()) throw std::runtime_error("short write to " + file_.string());
  }

  /// Cached verdict for g, relabeled onto g; nullopt on miss or stale version.
  std::optional<Verdict> lookup(const Graph& g) {
    const CanonicalForm cf = canonical_form(g);
    auto rec = get(cf.key);
    if (!rec) return std::nullopt;
    Verdict canon = verdict_from_json(rec->certificate);
    std::vector<Vertex> inverse(cf.labeling.size());
    for (std::size_t v = 0; v < cf.labeling.size(); ++v) inverse[static_cast<std::size_t>(cf.labeling[v])] = static_cast<Vertex>(v);
    return relabel(canon, inverse);
  }

  void store(const Graph& g, const Verdict& v) {
    const CanonicalForm cf = canonical_form(g);
    const Verdict canon = relabel(v, cf.labeling);
    const auto now = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
    put({key_hash(cf.key), cf.key.hex(), v.status, to_json(canon), version_, static_cast<std::int64_t>(now)});
  }

 private:
  // Drops a trailing partial line. Caller holds LOCK_EX on fd.
  void repair_tail(int fd) {
    const off_t size = ::lseek(fd, 0, SEEK_END);
    if (size <= 0) return;
    const int rfd = ::open(file_.c_str(), O_RDONLY | O_CLOEXEC);
    if (rfd < 0) return;
    char last = '\n';
    if (::pread(rfd, &last, 1, size - 1) == 1 && last != '\n') {
      // find the previous newline
      off_t pos = size - 1;
      char c = 0;
      while (pos > 0 && ::pread(rfd, &c, 1, pos - 1) == 1 && c != '\n') --pos;
      if (::ftruncate(fd, pos) == 0 && warn_) warn_("cache: dropped torn record at end of " + file_.string());
    }
    ::close(rfd);
  }

  std::vector<std::string> read_lines() {
    std::vector<std::string> lines;
    const int fd = ::open(file_.c_str(), O_RDWR | O_CLOEXEC);
    if (fd < 0) return lines;
    ::flock(fd, LOCK_SH);
    std::string data;
    char buf[65536];
    for (;;) {
      const ssize_t n = ::read(fd, buf, sizeof buf);
      if (n <= 0) break;
      data.append(buf, static_cast<std::size_t>(n));
    }
    ::flock(fd, LOCK_UN);
    if (!data.empty() && data.back() != '\n') {
      ::flock(fd, LOCK_EX);
      repair_tail(fd);
      ::flock(fd, LOCK_UN);
      data.erase(data.rfind('\n') == std::string::npos ? 0 : data.rfind('\n') + 1);
    }
    ::close(fd);
    std::size_t start = 0;
    while (start < data.size()) {
      const std::size_t nl = data.find('\n', start);
      if (nl == std::string::npos) break;
      lines.push_back(data.substr(start, nl - start));
      start = nl + 1;
    }
    return lines;
  }

  std::filesystem::path dir_;
  std::filesystem::path file_;
  std::string version_;
  WarningSink warn_;
  std::mutex mu_;
};

}  // namespace ikc
