#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace voak {

struct CheckEntry {
  std::string kind;
  std::string descriptor;  // replayable instance descriptor
  bool passed = true;
  std::string detail;      // residual or error description on failure
};

struct CheckReport {
  std::string title;
  long checked = 0;
  long passed = 0;
  long failed = 0;
  long skipped_oow = 0;
  bool keep_passes = false;             // record passing instances too
  std::vector<CheckEntry> entries;      // failures (and passes when kept)

  bool all_passed() const { return failed == 0; }
  void add_pass(const std::string& kind, const std::string& descriptor);
  void add_fail(const std::string& kind, const std::string& descriptor,
                const std::string& detail);
  void add_skip() { ++skipped_oow; }
  void merge(const CheckReport& o);

  std::string to_text() const;
  std::string to_json() const;  // ordered, deterministic
};

// Deterministic PRNG (splitmix64); used for seeded sampling everywhere.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  // uniform in [0, n) by rejection
  std::uint64_t below(std::uint64_t n);
};

}  // namespace voak
