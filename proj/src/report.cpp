#include "voak/report.hpp"

#include <json.hpp>

namespace voak {

void CheckReport::add_pass(const std::string& kind, const std::string& descriptor) {
  ++checked;
  ++passed;
  if (keep_passes) entries.push_back({kind, descriptor, true, ""});
}

void CheckReport::add_fail(const std::string& kind, const std::string& descriptor,
                           const std::string& detail) {
  ++checked;
  ++failed;
  entries.push_back({kind, descriptor, false, detail});
}

void CheckReport::merge(const CheckReport& o) {
  checked += o.checked;
  passed += o.passed;
  failed += o.failed;
  skipped_oow += o.skipped_oow;
  entries.insert(entries.end(), o.entries.begin(), o.entries.end());
}

std::string CheckReport::to_text() const {
  std::string s;
  s += title + ": checked=" + std::to_string(checked) + " passed=" + std::to_string(passed) +
       " failed=" + std::to_string(failed) + " skipped_oow=" + std::to_string(skipped_oow) +
       (failed == 0 ? "  [ok]" : "  [FAIL]") + "\n";
  for (const auto& e : entries) {
    if (e.passed) continue;
    s += "  FAIL " + e.kind + " " + e.descriptor + " :: " + e.detail + "\n";
  }
  return s;
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["title"] = title;
  j["checked"] = checked;
  j["passed"] = passed;
  j["failed"] = failed;
  j["skipped_oow"] = skipped_oow;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json je;
    je["kind"] = e.kind;
    je["descriptor"] = e.descriptor;
    je["residual_zero"] = e.passed;
    if (!e.passed) je["detail"] = e.detail;
    j["entries"].push_back(je);
  }
  return j.dump(2);
}

std::uint64_t Rng::next() {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t limit = ~0ull - (~0ull % n);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

}  // namespace voak
