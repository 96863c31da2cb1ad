#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace equichain {

enum class Verdict { pass, fail, inapplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "?";
}

struct Check {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string detail;
  std::vector<std::string> witnesses;
};

// Verdicts plus named values, in insertion order.
struct Report {
  std::string title;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> values;

  Check& add(std::string name, bool ok, std::string detail = {}, std::vector<std::string> witnesses = {}) {
    checks.push_back({std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(detail), std::move(witnesses)});
    return checks.back();
  }
  Check& add_inapplicable(std::string name, std::string detail) {
    checks.push_back({std::move(name), Verdict::inapplicable, std::move(detail), {}});
    return checks.back();
  }
  void value(std::string key, std::string v) { values.emplace_back(std::move(key), std::move(v)); }

  // No check failed (inapplicable checks do not count as failures).
  bool passed() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::fail) return false;
    return true;
  }
  bool applicable() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::inapplicable) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  // Nested reports are merged with a prefix on every check and value name.
  void merge(const Report& other, const std::string& prefix) {
    for (auto c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : other.values) values.emplace_back(prefix + k, v);
  }

  std::string text() const {
    std::string out;
    if (!title.empty()) out += title + "\n";
    for (const auto& [k, v] : values) out += "  " + k + " = " + v + "\n";
    for (const auto& c : checks) {
      out += std::string("  [") + to_string(c.verdict) + "] " + c.name;
      if (!c.detail.empty()) out += ": " + c.detail;
      out += "\n";
      for (const auto& w : c.witnesses) out += "      witness: " + w + "\n";
    }
    out += std::string("  verdict: ") + (passed() ? "pass" : "fail") + "\n";
    return out;
  }

  nlohmann::ordered_json json() const {
    nlohmann::ordered_json j;
    j["title"] = title;
    auto vals = nlohmann::ordered_json::object();
    for (const auto& [k, v] : values) vals[k] = v;
    j["values"] = vals;
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["verdict"] = to_string(c.verdict);
      e["detail"] = c.detail;
      e["witnesses"] = c.witnesses;
      cs.push_back(e);
    }
    j["checks"] = cs;
    j["verdict"] = passed() ? "pass" : "fail";
    return j;
  }
};

}  // namespace equichain
