#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "twosr/app/scenario.hpp"

namespace twosr::app::detail {

using nlohmann::json;

// Finds the line of a key path by scanning for each quoted key in turn.
class Locator {
 public:
  Locator(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  int line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    for (const auto& key : path) {
      const auto hit = text_.find("\"" + key + "\"", pos);
      if (hit == std::string::npos) break;
      pos = hit + 1;
    }
    if (pos == 0) return 0;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(pos), '\n'));
  }

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& message) const {
    std::string dotted;
    for (const auto& k : path) dotted += (dotted.empty() ? "" : ".") + k;
    throw ScenarioError(source_, line_of(path), dotted + ": " + message);
  }

  const std::string& source() const { return source_; }

 private:
  const std::string& text_;
  std::string source_;
};

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::vector<std::string>& path, const Locator& loc) {
  if (!obj.is_object()) loc.fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      auto p = path;
      p.push_back(key);
      loc.fail(p, "unknown key");
    }
  }
}

inline double number(const json& obj, const std::string& key, double fallback,
              const std::vector<std::string>& path, const Locator& loc) {
  if (!obj.contains(key)) return fallback;
  auto p = path;
  p.push_back(key);
  const auto& v = obj.at(key);
  if (!v.is_number()) loc.fail(p, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) loc.fail(p, "must be finite");
  return d;
}

inline double positive(const json& obj, const std::string& key, double fallback,
                const std::vector<std::string>& path, const Locator& loc) {
  const double d = number(obj, key, fallback, path, loc);
  if (!(d > 0)) {
    auto p = path;
    p.push_back(key);
    loc.fail(p, "must be > 0");
  }
  return d;
}

/// Parses JSON, reporting syntax errors with their line.
inline json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min(text.size(), static_cast<std::size_t>(e.byte));
    const int line =
        1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
    std::string msg = e.what();
    const auto colon = msg.find("error: ");
    if (colon != std::string::npos) msg = msg.substr(colon + 7);
    throw ScenarioError(source, line, "syntax error: " + msg);
  }
}

}  // namespace twosr::app::detail
