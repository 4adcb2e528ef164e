#pragma once

// Field readers shared by the YAML fixture loaders. Each one reports the
// offending line and field through ParseError.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "lct/errors.hpp"
#include "lct/surface.hpp"

namespace lct::yamlf {

inline std::string where(const YAML::Node& n, const std::string& field) {
  const YAML::Mark m = n.Mark();
  if (m.line < 0) return field;
  return "line " + std::to_string(m.line + 1) + ", " + field;
}

inline void allow_keys(const YAML::Node& n, const std::string& field, std::initializer_list<const char*> keys) {
  for (const auto& kv : n) {
    const std::string k = kv.first.as<std::string>();
    if (std::none_of(keys.begin(), keys.end(), [&](const char* allowed) { return k == allowed; }))
      throw ParseError(where(kv.first, field), "unknown key '" + k + "'");
  }
}

inline YAML::Node need(const YAML::Node& parent, const char* key, const std::string& field) {
  YAML::Node n = parent[key];
  if (!n) throw ParseError(where(parent, field), std::string("missing required field '") + key + "'");
  return n;
}

inline void expect_map(const YAML::Node& n, const std::string& field) {
  if (!n.IsMap()) throw ParseError(where(n, field), "expected a mapping");
}

inline void expect_seq(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) throw ParseError(where(n, field), "expected a list");
}

inline std::string text(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ParseError(where(n, field), "expected a scalar");
  return n.Scalar();
}

inline std::string text_or(const YAML::Node& parent, const char* key, const std::string& field, std::string fallback = {}) {
  const YAML::Node n = parent[key];
  return n ? text(n, field + "." + key) : fallback;
}

inline Rat rational(const YAML::Node& n, const std::string& field) {
  const std::string s = text(n, field);
  try {
    return Rat::parse(s);
  } catch (const ParseError& e) {
    throw ParseError(where(n, field), e.what());
  } catch (const ZeroDenominator& e) {
    throw ParseError(where(n, field), e.what());
  }
}

inline int integer(const YAML::Node& n, const std::string& field) {
  const Rat r = rational(n, field);
  if (!r.is_integer() || r.abs() > Rat(1000000)) throw ParseError(where(n, field), "expected an integer");
  return static_cast<int>(r.num());
}

inline bool boolean(const YAML::Node& n, const std::string& field) {
  const std::string s = text(n, field);
  if (s == "true" || s == "yes") return true;
  if (s == "false" || s == "no") return false;
  throw ParseError(where(n, field), "expected true or false");
}

inline std::vector<int> int_list(const YAML::Node& n, const std::string& field) {
  expect_seq(n, field);
  std::vector<int> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(integer(n[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::string> string_list(const YAML::Node& n, const std::string& field) {
  expect_seq(n, field);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(text(n[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline BoundaryDivisor divisor(const YAML::Node& n, const std::string& field) {
  try {
    return BoundaryDivisor::parse(text(n, field));
  } catch (const ParseError& e) {
    if (!e.location().empty()) throw;
    throw ParseError(where(n, field), e.what());
  }
}

inline Assumption assumption(const YAML::Node& n, const std::string& field) {
  expect_map(n, field);
  allow_keys(n, field, {"tag", "cite", "text"});
  Assumption a{text(need(n, "tag", field), field + ".tag"), text_or(n, "cite", field), text_or(n, "text", field)};
  static const std::set<std::string> tags{"connectedness", "degree-bound", "mult-bound", "convexity-choice",
                                          "fixture-data", "no-invariant-points"};
  if (!tags.contains(a.tag)) throw ParseError(where(n, field), "unknown assumption tag '" + a.tag + "'");
  return a;
}

inline std::vector<Assumption> assumptions(const YAML::Node& n, const std::string& field) {
  expect_seq(n, field);
  std::vector<Assumption> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(assumption(n[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace lct::yamlf
