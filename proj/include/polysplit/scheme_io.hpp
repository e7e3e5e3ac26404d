#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scheme.hpp"

namespace polysplit {

namespace detail {

// %.17g round-trips every double bit-exactly through strtod.
inline std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string json_array_g17(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += g17(v[i]);
  }
  out += "]";
  return out;
}

inline std::string json_quote(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace detail

// Serialize a scheme as JSON.  Written by hand rather than through a JSON
// library so that every number carries 17 significant digits.
inline std::string scheme_to_json(const SplittingScheme& s) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"name\": " << nlohmann::json(s.name).dump() << ",\n";
  os << "  \"order\": " << s.order << ",\n";
  os << "  \"stages\": " << s.stages << ",\n";
  os << "  \"kind\": \"" << to_string(s.kind) << "\",\n";
  os << "  \"design\": \"" << to_string(s.design) << "\",\n";
  os << "  \"a\": " << detail::json_array_g17(s.a) << ",\n";
  os << "  \"b\": " << detail::json_array_g17(s.b);
  if (s.l1_declared) os << ",\n  \"l1\": " << detail::g17(*s.l1_declared);
  os << "\n}\n";
  return os.str();
}

inline void save_scheme_file(const SplittingScheme& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw load_error("cannot open '" + path + "' for writing");
  out << scheme_to_json(s);
  if (!out) throw load_error("failed writing '" + path + "'");
}

// Parse a scheme from JSON text.  Two forms are accepted: the explicit
// {name, order, stages, kind, design, a, b[, l1]} object with fully expanded
// coefficient arrays, or {"alphas": [...]} naming the kernel coefficients of a
// symmetric Strang composition (optional name/order/design override the
// defaults chosen by compose_strang).  Every loaded scheme must pass
// validate(); failures raise load_error naming the violated invariant.
inline SplittingScheme scheme_from_json(const nlohmann::json& j) {
  SplittingScheme s;
  try {
    if (j.contains("alphas")) {
      s = compose_strang(j.at("alphas").get<std::vector<double>>());
      if (j.contains("name")) s.name = j.at("name").get<std::string>();
      if (j.contains("order")) s.order = j.at("order").get<int>();
      if (j.contains("design")) s.design = parse_design(j.at("design").get<std::string>());
      if (j.contains("l1")) s.l1_declared = j.at("l1").get<double>();
    } else {
      s.name = j.at("name").get<std::string>();
      s.order = j.at("order").get<int>();
      s.stages = j.at("stages").get<int>();
      s.kind = parse_kind(j.at("kind").get<std::string>());
      s.design = parse_design(j.at("design").get<std::string>());
      s.a = j.at("a").get<std::vector<double>>();
      s.b = j.at("b").get<std::vector<double>>();
      if (j.contains("l1")) s.l1_declared = j.at("l1").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw load_error(std::string("malformed scheme JSON: ") + e.what());
  } catch (const validation_error& e) {
    throw load_error(std::string("invalid scheme: ") + e.what());
  }

  SchemeValidationReport rep = validate(s);
  if (!rep.accepted()) {
    std::string why = "scheme '" + s.name + "' failed validation";
    for (const auto& m : rep.messages) why += "; " + m;
    throw load_error(why);
  }
  return s;
}

inline SplittingScheme load_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw load_error("cannot open scheme file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw load_error("cannot parse '" + path + "': " + e.what());
  }
  return scheme_from_json(j);
}

}  // namespace polysplit
