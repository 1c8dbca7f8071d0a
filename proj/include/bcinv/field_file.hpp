#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "bcinv/numberfield.hpp"
#include "bcinv/poly_parse.hpp"

namespace bcinv {

struct FieldSpec {
  std::string label;
  IntPoly poly;
  bool assert_irreducible = false;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

/// Reads "key = value" (or "key: value") lines; '#' starts a comment.
/// Keys: label, poly, assert_irreducible.
inline FieldSpec parse_field_text(std::string_view text, std::string_view origin = "<field>") {
  FieldSpec spec;
  bool have_poly = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw InputError(std::string(origin) + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    std::size_t sep = t.find_first_of("=:");
    if (sep == std::string::npos) fail("expected 'key = value'");
    std::string key = detail::trim(std::string_view(t).substr(0, sep));
    std::string value = detail::trim(std::string_view(t).substr(sep + 1));
    if (key == "label") {
      spec.label = value;
    } else if (key == "poly") {
      try {
        spec.poly = parse_poly(value);
      } catch (const InputError& e) {
        fail(e.what());
      }
      have_poly = true;
    } else if (key == "assert_irreducible") {
      if (value == "true") spec.assert_irreducible = true;
      else if (value == "false") spec.assert_irreducible = false;
      else fail("assert_irreducible must be true or false");
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_poly) throw InputError(std::string(origin) + ": missing 'poly'");
  return spec;
}

inline NumberField field_from_spec(const FieldSpec& spec, const IrreducibilityEffort& effort = {}) {
  return NumberField::make(spec.poly, spec.label, spec.assert_irreducible, effort);
}

inline NumberField load_field(const std::string& path, const IrreducibilityEffort& effort = {}) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open field file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return field_from_spec(parse_field_text(ss.str(), path), effort);
}

}  // namespace bcinv
