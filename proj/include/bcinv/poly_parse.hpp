#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcinv/int_poly.hpp"

namespace bcinv {

namespace detail {

inline std::string strip_for_parse(std::string_view in) {
  std::string s;
  for (std::size_t i = 0; i < in.size(); ++i) {
    // U+2212 MINUS SIGN, as written in typeset sources.
    if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xE2 &&
        static_cast<unsigned char>(in[i + 1]) == 0x88 && static_cast<unsigned char>(in[i + 2]) == 0x92) {
      s += '-';
      i += 2;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(in[i]))) s += in[i];
  }
  return s;
}

class PolyParser {
 public:
  explicit PolyParser(std::string s) : s_(std::move(s)) {}

  IntPoly parse() {
    if (s_.empty()) fail("empty polynomial");
    if (s_.front() == '[') return parse_list();
    IntPoly acc;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      IntPoly t = parse_term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
    }
    return acc;
  }

  std::optional<char> variable() const { return var_; }

 private:
  std::string s_;
  std::size_t pos_ = 0;
  std::optional<char> var_;

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("cannot parse polynomial '" + s_ + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  Integer parse_integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(s_.substr(start, pos_ - start));
  }

  IntPoly parse_factor() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return IntPoly::constant(parse_integer());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      get();
      if (var_ && *var_ != c) fail(std::string("second variable symbol '") + c + "'");
      var_ = c;
      std::size_t e = 1;
      if (peek() == '^') {
        get();
        Integer ex = parse_integer();
        if (ex > 100000) fail("exponent too large");
        e = ex.get_ui();
      }
      return IntPoly::monomial(1, e);
    }
    fail("expected a coefficient or the variable");
  }

  IntPoly parse_term() {
    IntPoly t = parse_factor();
    for (;;) {
      if (peek() == '*') {
        get();
        t = t * parse_factor();
      } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
        t = t * parse_factor();  // implicit product, as in "3x^2"
      } else {
        return t;
      }
    }
  }

  IntPoly parse_list() {
    get();
    std::vector<Integer> coeffs;
    if (peek() == ']') fail("empty coefficient list");
    for (;;) {
      int sign = 1;
      if (peek() == '-' || peek() == '+') sign = get() == '-' ? -1 : 1;
      coeffs.push_back(sign * parse_integer());
      char c = pos_ < s_.size() ? get() : '\0';
      if (c == ']') break;
      if (c != ',') fail("expected ',' or ']'");
    }
    if (pos_ != s_.size()) fail("trailing characters after ']'");
    return IntPoly(std::move(coeffs));
  }
};

}  // namespace detail

/// Parses "x^8 - 97", "x^2 + x + 1", "3*x^2 - 16*97" or a coefficient list
/// "[-97,0,0,0,0,0,0,0,1]" (lowest degree first). Whitespace is ignored and
/// at most one variable letter may appear.
inline IntPoly parse_poly(std::string_view text) {
  detail::PolyParser parser(detail::strip_for_parse(text));
  return parser.parse();
}

}  // namespace bcinv
