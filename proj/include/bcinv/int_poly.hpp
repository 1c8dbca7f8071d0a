#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bcinv/integer.hpp"

namespace bcinv {

/// Dense univariate polynomial over Z, coefficients lowest degree first.
/// The zero polynomial has no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { normalize(); }
  IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
  }

  static IntPoly constant(Integer v) { return IntPoly(std::vector<Integer>{std::move(v)}); }
  static IntPoly monomial(Integer coeff, std::size_t k) {
    std::vector<Integer> c(k + 1);
    c[k] = std::move(coeff);
    return IntPoly(std::move(c));
  }
  static IntPoly x() { return monomial(1, 1); }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::span<const Integer> coefficients() const noexcept { return c_; }

  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  const Integer& leading() const {
    if (c_.empty()) throw ArithmeticError("leading coefficient of the zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  IntPoly derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(d));
  }

  Integer eval(const Integer& x) const {
    Integer r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  /// gcd of the coefficients, nonnegative; 0 for the zero polynomial.
  Integer content() const {
    Integer g = 0;
    for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
  }

  /// Content removed, leading coefficient made positive.
  IntPoly primitive_part() const {
    if (is_zero()) return {};
    Integer g = content();
    if (c_.back() < 0) g = -g;
    std::vector<Integer> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(r[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(r));
  }

  /// p(a + b x) by Horner's rule.
  IntPoly substitute_linear(const Integer& a, const Integer& b) const {
    IntPoly lin(std::vector<Integer>{a, b});
    IntPoly r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + constant(*it);
    return r;
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return IntPoly(std::move(r));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return IntPoly(std::move(r));
  }
  friend IntPoly operator-(const IntPoly& a) { return IntPoly() - a; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly(std::move(r));
  }
  friend IntPoly operator*(const Integer& s, const IntPoly& a) {
    std::vector<Integer> r(a.c_);
    for (auto& v : r) v *= s;
    return IntPoly(std::move(r));
  }

  IntPoly pow(unsigned e) const {
    IntPoly r = constant(1), b = *this;
    while (e) {
      if (e & 1U) r = r * b;
      e >>= 1U;
      if (e) b = b * b;
    }
    return r;
  }

  /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
  friend IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
    if (b.is_zero()) throw ArithmeticError("pseudo-remainder by the zero polynomial");
    const int db = b.degree();
    int delta = a.degree() - db + 1;
    if (delta <= 0) return a;
    const Integer& lb = b.leading();
    while (!a.is_zero() && a.degree() >= db) {
      Integer la = a.leading();
      const std::size_t shift = static_cast<std::size_t>(a.degree() - db);
      a = lb * a - monomial(la, shift) * b;
      --delta;
    }
    if (delta > 0) a = ipow(lb, static_cast<unsigned long>(delta)) * a;
    return a;
  }

  /// Exact quotient and remainder by a monic divisor.
  friend std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& b) {
    if (!b.is_monic()) throw ArithmeticError("divmod_monic requires a monic divisor");
    if (a.degree() < b.degree()) return {IntPoly(), a};
    std::vector<Integer> rem(a.c_);
    std::vector<Integer> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const std::size_t db = static_cast<std::size_t>(b.degree());
    for (std::size_t i = rem.size(); i-- > db;) {
      const Integer lead = rem[i];
      if (lead == 0) continue;
      q[i - db] = lead;
      for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= lead * b.c_[j];
    }
    rem.resize(db);
    return {IntPoly(std::move(q)), IntPoly(std::move(rem))};
  }

  /// Exact division over Z. The flag is false when b does not divide a.
  friend std::pair<IntPoly, bool> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw ArithmeticError("division by the zero polynomial");
    if (a.is_zero()) return {IntPoly(), true};
    if (a.degree() < b.degree()) return {IntPoly(), false};
    std::vector<Integer> rem(a.c_);
    std::vector<Integer> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const std::size_t db = static_cast<std::size_t>(b.degree());
    const Integer& lb = b.leading();
    for (std::size_t i = rem.size(); i-- > db;) {
      if (rem[i] == 0) continue;
      if (!mpz_divisible_p(rem[i].get_mpz_t(), lb.get_mpz_t())) return {IntPoly(), false};
      Integer qi;
      mpz_divexact(qi.get_mpz_t(), rem[i].get_mpz_t(), lb.get_mpz_t());
      for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= qi * b.c_[j];
      q[i - db] = std::move(qi);
    }
    for (std::size_t i = 0; i < db; ++i)
      if (rem[i] != 0) return {IntPoly(), false};
    return {IntPoly(std::move(q)), true};
  }

  /// Every coefficient divided by d, which must divide all of them.
  IntPoly exact_scalar_div(const Integer& d) const {
    std::vector<Integer> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!mpz_divisible_p(c_[i].get_mpz_t(), d.get_mpz_t()))
        throw ArithmeticError("coefficient " + c_[i].get_str() + " not divisible by " + d.get_str());
      mpz_divexact(r[i].get_mpz_t(), c_[i].get_mpz_t(), d.get_mpz_t());
    }
    return IntPoly(std::move(r));
  }

  std::string to_string(char var = 'x') const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Integer& v = c_[k];
      if (v == 0) continue;
      Integer mag = abs(v);
      if (s.empty()) {
        if (v < 0) s += "-";
      } else {
        s += v < 0 ? " - " : " + ";
      }
      if (k == 0 || mag != 1) s += mag.get_str();
      if (k >= 1) s += var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  std::vector<Integer> c_;
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

}  // namespace bcinv
