#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bcinv/int_poly.hpp"
#include "bcinv/integer.hpp"

namespace bcinv {

/// Polynomial over Z/qZ with coefficients kept in [0, q), lowest degree first.
/// gcd and division require the relevant leading coefficients to be
/// invertible, which is automatic for prime q.
class ModPoly {
 public:
  explicit ModPoly(Integer modulus) : q_(std::move(modulus)) { check_modulus(); }
  ModPoly(std::vector<Integer> coeffs, Integer modulus) : q_(std::move(modulus)), c_(std::move(coeffs)) {
    check_modulus();
    for (auto& v : c_) v = mod_floor(v, q_);
    normalize();
  }
  static ModPoly from(const IntPoly& f, const Integer& q) {
    return ModPoly(std::vector<Integer>(f.coefficients().begin(), f.coefficients().end()), q);
  }
  static ModPoly constant(const Integer& v, const Integer& q) { return ModPoly({v}, q); }
  static ModPoly x(const Integer& q) { return ModPoly({Integer(0), Integer(1)}, q); }

  const Integer& modulus() const noexcept { return q_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::span<const Integer> coefficients() const noexcept { return c_; }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  const Integer& leading() const {
    if (c_.empty()) throw ArithmeticError("leading coefficient of the zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  /// Coefficients lifted to [0, q).
  IntPoly lift() const { return IntPoly(c_); }

  /// Coefficients lifted to (-q/2, q/2].
  IntPoly lift_symmetric() const {
    std::vector<Integer> r(c_);
    Integer half = q_ / 2;
    for (auto& v : r)
      if (v > half) v -= q_;
    return IntPoly(std::move(r));
  }

  ModPoly monic() const {
    if (is_zero()) return *this;
    Integer inv = mod_inverse(leading(), q_);
    return scaled(inv);
  }
  ModPoly scaled(const Integer& s) const {
    std::vector<Integer> r(c_);
    for (auto& v : r) v *= s;
    return ModPoly(std::move(r), q_);
  }

  ModPoly derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return ModPoly(std::move(d), q_);
  }

  Integer eval(const Integer& x) const {
    Integer r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = mod_floor(r * x + *it, q_);
    return r;
  }

  friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.q_ == b.q_ && a.c_ == b.c_; }

  /// Canonical order: degree first, then coefficient sequence from the constant term up.
  friend std::strong_ordering operator<=>(const ModPoly& a, const ModPoly& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      int s = cmp(a.c_[i], b.c_[i]);
      if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    a.same_ring(b);
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return ModPoly(std::move(r), a.q_);
  }
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    a.same_ring(b);
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return ModPoly(std::move(r), a.q_);
  }
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    a.same_ring(b);
    if (a.is_zero() || b.is_zero()) return ModPoly(a.q_);
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return ModPoly(std::move(r), a.q_);
  }

  /// Quotient and remainder; the divisor's leading coefficient must be a unit.
  friend std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
    a.same_ring(b);
    if (b.is_zero()) throw ArithmeticError("division by the zero polynomial");
    const Integer& q = a.q_;
    Integer inv = mod_inverse(b.leading(), q);
    if (a.degree() < b.degree()) return {ModPoly(q), a};
    std::vector<Integer> rem(a.c_);
    std::vector<Integer> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const std::size_t db = static_cast<std::size_t>(b.degree());
    for (std::size_t i = rem.size(); i-- > db;) {
      Integer t = mod_floor(rem[i] * inv, q);
      if (t == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = mod_floor(rem[i - db + j] - t * b.c_[j], q);
      quo[i - db] = std::move(t);
    }
    rem.resize(db);
    return {ModPoly(std::move(quo), q), ModPoly(std::move(rem), q)};
  }
  friend ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
  friend ModPoly operator/(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

  /// Monic gcd (zero only when both inputs are zero).
  friend ModPoly gcd(ModPoly a, ModPoly b) {
    a.same_ring(b);
    while (!b.is_zero()) {
      ModPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Returns {g, s, t} with s*a + t*b = g monic.
  friend std::tuple<ModPoly, ModPoly, ModPoly> extended_gcd(const ModPoly& a, const ModPoly& b) {
    a.same_ring(b);
    const Integer& q = a.q_;
    ModPoly r0 = a, r1 = b;
    ModPoly s0 = constant(1, q), s1(q), t0(q), t1 = constant(1, q);
    while (!r1.is_zero()) {
      auto [quo, rem] = divmod(r0, r1);
      r0 = std::exchange(r1, rem);
      s0 = std::exchange(s1, s0 - quo * s1);
      t0 = std::exchange(t1, t0 - quo * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Integer inv = mod_inverse(r0.leading(), q);
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
  }

  /// base^e mod m.
  friend ModPoly powmod(const ModPoly& base, Integer e, const ModPoly& m) {
    if (e < 0) throw ArithmeticError("negative exponent in powmod");
    ModPoly r = constant(1, base.q_) % m;
    ModPoly b = base % m;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % m;
      e >>= 1;
      if (e > 0) b = (b * b) % m;
    }
    return r;
  }

  std::string to_string(char var = 'x') const { return lift().to_string(var); }

 private:
  Integer q_;
  std::vector<Integer> c_;

  void check_modulus() const {
    if (q_ < 2) throw ArithmeticError("modulus must be at least 2, got " + q_.get_str());
  }
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void same_ring(const ModPoly& o) const {
    if (q_ != o.q_) throw ArithmeticError("polynomials over different moduli");
  }
};

}  // namespace bcinv
