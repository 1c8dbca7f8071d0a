#pragma once

#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>

#include "bcinv/errors.hpp"
#include "bcinv/integer.hpp"

namespace bcinv {

inline constexpr int kDefaultDigits = 30;

/// Decimal digits for high-precision output: BCINV_PRECISION when set, else 30.
inline int default_precision_digits() {
  const char* env = std::getenv("BCINV_PRECISION");
  if (env == nullptr || *env == '\0') return kDefaultDigits;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 5 || v > 10000) throw InputError(std::string("BCINV_PRECISION must be an integer in [5, 10000], got '") + env + "'");
  return static_cast<int>(v);
}

/// Working precision in bits for `digits` decimal digits, with guard bits.
inline mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

/// Owning wrapper around mpfr_t; every result is rounded to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_ui(v_, 0, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Real& operator=(Real o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  static Real from_string(std::string_view s, mpfr_prec_t bits) {
    Real r(bits);
    std::string str(s);
    if (str.empty()) throw InputError("empty number");
    char* end = nullptr;
    mpfr_strtofr(r.v_, str.c_str(), &end, 10, MPFR_RNDN);
    if (end == str.c_str() || *end != '\0' || !mpfr_number_p(r.v_)) throw InputError("not a decimal number: '" + str + "'");
    return r;
  }
  static Real from_integer(const Integer& z, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend Real operator*(const Real& a, const Real& b) { Real r(a.precision()); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r(a.precision()); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator+(const Real& a, const Real& b) { Real r(a.precision()); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r(a.precision()); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }

  /// base^s for a positive integer base.
  static Real pow(const Integer& base, const Real& s) {
    Real b = from_integer(base, s.precision()), r(s.precision());
    mpfr_pow(r.v_, b.v_, s.v_, MPFR_RNDN);
    return r;
  }

  /// Fixed-point decimal with `digits` significant digits (no exponent notation).
  std::string to_decimal(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    if (!mpfr_number_p(v_)) throw ArithmeticError("non-finite value");
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
    std::string m(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (m.front() == '-') {
      sign = "-";
      m.erase(0, 1);
    }
    std::string out;
    if (e <= 0) {
      out = "0." + std::string(static_cast<std::size_t>(-e), '0') + m;
    } else if (static_cast<std::size_t>(e) >= m.size()) {
      out = m + std::string(static_cast<std::size_t>(e) - m.size(), '0');
    } else {
      out = m.substr(0, static_cast<std::size_t>(e)) + "." + m.substr(static_cast<std::size_t>(e));
    }
    return sign + out;
  }

 private:
  mpfr_t v_;
};

}  // namespace bcinv
