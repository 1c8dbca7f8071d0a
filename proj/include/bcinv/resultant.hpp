#pragma once

#include <utility>

#include "bcinv/int_poly.hpp"

namespace bcinv {

/// Res(a, b) by the subresultant pseudo-remainder sequence; exact over Z.
inline Integer resultant(IntPoly a, IntPoly b) {
  if (a.is_zero() || b.is_zero()) return 0;
  int sign = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
  }
  if (b.degree() == 0) return ipow(b.leading(), static_cast<unsigned long>(a.degree())) * sign;

  const Integer ca = a.content(), cb = b.content();
  const Integer t = ipow(ca, static_cast<unsigned long>(b.degree())) * ipow(cb, static_cast<unsigned long>(a.degree()));
  a = a.exact_scalar_div(ca);
  b = b.exact_scalar_div(cb);
  Integer g = 1, h = 1;
  for (;;) {
    const int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = r.exact_scalar_div(g * ipow(h, static_cast<unsigned long>(delta)));
    g = a.leading();
    // h <- g^delta / h^(delta - 1)
    Integer num = ipow(g, static_cast<unsigned long>(delta));
    Integer den = ipow(h, static_cast<unsigned long>(delta - 1));
    mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (b.degree() == 0) {
      const unsigned long da = static_cast<unsigned long>(a.degree());
      Integer num2 = ipow(b.leading(), da);
      Integer den2 = ipow(h, da - 1);
      Integer res;
      mpz_divexact(res.get_mpz_t(), num2.get_mpz_t(), den2.get_mpz_t());
      return res * t * sign;
    }
  }
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f).
inline Integer discriminant(const IntPoly& f) {
  if (f.degree() < 1) throw InputError("discriminant needs degree >= 1");
  const int n = f.degree();
  if (n == 1) return 1;
  Integer r = resultant(f, f.derivative());
  Integer d;
  mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
  if ((n * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

/// gcd over Z[x] (primitive, positive leading coefficient) via a primitive PRS.
inline IntPoly gcd_over_z(IntPoly a, IntPoly b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  Integer c;
  {
    Integer ca = a.content(), cb = b.content();
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  }
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? IntPoly() : r.primitive_part();
  }
  return c * a.primitive_part();
}

}  // namespace bcinv
