#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bcinv/int_poly.hpp"
#include "bcinv/mod_poly.hpp"

namespace bcinv {

struct FactorizationFp {
  Integer p;
  /// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
  std::vector<std::pair<ModPoly, int>> factors;

  /// Degrees with multiplicity, e.g. (x+1)^2 (x^2+1) -> {1, 1, 2}.
  std::vector<int> degree_multiset() const {
    std::vector<int> out;
    for (const auto& [g, e] : factors)
      for (int i = 0; i < e; ++i) out.push_back(g.degree());
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

/// Deterministic seed from the polynomial, the prime and a caller seed.
inline std::uint64_t factor_seed(const ModPoly& f, std::uint64_t seed) {
  std::uint64_t h = fnv1a(f.modulus().get_str());
  for (const auto& c : f.coefficients()) h = fnv1a("," + c.get_str(), h);
  return h ^ (seed * 0x9e3779b97f4a7c15ULL);
}

/// Coefficientwise p-th root of a polynomial in x^p over F_p.
inline ModPoly pth_root(const ModPoly& f) {
  const unsigned long p = f.modulus().get_ui();
  std::vector<Integer> r;
  for (std::size_t i = 0; i < f.coefficients().size(); i += p) r.push_back(f.coefficients()[i]);
  return ModPoly(std::move(r), f.modulus());
}

/// Squarefree decomposition of a monic polynomial: pairs (a_i, i) with f = prod a_i^i.
inline std::vector<std::pair<ModPoly, int>> squarefree_decomposition(const ModPoly& f) {
  std::vector<std::pair<ModPoly, int>> out;
  if (f.degree() <= 0) return out;
  ModPoly c = gcd(f, f.derivative());
  ModPoly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    ModPoly y = gcd(w, c);
    ModPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one()) {
    if (!f.modulus().fits_ulong_p()) throw ArithmeticError("p-th root for a huge modulus");
    const int p = static_cast<int>(f.modulus().get_ui());
    for (auto& [g, e] : squarefree_decomposition(pth_root(c))) out.emplace_back(g, e * p);
  }
  return out;
}

/// Distinct-degree factorization of a squarefree monic polynomial.
inline std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f) {
  std::vector<std::pair<ModPoly, int>> out;
  const Integer& p = f.modulus();
  const ModPoly x = ModPoly::x(p);
  ModPoly h = x % f;
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    h = powmod(h, p, f);
    ModPoly d = gcd(f, h - x);
    if (!d.is_one()) {
      out.emplace_back(d, i);
      f = f / d;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

/// Equal-degree splitting (Cantor-Zassenhaus; trace map in characteristic 2).
inline void equal_degree(const ModPoly& f, int d, gmp_randclass& rng, std::vector<ModPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const Integer& p = f.modulus();
  const Integer exponent = (ipow(p, static_cast<unsigned long>(d)) - 1) / 2;
  for (;;) {
    std::vector<Integer> coeffs(static_cast<std::size_t>(f.degree()));
    for (auto& c : coeffs) c = rng.get_z_range(p);
    ModPoly a(std::move(coeffs), p);
    if (a.degree() <= 0) continue;
    ModPoly b(p);
    if (p == 2) {
      ModPoly t = a % f;
      b = t;
      for (int j = 1; j < d; ++j) {
        t = (t * t) % f;
        b = b + t;
      }
    } else {
      b = powmod(a, exponent, f) - ModPoly::constant(1, p);
    }
    ModPoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Complete factorization of f mod p into monic irreducibles.
/// Output is independent of `seed`; the seed only drives the random splitting.
inline FactorizationFp factor_mod_p(const IntPoly& f, const Integer& p, std::uint64_t seed = 0) {
  if (!is_prime(p)) throw InputError("factor_mod_p: modulus " + p.get_str() + " is not prime");
  ModPoly fp = ModPoly::from(f, p);
  if (fp.is_zero()) throw InputError("factor_mod_p: polynomial vanishes mod " + p.get_str());
  fp = fp.monic();

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(detail::factor_seed(fp, seed)));

  FactorizationFp out{p, {}};
  for (const auto& [part, mult] : detail::squarefree_decomposition(fp)) {
    for (const auto& [block, d] : detail::distinct_degree(part)) {
      std::vector<ModPoly> irr;
      detail::equal_degree(block, d, rng, irr);
      for (auto& g : irr) out.factors.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  return out;
}

}  // namespace bcinv
