#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcinv/factor_mod_p.hpp"
#include "bcinv/int_poly.hpp"
#include "bcinv/mod_poly.hpp"
#include "bcinv/resultant.hpp"

namespace bcinv {

struct IrreducibilityEffort {
  int sieve_primes = 12;            // good primes examined by the degree-set sieve
  int max_zassenhaus_degree = 10;   // recombination is attempted only up to this degree
  std::uint64_t max_subsets = 1U << 20;
  std::uint64_t seed = 0;
};

enum class Irreducibility { irreducible, reducible, inconclusive };

struct IrreducibilityResult {
  Irreducibility verdict = Irreducibility::inconclusive;
  IntPoly witness;  // a proper factor when reducible
  std::string method;
};

namespace detail {

inline IntPoly reduce_coeffs(const IntPoly& a, const Integer& m) {
  std::vector<Integer> c(a.coefficients().begin(), a.coefficients().end());
  for (auto& v : c) v = mod_floor(v, m);
  return IntPoly(std::move(c));
}

inline IntPoly symmetric_coeffs(const IntPoly& a, const Integer& m) {
  std::vector<Integer> c(a.coefficients().begin(), a.coefficients().end());
  const Integer half = m / 2;
  for (auto& v : c) {
    v = mod_floor(v, m);
    if (v > half) v -= m;
  }
  return IntPoly(std::move(c));
}

/// Lifts f = g*h (mod p), g and h monic and coprime mod p, to a factorization mod p^k.
inline std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& f, const ModPoly& g, const ModPoly& h,
                                                     const Integer& p, unsigned k) {
  auto [d, s, t] = extended_gcd(g, h);
  if (!d.is_one()) throw ArithmeticError("Hensel lifting needs coprime factors");
  IntPoly G = g.lift(), H = h.lift();
  Integer q = p;
  for (unsigned i = 1; i < k; ++i) {
    IntPoly e = (f - G * H).exact_scalar_div(q);
    ModPoly ebar = ModPoly::from(e, p);
    ModPoly dg = (ebar * t) % g;
    auto [dh, rem] = divmod(ebar - dg * h, g);
    if (!rem.is_zero()) throw InternalError("Hensel step: inexact division");
    G = G + q * dg.lift();
    H = H + q * dh.lift();
    q *= p;
    G = reduce_coeffs(G, q);
    H = reduce_coeffs(H, q);
  }
  return {G, H};
}

}  // namespace detail

/// Lifts a factorization of monic f into pairwise coprime monic factors mod p
/// to one mod p^k. Returned factors have coefficients in [0, p^k).
inline std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors,
                                        const Integer& p, unsigned k) {
  std::vector<IntPoly> out;
  const Integer pk = ipow(p, k);
  IntPoly current = f;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    ModPoly rest = ModPoly::constant(1, p);
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = rest * factors[j];
    auto [G, H] = detail::hensel_lift_pair(current, factors[i], rest, p, k);
    out.push_back(G);
    current = H;
  }
  out.push_back(detail::reduce_coeffs(current, pk));
  return out;
}

/// Subset sums of the factor-degree multiset: achievable[d] iff some factor of
/// f mod p has degree d.
inline std::vector<bool> achievable_degrees(const FactorizationFp& fac, int n) {
  std::vector<bool> ok(static_cast<std::size_t>(n) + 1, false);
  ok[0] = true;
  for (int d : fac.degree_multiset())
    for (int s = n; s >= d; --s)
      if (ok[static_cast<std::size_t>(s - d)]) ok[static_cast<std::size_t>(s)] = true;
  return ok;
}

enum class FactorSearch { found, none, budget_exhausted };

struct FactorSearchResult {
  FactorSearch outcome = FactorSearch::none;
  IntPoly factor;
  Integer prime;
  std::uint64_t subsets_tried = 0;
  std::vector<bool> sieve;  // degrees surviving the degree-set sieve
};

/// Zassenhaus search for a monic factor of monic squarefree f over Z whose
/// degree satisfies `wanted`. Complete: `none` proves no such factor exists.
inline FactorSearchResult zassenhaus_search(const IntPoly& f, const std::function<bool(int)>& wanted,
                                            const IrreducibilityEffort& effort = {}) {
  if (!f.is_monic()) throw InputError("zassenhaus_search: polynomial must be monic");
  const int n = f.degree();
  const Integer disc = discriminant(f);
  if (disc == 0) throw InputError("zassenhaus_search: polynomial must be squarefree");

  FactorSearchResult res;
  res.sieve.assign(static_cast<std::size_t>(n) + 1, true);
  std::optional<FactorizationFp> best;
  int good = 0;
  for (Integer p = 2; good < effort.sieve_primes; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
    if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) continue;
    ++good;
    FactorizationFp fac = factor_mod_p(f, p, effort.seed);
    auto ok = achievable_degrees(fac, n);
    for (int d = 0; d <= n; ++d) res.sieve[static_cast<std::size_t>(d)] = res.sieve[static_cast<std::size_t>(d)] && ok[static_cast<std::size_t>(d)];
    if (!best || fac.factors.size() < best->factors.size()) best = std::move(fac);
  }
  bool any_wanted = false;
  for (int d = 1; d < n; ++d) any_wanted = any_wanted || (res.sieve[static_cast<std::size_t>(d)] && wanted(d));
  if (!any_wanted) return res;

  const Integer& p = best->p;
  res.prime = p;
  std::vector<ModPoly> modular;
  for (const auto& [g, e] : best->factors) modular.push_back(g);

  Integer norm2 = 0;
  for (const auto& c : f.coefficients()) norm2 += c * c;
  const Integer bound = ipow(2, static_cast<unsigned long>(n)) * (isqrt(norm2) + 1);
  unsigned k = 1;
  Integer pk = p;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  const std::vector<IntPoly> lifted = hensel_lift(f, modular, p, k);
  const Integer f0 = f.coeff(0);

  std::vector<int> degs;
  for (const auto& g : modular) degs.push_back(g.degree());
  const std::size_t r = lifted.size();

  // Depth-first over subsets in index order, carrying the running product mod p^k.
  std::function<bool(std::size_t, int, const IntPoly&)> dfs = [&](std::size_t start, int deg, const IntPoly& prod) {
    if (deg > 0 && deg < n && wanted(deg) && res.sieve[static_cast<std::size_t>(deg)]) {
      if (++res.subsets_tried > effort.max_subsets) {
        res.outcome = FactorSearch::budget_exhausted;
        return true;
      }
      IntPoly cand = detail::symmetric_coeffs(prod, pk);
      const Integer c0 = cand.coeff(0);
      bool plausible = (f0 == 0) || (c0 != 0 && mpz_divisible_p(f0.get_mpz_t(), c0.get_mpz_t()));
      if (plausible) {
        auto [q, exact] = divide_exact(f, cand);
        if (exact) {
          res.outcome = FactorSearch::found;
          res.factor = cand;
          return true;
        }
      }
    }
    for (std::size_t i = start; i < r; ++i) {
      if (deg + degs[i] >= n) continue;
      IntPoly next = detail::reduce_coeffs(prod * lifted[i], pk);
      if (dfs(i + 1, deg + degs[i], next)) return true;
    }
    return false;
  };
  dfs(0, 0, IntPoly::constant(1));
  return res;
}

/// Tri-state irreducibility over Q for monic f.
inline IrreducibilityResult is_irreducible_over_q(const IntPoly& f, const IrreducibilityEffort& effort = {}) {
  if (f.degree() < 1) throw InputError("irreducibility test needs degree >= 1");
  if (!f.is_monic()) throw InputError("irreducibility test needs a monic polynomial, got " + f.to_string());
  const int n = f.degree();
  if (n == 1) return {Irreducibility::irreducible, {}, "linear"};

  if (f.coeff(0) == 0) return {Irreducibility::reducible, IntPoly::x(), "rational root"};
  const Integer c0 = abs(f.coeff(0));
  if (c0 <= Integer("1000000000000")) {
    const Integer lim = isqrt(c0);
    for (Integer d = 1; d <= lim; ++d) {
      if (!mpz_divisible_p(c0.get_mpz_t(), d.get_mpz_t())) continue;
      for (const Integer& cand : {Integer(d), Integer(c0 / d)})
        for (const Integer& r : {cand, Integer(-cand)})
          if (f.eval(r) == 0) return {Irreducibility::reducible, IntPoly(std::vector<Integer>{-r, 1}), "rational root"};
    }
  }

  if (discriminant(f) == 0)
    return {Irreducibility::reducible, gcd_over_z(f, f.derivative()), "repeated factor"};

  const bool small = n <= effort.max_zassenhaus_degree;
  IrreducibilityEffort sieve_only = effort;
  if (!small) sieve_only.max_subsets = 0;
  auto res = zassenhaus_search(f, [n](int d) { return 2 * d <= n; }, sieve_only);
  bool sieve_proves = true;
  for (int d = 1; d < n; ++d) sieve_proves = sieve_proves && !res.sieve[static_cast<std::size_t>(d)];
  if (sieve_proves) return {Irreducibility::irreducible, {}, "degree-set sieve"};
  switch (res.outcome) {
    case FactorSearch::found:
      return {Irreducibility::reducible, res.factor, "Zassenhaus recombination"};
    case FactorSearch::none:
      return {Irreducibility::irreducible, {}, "Zassenhaus recombination"};
    case FactorSearch::budget_exhausted:
      break;
  }
  return {Irreducibility::inconclusive, {}, small ? "effort budget exhausted" : "degree above recombination limit"};
}

}  // namespace bcinv
