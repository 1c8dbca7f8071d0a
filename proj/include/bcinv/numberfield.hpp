#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bcinv/factor_mod_p.hpp"
#include "bcinv/int_poly.hpp"
#include "bcinv/irreducible.hpp"
#include "bcinv/mod_poly.hpp"
#include "bcinv/resultant.hpp"

namespace bcinv {

/// Q[x]/(f) for a monic irreducible integer polynomial f. The rationals are
/// the degree-one case (conventionally x - 1).
struct NumberField {
  IntPoly poly;
  int degree = 0;
  Integer disc;
  std::string label;
  bool irreducibility_asserted = false;  // true when certification was skipped on request
  std::string irreducibility_method;

  static NumberField make(IntPoly f, std::string label = {}, bool assert_irreducible = false,
                          const IrreducibilityEffort& effort = {}) {
    if (f.degree() < 1) throw InputError("defining polynomial must have degree >= 1");
    if (!f.is_monic()) throw InputError("defining polynomial must be monic: " + f.to_string());
    NumberField k;
    k.degree = f.degree();
    k.disc = discriminant(f);
    k.label = label.empty() ? f.to_string() : std::move(label);
    if (assert_irreducible) {
      if (k.disc == 0) throw InputError("defining polynomial has a repeated factor: " + f.to_string());
      k.irreducibility_asserted = true;
      k.irreducibility_method = "asserted";
    } else {
      auto r = is_irreducible_over_q(f, effort);
      if (r.verdict == Irreducibility::reducible)
        throw InputError("defining polynomial " + f.to_string() + " is reducible; factor " + r.witness.to_string());
      if (r.verdict == Irreducibility::inconclusive)
        throw InputError("irreducibility of " + f.to_string() + " could not be certified (" + r.method +
                         "); set assert_irreducible=true to proceed");
      k.irreducibility_method = r.method;
    }
    k.poly = std::move(f);
    return k;
  }

  static NumberField rationals() { return make(IntPoly{-1, 1}, "Q"); }
};

/// The prime (p, h(theta)) with h monic irreducible mod p.
struct PrimeIdeal {
  Integer p;
  int e = 1;
  int f = 1;
  ModPoly generator{Integer(2)};
  Integer norm;

  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.p == b.p && a.e == b.e && a.f == b.f && a.generator == b.generator;
  }
  /// Sorted by (norm, p, generator).
  friend std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b) {
    if (int c = cmp(a.norm, b.norm); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(a.p, b.p); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.generator <=> b.generator;
  }

  std::string to_string() const {
    return "(" + p.get_str() + ", " + generator.to_string('t') + ")";
  }
};

struct SplittingType {
  Integer p;
  std::vector<std::pair<int, int>> pairs;  // (e, f), sorted by (f, e)
  int g = 0;
  bool p_maximal_certified = false;
  std::vector<PrimeIdeal> primes;  // same order as pairs
};

enum class PMaximality { p_maximal, not_p_maximal };

/// Factorization of f mod p together with the Dedekind criterion verdict.
struct PrimeAnalysis {
  FactorizationFp factorization;
  PMaximality maximality = PMaximality::not_p_maximal;
};

inline PrimeAnalysis analyze_prime(const NumberField& k, const Integer& p, std::uint64_t seed = 0) {
  if (!is_prime(p)) throw InputError(p.get_str() + " is not prime");
  PrimeAnalysis a{factor_mod_p(k.poly, p, seed), PMaximality::p_maximal};
  ModPoly gbar = ModPoly::constant(1, p), hbar = ModPoly::constant(1, p);
  for (const auto& [gi, ei] : a.factorization.factors) {
    gbar = gbar * gi;
    for (int j = 1; j < ei; ++j) hbar = hbar * gi;
  }
  if (hbar.is_one()) return a;  // squarefree mod p
  IntPoly t = (gbar.lift() * hbar.lift() - k.poly).exact_scalar_div(p);
  ModPoly d = gcd(gcd(ModPoly::from(t, p), gbar), hbar);
  if (!d.is_one()) a.maximality = PMaximality::not_p_maximal;
  return a;
}

inline PMaximality dedekind_criterion(const NumberField& k, const Integer& p, std::uint64_t seed = 0) {
  return analyze_prime(k, p, seed).maximality;
}

inline SplittingType split_prime(const NumberField& k, const Integer& p, std::uint64_t seed = 0) {
  PrimeAnalysis a = analyze_prime(k, p, seed);
  if (a.maximality != PMaximality::p_maximal) throw NotPMaximal(p);
  SplittingType st;
  st.p = p;
  st.p_maximal_certified = true;
  for (const auto& [gi, ei] : a.factorization.factors) {
    PrimeIdeal P;
    P.p = p;
    P.e = ei;
    P.f = gi.degree();
    P.generator = gi;
    P.norm = ipow(p, static_cast<unsigned long>(P.f));
    st.primes.push_back(std::move(P));
  }
  std::stable_sort(st.primes.begin(), st.primes.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.e != b.e) return a.e < b.e;
    return a.generator < b.generator;
  });
  for (const auto& P : st.primes) st.pairs.emplace_back(P.e, P.f);
  st.g = static_cast<int>(st.pairs.size());
  return st;
}

/// All prime ideals of norm <= bound, sorted by (norm, p, generator).
inline std::vector<PrimeIdeal> prime_ideals_up_to(const NumberField& k, std::uint64_t bound, std::uint64_t seed = 0) {
  if (bound < 2) throw InputError("norm bound must be at least 2");
  std::vector<PrimeIdeal> out;
  for (std::uint64_t p : primes_up_to(bound)) {
    for (auto& P : split_prime(k, Integer(static_cast<unsigned long>(p)), seed).primes)
      if (P.norm <= Integer(static_cast<unsigned long>(bound))) out.push_back(std::move(P));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bcinv
