#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bcinv/irreducible.hpp"
#include "bcinv/numberfield.hpp"
#include "bcinv/parallel.hpp"
#include "bcinv/spectrum.hpp"

namespace bcinv {

struct FingerprintEntry {
  int g = 0;
  std::vector<std::pair<int, int>> pairs;  // (e, f), sorted by (f, e)

  friend bool operator==(const FingerprintEntry&, const FingerprintEntry&) = default;
};

struct SplittingFingerprint {
  std::string label;
  std::uint64_t bound = 0;
  std::map<std::uint64_t, FingerprintEntry> entries;
  std::vector<std::uint64_t> skipped;
};

/// Splitting data at every rational p <= B. Primes where Z[theta] is not
/// maximal land in `skipped`.
inline SplittingFingerprint fingerprint(const NumberField& k, std::uint64_t B, unsigned jobs = 1, std::uint64_t seed = 0) {
  if (B < 2) throw InputError("fingerprint bound must be at least 2");
  const auto ps = primes_up_to(B);
  auto splits = parallel_map<std::optional<SplittingType>>(ps.size(), jobs, [&](std::size_t i) {
    try {
      return std::optional(split_prime(k, Integer(static_cast<unsigned long>(ps[i])), seed));
    } catch (const NotPMaximal&) {
      return std::optional<SplittingType>();
    }
  });
  SplittingFingerprint fp{k.label, B, {}, {}};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (splits[i]) fp.entries.emplace(ps[i], FingerprintEntry{splits[i]->g, splits[i]->pairs});
    else fp.skipped.push_back(ps[i]);
  }
  return fp;
}

enum class CompareMode { splitting_numbers_only, full_splitting_types };

inline const char* to_string(CompareMode m) {
  return m == CompareMode::splitting_numbers_only ? "splitting_numbers_only" : "full_splitting_types";
}

inline CompareMode parse_compare_mode(std::string_view s) {
  if (s == "g" || s == "splitting_numbers_only") return CompareMode::splitting_numbers_only;
  if (s == "full" || s == "full_splitting_types") return CompareMode::full_splitting_types;
  throw InputError("mode must be g or full, got '" + std::string(s) + "'");
}

inline std::string pairs_to_string(const std::vector<std::pair<int, int>>& pairs) {
  std::string s = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i)
    s += (i ? "," : "") + std::string("(") + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + ")";
  return s + "}";
}

struct EquivalenceVerdict {
  CompareMode mode = CompareMode::splitting_numbers_only;
  bool agree = true;
  std::uint64_t bound = 0;
  std::optional<std::uint64_t> witness;  // least disagreeing prime
  std::string detail;
  std::optional<FingerprintEntry> first, second;  // entries at the witness
  std::vector<std::uint64_t> excluded;           // skipped by either side
  std::size_t compared = 0;
  std::string caveat;

  friend bool same_outcome(const EquivalenceVerdict& a, const EquivalenceVerdict& b) {
    return a.agree == b.agree && a.witness == b.witness && a.bound == b.bound;
  }
};

inline EquivalenceVerdict compare(const SplittingFingerprint& a, const SplittingFingerprint& b, CompareMode mode) {
  if (a.bound != b.bound)
    throw InputError("fingerprints have different bounds (" + std::to_string(a.bound) + " and " + std::to_string(b.bound) + ")");
  EquivalenceVerdict v;
  v.mode = mode;
  v.bound = a.bound;
  std::set_union(a.skipped.begin(), a.skipped.end(), b.skipped.begin(), b.skipped.end(), std::back_inserter(v.excluded));
  for (const auto& [p, ea] : a.entries) {
    auto it = b.entries.find(p);
    if (it == b.entries.end()) continue;
    const auto& eb = it->second;
    ++v.compared;
    const bool same = mode == CompareMode::splitting_numbers_only ? ea.g == eb.g : ea.pairs == eb.pairs;
    if (!same) {
      v.agree = false;
      v.witness = p;
      v.first = ea;
      v.second = eb;
      v.detail = mode == CompareMode::splitting_numbers_only
                     ? "g = " + std::to_string(ea.g) + " vs " + std::to_string(eb.g)
                     : pairs_to_string(ea.pairs) + " vs " + pairs_to_string(eb.pairs);
      break;
    }
  }
  if (v.agree) {
    v.caveat = "agree to bound " + std::to_string(v.bound) +
               ": finite evidence for equal zeta functions, not a proof";
  } else {
    v.caveat = "disagree at p = " + std::to_string(*v.witness) + ", so the zeta functions differ";
  }
  if (!v.excluded.empty()) {
    v.caveat += "; primes excluded as not p-maximal:";
    for (auto p : v.excluded) v.caveat += " " + std::to_string(p);
  }
  return v;
}

struct PipelineRow {
  std::uint64_t p = 0;
  int count_first = 0;
  int count_second = 0;
};

struct PipelineReport {
  std::uint64_t bound = 0;
  std::vector<PipelineRow> rows;  // primes compared on both sides
  std::vector<std::uint64_t> skipped_first, skipped_second;
  EquivalenceVerdict verdict;  // from the component counts
  EquivalenceVerdict compare_verdict;
};

namespace detail {

/// g_K(p) recovered as the number of second-maximal components labeled Z[1/p].
inline std::map<std::uint64_t, int> component_counts(const UniversePtr& U) {
  std::map<std::uint64_t, int> out;
  for (const auto& c : components_of_I2(U)) {
    if (classify(SpectrumPoint::all_but(U, c.index)) != Stratum::second_maximal)
      throw InternalError("component for " + c.prime.to_string() + " is not second maximal");
    ++out[c.trace.p.get_ui()];
  }
  return out;
}

}  // namespace detail

/// Counts primes above each p through spectrum components and their trace
/// labels, compares the counts, and checks the outcome against compare() in
/// splitting-number mode. A mismatch raises InternalError.
inline PipelineReport invariant_pipeline(const NumberField& a, const NumberField& b, std::uint64_t B, unsigned jobs = 1,
                                         std::uint64_t seed = 0) {
  auto Ua = PrimeUniverse::over_rational_primes(a, B);
  auto Ub = PrimeUniverse::over_rational_primes(b, B);
  auto ca = detail::component_counts(Ua);
  auto cb = detail::component_counts(Ub);

  PipelineReport r;
  r.bound = B;
  r.skipped_first = Ua->skipped;
  r.skipped_second = Ub->skipped;
  const auto fa = fingerprint(a, B, jobs, seed);
  const auto fb = fingerprint(b, B, jobs, seed);
  r.compare_verdict = compare(fa, fb, CompareMode::splitting_numbers_only);

  SplittingFingerprint ga{a.label, B, {}, Ua->skipped}, gb{b.label, B, {}, Ub->skipped};
  for (auto [p, n] : ca) ga.entries[p].g = n;
  for (auto [p, n] : cb) gb.entries[p].g = n;
  for (const auto& [fp, counts] : {std::pair{&fa, &ga}, std::pair{&fb, &gb}}) {
    for (const auto& [p, e] : fp->entries) {
      auto it = counts->entries.find(p);
      if (it == counts->entries.end() || it->second.g != e.g)
        throw InternalError("component count at p = " + std::to_string(p) + " differs from the splitting number");
    }
    if (fp->entries.size() != counts->entries.size() || fp->skipped != counts->skipped)
      throw InternalError("component counts and fingerprint cover different primes");
  }
  r.verdict = compare(ga, gb, CompareMode::splitting_numbers_only);
  for (const auto& [p, e] : ga.entries)
    if (auto it = gb.entries.find(p); it != gb.entries.end()) r.rows.push_back({p, e.g, it->second.g});
  if (!same_outcome(r.verdict, r.compare_verdict))
    throw InternalError("invariant pipeline and splitting comparison disagree");
  return r;
}

/// Norm of g(y - k*theta) from K(theta) down to Q, i.e. Res_x(f(x), g(y - k x)),
/// recovered by exact interpolation in y. Monic of degree deg f * deg g.
inline IntPoly trager_norm(const IntPoly& f, const IntPoly& g, long k) {
  const int D = f.degree() * g.degree();
  std::vector<mpq_class> xs, coef;
  for (int i = 0; i <= D; ++i) {
    const Integer y0 = i;
    xs.emplace_back(y0);
    coef.emplace_back(resultant(f, g.substitute_linear(y0, Integer(-k))));
  }
  // Newton divided differences, then expansion to monomial coefficients.
  for (int j = 1; j <= D; ++j)
    for (int i = D; i >= j; --i) coef[static_cast<std::size_t>(i)] = (coef[static_cast<std::size_t>(i)] - coef[static_cast<std::size_t>(i - 1)]) / (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - j)]);
  std::vector<mpq_class> poly{coef[static_cast<std::size_t>(D)]};
  for (int i = D - 1; i >= 0; --i) {
    std::vector<mpq_class> next(poly.size() + 1);
    for (std::size_t t = 0; t < poly.size(); ++t) {
      next[t + 1] += poly[t];
      next[t] -= poly[t] * xs[static_cast<std::size_t>(i)];
    }
    next[0] += coef[static_cast<std::size_t>(i)];
    poly = std::move(next);
  }
  std::vector<Integer> out;
  for (auto& q : poly) {
    q.canonicalize();
    if (q.get_den() != 1) throw InternalError("norm polynomial has a non-integral coefficient");
    out.emplace_back(q.get_num());
  }
  IntPoly N(std::move(out));
  if (!N.is_monic() || N.degree() != D) throw InternalError("norm polynomial is not monic of the expected degree");
  return N;
}

namespace detail {

/// Squarefree over Q, certified by a prime p where N stays squarefree mod p.
inline bool certified_squarefree(const IntPoly& N) {
  for (std::uint64_t p : primes_up_to(400)) {
    ModPoly a = ModPoly::from(N, Integer(static_cast<unsigned long>(p)));
    if (a.degree() != N.degree()) continue;
    if (gcd(a, a.derivative()).is_one()) return true;
  }
  return false;
}

}  // namespace detail

enum class RootSearch { root_found, no_root, inconclusive };

struct RootWitness {
  RootSearch outcome = RootSearch::inconclusive;
  long shift = 0;  // k in the norm of g(y - k theta)
  IntPoly norm;
  FactorSearchResult search;
};

/// Decides whether monic irreducible g has a root in K. g has a root in K
/// exactly when its norm (taken with a shift that keeps the norm squarefree)
/// has a rational factor of degree deg K.
inline RootWitness root_in_field(const NumberField& K, const IntPoly& g, const IrreducibilityEffort& effort = {}) {
  if (!g.is_monic() || g.degree() < 1) throw InputError("root search needs a monic polynomial of positive degree");
  RootWitness w;
  for (long k = 1; k <= 16; ++k) {
    IntPoly N = trager_norm(K.poly, g, k);
    if (!detail::certified_squarefree(N)) continue;
    w.shift = k;
    w.norm = N;
    const int n = K.degree;
    if (g.degree() == 1) {
      w.outcome = RootSearch::root_found;
      return w;
    }
    w.search = zassenhaus_search(N, [n](int d) { return d == n; }, effort);
    switch (w.search.outcome) {
      case FactorSearch::found: w.outcome = RootSearch::root_found; break;
      case FactorSearch::none: w.outcome = RootSearch::no_root; break;
      case FactorSearch::budget_exhausted: w.outcome = RootSearch::inconclusive; break;
    }
    return w;
  }
  return w;
}

enum class Isomorphism { isomorphic, not_isomorphic, inconclusive };

inline const char* to_string(Isomorphism v) {
  switch (v) {
    case Isomorphism::isomorphic: return "isomorphic";
    case Isomorphism::not_isomorphic: return "not_isomorphic";
    case Isomorphism::inconclusive: return "inconclusive";
  }
  return "?";
}

struct IsomorphismEvidence {
  Isomorphism verdict = Isomorphism::inconclusive;
  std::string reason;
  std::optional<RootWitness> root;
};

/// Fields of equal degree are isomorphic iff the defining polynomial of one
/// has a root in the other.
inline IsomorphismEvidence isomorphism_test(const NumberField& K, const NumberField& L, const IrreducibilityEffort& effort = {}) {
  if (K.degree != L.degree) return {Isomorphism::not_isomorphic, "degrees differ", std::nullopt};
  RootWitness w = root_in_field(K, L.poly, effort);
  IsomorphismEvidence ev;
  switch (w.outcome) {
    case RootSearch::root_found:
      ev.verdict = Isomorphism::isomorphic;
      ev.reason = L.poly.to_string() + " has a root in Q[x]/(" + K.poly.to_string() + ")";
      break;
    case RootSearch::no_root:
      ev.verdict = Isomorphism::not_isomorphic;
      ev.reason = L.poly.to_string() + " has no root in Q[x]/(" + K.poly.to_string() + ")";
      break;
    case RootSearch::inconclusive:
      ev.reason = "root search exhausted its budget";
      break;
  }
  ev.root = std::move(w);
  return ev;
}

}  // namespace bcinv
