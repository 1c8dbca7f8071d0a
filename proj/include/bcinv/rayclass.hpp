#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bcinv/numberfield.hpp"
#include "bcinv/parallel.hpp"
#include "bcinv/quadratic.hpp"

namespace bcinv {

/// |(O/P^m)^*|: 1 at m = 0 (the zero ring), else (p^f - 1) p^{f(m-1)}.
inline Integer local_unit_order(const PrimeIdeal& P, int m) {
  if (m < 0) throw InputError("level must be non-negative");
  if (m == 0) return 1;
  return (P.norm - 1) * ipow(P.norm, static_cast<unsigned long>(m - 1));
}

/// Orders of U^(m)/U^(m+1) for m = 0..M: p^f - 1, then p^f.
inline std::vector<Integer> local_unit_filtration(const PrimeIdeal& P, int M) {
  if (M < 0) throw InputError("level must be non-negative");
  std::vector<Integer> out{P.norm - 1};
  for (int m = 1; m <= M; ++m) out.push_back(P.norm);
  return out;
}

inline std::string localization_label(const Integer& p) { return "Z[1/" + p.get_str() + "]"; }

struct RayOracleOptions {
  std::uint64_t bound = 0;  // 0 picks a bound automatically and doubles until saturated
  std::uint64_t max_bound = std::uint64_t(1) << 23;
  unsigned jobs = 1;
};

/// Orders h_m = [J^P : P^{P^m}] for m = 0..M from one enumeration.
struct RayOracleRun {
  std::vector<Integer> h;
  std::uint64_t bound = 0;        // every class is hit by an ideal of norm <= bound
  std::uint64_t ideals = 0;       // ideals enumerated up to 2 * bound
  std::size_t class_number = 1;   // ordinary class number
  std::vector<std::size_t> unit_image;  // |image of units in signs x (O/P^m)^*| per level
};

namespace detail {

/// O/P^m for a prime P of Q or a quadratic field with O = Z[theta].
struct ResidueRing {
  enum Kind { zero, scalar, quadratic } kind = zero;
  std::int64_t M = 1, r = 0, s = 0, t = 0;
  using Elt = std::array<std::int64_t, 2>;

  Elt one() const { return kind == zero ? Elt{0, 0} : Elt{1 % M, 0}; }
  Elt map(const Integer& a, const Integer& b) const {
    if (kind == zero) return {0, 0};
    const Integer Mz = M;
    const std::int64_t am = to_int64(mod_floor(a, Mz)), bm = to_int64(mod_floor(b, Mz));
    if (kind == scalar) return {mod64(static_cast<i128>(am) + static_cast<i128>(bm) * r, M), 0};
    return {am, bm};
  }
  Elt map(const QuadElement& x) const {
    if (kind == zero) return {0, 0};
    if (kind == scalar) return {mod64(static_cast<i128>(mod64(x.a, M)) + static_cast<i128>(mod64(x.b, M)) * r, M), 0};
    return {mod64(x.a, M), mod64(x.b, M)};
  }
  Elt mul(const Elt& x, const Elt& y) const {
    if (kind == zero) return {0, 0};
    if (kind == scalar) return {mod64(static_cast<i128>(x[0]) * y[0], M), 0};
    const i128 bb = static_cast<i128>(x[1]) * y[1] % M;
    return {mod64(static_cast<i128>(x[0]) * y[0] - t * bb, M),
            mod64(static_cast<i128>(x[0]) * y[1] + static_cast<i128>(x[1]) * y[0] - s * bb, M)};
  }
};

using RayKey = std::array<std::int64_t, 4>;  // class, sign bits, residue

struct UnitImage {
  ResidueRing ring;
  std::vector<std::pair<std::int64_t, ResidueRing::Elt>> elems;  // (sign bits, residue)

  RayKey canonical(std::int64_t cls, std::int64_t signs, const ResidueRing::Elt& x) const {
    RayKey best{cls, INT64_MAX, 0, 0};
    for (const auto& [hs, hr] : elems) {
      auto y = ring.mul(x, hr);
      RayKey k{cls, signs ^ hs, y[0], y[1]};
      if (k < best) best = k;
    }
    return best;
  }
};

inline UnitImage unit_image(const ResidueRing& ring, const std::vector<std::pair<std::int64_t, ResidueRing::Elt>>& gens) {
  UnitImage U{ring, {{0, ring.one()}}};
  std::set<std::pair<std::int64_t, ResidueRing::Elt>> seen(U.elems.begin(), U.elems.end());
  for (std::size_t i = 0; i < U.elems.size(); ++i) {
    for (const auto& [gs, gr] : gens) {
      std::pair<std::int64_t, ResidueRing::Elt> n{U.elems[i].first ^ gs, ring.mul(U.elems[i].second, gr)};
      if (seen.insert(n).second) U.elems.push_back(n);
    }
  }
  std::sort(U.elems.begin(), U.elems.end());
  return U;
}

inline std::int64_t hensel_root(const IntPoly& f, std::int64_t r0, std::int64_t p, std::int64_t M) {
  Integer r = r0, q = p;
  const Integer Mz = M;
  while (q < Mz) {
    q *= q;
    const Integer mod = q < Mz ? q : Mz;
    r = mod_floor(r - f.eval(r) * mod_inverse(f.derivative().eval(r), mod), mod);
  }
  return to_int64(mod_floor(r, Mz));
}

struct LevelTally {
  std::vector<RayKey> below;  // keys of ideals of norm <= bound
  std::vector<RayKey> all;
};

inline void sort_unique(std::vector<RayKey>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Brute-force orders of J^P / P^{P^m} for m = 0..M, for K = Q or a quadratic
/// field with O_K = Z[theta]. Saturation is checked by doubling the bound.
inline RayOracleRun ray_class_orders(const NumberField& k, const PrimeIdeal& P, int M, const RayOracleOptions& opt = {}) {
  using detail::ResidueRing;
  using detail::RayKey;
  if (M < 0) throw InputError("level must be non-negative");
  if (k.degree > 2) throw UnsupportedField("ray class oracle supports Q and quadratic fields only (degree " + std::to_string(k.degree) + ")");
  if (P.e > 1 && M > 1) throw UnsupportedField("ray class oracle supports ramified primes only up to level 1; use formula mode");
  if (!fits_int64(P.norm) || M > 60) throw UnsupportedField("prime or level too large for the oracle");

  const std::int64_t p = to_int64(P.p);
  std::vector<std::int64_t> pm{1};
  for (int m = 1; m <= M; ++m) {
    if (pm.back() > (INT64_MAX / 4) / p) throw UnsupportedField("p^m exceeds the oracle's integer range");
    pm.push_back(pm.back() * p);
  }

  // Per-level residue rings and unit images.
  std::optional<QuadraticField> qf;
  if (k.degree == 2) qf.emplace(k);
  std::vector<ResidueRing> rings;
  for (int m = 0; m <= M; ++m) {
    ResidueRing R;
    if (m > 0) {
      R.M = pm[static_cast<std::size_t>(m)];
      if (k.degree == 1 || P.f == 1) {
        R.kind = ResidueRing::scalar;
        if (k.degree == 2) {
          const std::int64_t r0 = detail::mod64(-to_int64(P.generator.coeff(0)), p);
          R.r = P.e == 1 ? detail::hensel_root(k.poly, r0, p, R.M) : r0;
        }
      } else {
        R.kind = ResidueRing::quadratic;
        R.s = qf->s();
        R.t = qf->t();
      }
    }
    rings.push_back(R);
  }
  std::vector<detail::UnitImage> images;
  std::vector<BigQuadElement> units = qf ? qf->unit_generators() : std::vector<BigQuadElement>{{-1, 0}};
  const bool real = !qf || qf->real();
  auto sign_bits = [&](const BigQuadElement& u) -> std::int64_t {
    if (!qf) return u.a < 0 ? 3 : 0;
    if (!real) return 0;
    return (qf->sign(u, 0) < 0 ? 1 : 0) | (qf->sign(u, 1) < 0 ? 2 : 0);
  };
  for (const auto& R : rings) {
    std::vector<std::pair<std::int64_t, ResidueRing::Elt>> gens;
    for (const auto& u : units) gens.emplace_back(sign_bits(u), R.map(u.a, u.b));
    images.push_back(detail::unit_image(R, gens));
  }

  QuadraticField::ClassGroup cg;
  QuadIdeal Pform;
  if (qf) {
    cg = qf->class_group_coprime_to(p);
    Pform = qf->prime_ideal(P);
  }
  const std::size_t h_ord = qf ? cg.size() : 1;

  RayOracleRun run;
  run.class_number = h_ord;
  for (const auto& U : images) run.unit_image.push_back(U.elems.size());

  // At least four ideals per class on average before trusting saturation.
  const Integer upper = Integer(static_cast<unsigned long>(h_ord)) * local_unit_order(P, M) * (real ? 4 : 1);
  std::uint64_t X = opt.bound;
  if (X == 0) X = std::max<std::uint64_t>(64, upper.fits_ulong_p() ? 4 * upper.get_ui() : opt.max_bound);
  const bool automatic = opt.bound == 0;

  for (;;) {
    if (X > opt.max_bound) throw SaturationFailure("ray class enumeration did not saturate below norm bound " + std::to_string(opt.max_bound));
    const std::uint64_t X2 = 2 * X;
    std::vector<QuadIdeal> ideals;
    if (qf) {
      std::vector<QuadIdeal> primes;
      for (const auto& [Q, I] : qf->primes_up_to(static_cast<std::int64_t>(X2)))
        if (!(I == Pform)) primes.push_back(I);
      qf->for_each_ideal(primes, static_cast<std::int64_t>(X2), [&](const QuadIdeal& I) { ideals.push_back(I); });
    } else {
      for (std::uint64_t n = 1; n <= X2; ++n)
        if (n % static_cast<std::uint64_t>(p) != 0) ideals.push_back({static_cast<std::int64_t>(n), 0, 1});
    }
    run.ideals = ideals.size();

    constexpr std::size_t chunk = 4096;
    const std::size_t nchunks = (ideals.size() + chunk - 1) / chunk;
    auto tallies = parallel_map<std::vector<detail::LevelTally>>(nchunks, opt.jobs, [&](std::size_t c) {
      std::vector<detail::LevelTally> t(static_cast<std::size_t>(M) + 1);
      const std::size_t lo = c * chunk, hi = std::min(ideals.size(), lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) {
        const QuadIdeal& I = ideals[i];
        std::int64_t cls = 0, signs = 0;
        QuadElement alpha{I.A, 0};
        if (qf) {
          cls = qf->class_index(cg.reps, I, &alpha);
          if (cls < 0) throw InternalError("ideal in no class: class group representatives incomplete");
          if (real) signs = (qf->sign(alpha, 0) < 0 ? 1 : 0) | (qf->sign(alpha, 1) < 0 ? 2 : 0);
        }
        for (int m = 0; m <= M; ++m) {
          const auto& U = images[static_cast<std::size_t>(m)];
          RayKey key = U.canonical(cls, signs, U.ring.map(alpha));
          auto& lt = t[static_cast<std::size_t>(m)];
          if (static_cast<std::uint64_t>(I.norm()) <= X) lt.below.push_back(key);
          lt.all.push_back(key);
        }
      }
      for (auto& lt : t) {
        detail::sort_unique(lt.below);
        detail::sort_unique(lt.all);
      }
      return t;
    });

    bool saturated = true;
    run.h.clear();
    for (int m = 0; m <= M; ++m) {
      std::vector<RayKey> below, all;
      for (const auto& t : tallies) {
        const auto& lt = t[static_cast<std::size_t>(m)];
        below.insert(below.end(), lt.below.begin(), lt.below.end());
        all.insert(all.end(), lt.all.begin(), lt.all.end());
      }
      detail::sort_unique(below);
      detail::sort_unique(all);
      if (below.size() != all.size()) saturated = false;
      run.h.emplace_back(static_cast<unsigned long>(below.size()));
    }
    if (saturated) {
      run.bound = X;
      return run;
    }
    if (!automatic)
      throw SaturationFailure("class count still growing between norm bounds " + std::to_string(X) + " and " + std::to_string(X2));
    X *= 2;
  }
}

/// h_m = [J^P : P^{P^m}] for a single level.
inline Integer ray_class_oracle(const NumberField& k, const PrimeIdeal& P, int m, const RayOracleOptions& opt = {}) {
  return ray_class_orders(k, P, m, opt).h.back();
}

enum class ChainMode { oracle, formula };

struct RayLevel {
  int m = 0;
  std::optional<Integer> h;
  Integer local_unit_order;
};

struct RayClassChain {
  PrimeIdeal prime;
  ChainMode mode = ChainMode::formula;
  std::vector<RayLevel> levels;
  std::vector<Integer> ratios;  // h_{m+1}/h_m for m >= 1
  bool asserted = false;
  bool growth_certified = false;
  std::vector<std::string> discrepancies;
  std::uint64_t enumeration_bound = 0;
  std::size_t class_number = 0;
};

/// The index chain h_0..h_M. Oracle mode computes every h_m and checks the
/// ratios against p^f; formula mode asserts the ratios without computing h.
inline RayClassChain chain(const NumberField& k, const PrimeIdeal& P, int M, ChainMode mode, const RayOracleOptions& opt = {}) {
  if (M < 0) throw InputError("level must be non-negative");
  RayClassChain c;
  c.prime = P;
  c.mode = mode;
  for (int m = 0; m <= M; ++m) c.levels.push_back({m, std::nullopt, local_unit_order(P, m)});
  if (mode == ChainMode::formula) {
    for (int m = 1; m < M; ++m) c.ratios.push_back(P.norm);
    c.asserted = true;
    c.growth_certified = false;
    return c;
  }
  RayOracleRun run = ray_class_orders(k, P, M, opt);
  c.enumeration_bound = run.bound;
  c.class_number = run.class_number;
  for (int m = 0; m <= M; ++m) c.levels[static_cast<std::size_t>(m)].h = run.h[static_cast<std::size_t>(m)];
  for (int m = 1; m <= M; ++m) {
    if (run.h[static_cast<std::size_t>(m)] % run.h[0] != 0)
      c.discrepancies.push_back("h_0 = " + run.h[0].get_str() + " does not divide h_" + std::to_string(m) + " = " +
                                run.h[static_cast<std::size_t>(m)].get_str());
  }
  for (int m = 1; m < M; ++m) {
    const Integer& a = run.h[static_cast<std::size_t>(m)];
    const Integer& b = run.h[static_cast<std::size_t>(m + 1)];
    if (b % a != 0) throw InternalError("non-integral index h_" + std::to_string(m + 1) + "/h_" + std::to_string(m));
    Integer r = b / a;
    if (r != P.norm)
      c.discrepancies.push_back("h_" + std::to_string(m + 1) + "/h_" + std::to_string(m) + " = " + r.get_str() +
                                ", expected p^f = " + P.norm.get_str());
    c.ratios.push_back(std::move(r));
  }
  c.growth_certified = c.discrepancies.empty();
  return c;
}

struct TraceRangeDescriptor {
  PrimeIdeal prime;
  Integer p;
  std::string label;
  std::optional<RayClassChain> chain;

  /// Z[1/p] and Z[1/q] are isomorphic exactly when p = q.
  friend bool operator==(const TraceRangeDescriptor& a, const TraceRangeDescriptor& b) { return a.p == b.p; }
};

inline TraceRangeDescriptor trace_range(const PrimeIdeal& P, std::optional<RayClassChain> evidence = std::nullopt) {
  return {P, P.p, localization_label(P.p), std::move(evidence)};
}

}  // namespace bcinv
