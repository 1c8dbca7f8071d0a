#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bcinv/numberfield.hpp"
#include "bcinv/poly_parse.hpp"
#include "bcinv/rayclass.hpp"

namespace bcinv {

/// A finite list of primes of K standing in for the infinite set of all primes.
struct PrimeUniverse {
  std::string label;
  IntPoly poly;
  std::uint64_t bound = 0;
  bool by_norm = true;  // primes of norm <= bound, or all primes over rational p <= bound
  std::vector<PrimeIdeal> primes;
  std::vector<std::uint64_t> skipped;  // rational primes left out as not p-maximal

  /// All primes of norm <= B; NotPMaximal propagates.
  static std::shared_ptr<const PrimeUniverse> up_to_norm(const NumberField& k, std::uint64_t B) {
    auto U = std::make_shared<PrimeUniverse>();
    U->label = k.label;
    U->poly = k.poly;
    U->bound = B;
    U->primes = prime_ideals_up_to(k, B);
    return U;
  }

  /// All primes above rational p <= B, whatever their norm. Non-maximal p are
  /// recorded in `skipped` rather than raised.
  static std::shared_ptr<const PrimeUniverse> over_rational_primes(const NumberField& k, std::uint64_t B) {
    if (B < 2) throw InputError("prime bound must be at least 2");
    auto U = std::make_shared<PrimeUniverse>();
    U->label = k.label;
    U->poly = k.poly;
    U->bound = B;
    U->by_norm = false;
    for (std::uint64_t p : primes_up_to(B)) {
      try {
        for (auto& P : split_prime(k, Integer(static_cast<unsigned long>(p))).primes) U->primes.push_back(std::move(P));
      } catch (const NotPMaximal&) {
        U->skipped.push_back(p);
      }
    }
    std::sort(U->primes.begin(), U->primes.end());
    return U;
  }

  friend bool operator==(const PrimeUniverse& a, const PrimeUniverse& b) {
    return a.poly == b.poly && a.bound == b.bound && a.by_norm == b.by_norm && a.primes == b.primes;
  }
};

using UniversePtr = std::shared_ptr<const PrimeUniverse>;

enum class Stratum { maximal, second_maximal, other };

inline const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::maximal: return "maximal";
    case Stratum::second_maximal: return "second_maximal";
    case Stratum::other: return "other";
  }
  return "?";
}

/// A stratum S of the truncated prime set. Stored canonically: as a list of
/// member indices, or as the list of excluded indices when that is shorter.
/// The fiber label stands for a character of the fiber group, never computed.
class SpectrumPoint {
 public:
  static SpectrumPoint finite(UniversePtr U, std::vector<std::size_t> members, std::string fiber = "gamma") {
    return SpectrumPoint(std::move(U), false, std::move(members), std::move(fiber));
  }
  static SpectrumPoint cofinite(UniversePtr U, std::vector<std::size_t> complement, std::string fiber = "gamma") {
    return SpectrumPoint(std::move(U), true, std::move(complement), std::move(fiber));
  }
  static SpectrumPoint full(UniversePtr U, std::string fiber = "gamma") { return cofinite(std::move(U), {}, std::move(fiber)); }
  static SpectrumPoint empty(UniversePtr U, std::string fiber = "gamma") { return finite(std::move(U), {}, std::move(fiber)); }
  static SpectrumPoint all_but(UniversePtr U, std::size_t i, std::string fiber = "gamma") { return cofinite(std::move(U), {i}, std::move(fiber)); }
  static SpectrumPoint from_mask(UniversePtr U, const std::vector<bool>& in, std::string fiber = "gamma") {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i]) idx.push_back(i);
    return finite(std::move(U), std::move(idx), std::move(fiber));
  }

  const UniversePtr& universe() const { return U_; }
  bool is_cofinite() const { return cofinite_; }
  /// Encoded indices: members, or excluded primes when is_cofinite().
  const std::vector<std::size_t> &encoded() const { return idx_; }
  const std::string& fiber() const { return fiber_; }
  std::size_t size() const { return cofinite_ ? U_->primes.size() - idx_.size() : idx_.size(); }

  bool has(std::size_t i) const { return std::binary_search(idx_.begin(), idx_.end(), i) != cofinite_; }

  std::vector<bool> mask() const {
    std::vector<bool> m(U_->primes.size(), cofinite_);
    for (auto i : idx_) m[i] = !cofinite_;
    return m;
  }

  friend bool operator==(const SpectrumPoint& a, const SpectrumPoint& b) {
    return a.cofinite_ == b.cofinite_ && a.idx_ == b.idx_ && a.fiber_ == b.fiber_ && same_universe(a, b);
  }
  friend bool operator<(const SpectrumPoint& a, const SpectrumPoint& b) {
    return std::tie(a.cofinite_, a.idx_, a.fiber_) < std::tie(b.cofinite_, b.idx_, b.fiber_);
  }

  /// "{0,2}" for a member list, "~{1}" for an excluded list.
  std::string to_string() const {
    std::string s = cofinite_ ? "~{" : "{";
    for (std::size_t i = 0; i < idx_.size(); ++i) s += (i ? "," : "") + std::to_string(idx_[i]);
    return s + "}";
  }

  friend bool same_universe(const SpectrumPoint& a, const SpectrumPoint& b) { return a.U_ == b.U_ || *a.U_ == *b.U_; }

 private:
  UniversePtr U_;
  bool cofinite_ = false;
  std::vector<std::size_t> idx_;
  std::string fiber_;

  SpectrumPoint(UniversePtr U, bool cof, std::vector<std::size_t> idx, std::string fiber)
      : U_(std::move(U)), cofinite_(cof), idx_(std::move(idx)), fiber_(std::move(fiber)) {
    if (!U_) throw InputError("spectrum point needs a universe");
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
    const std::size_t n = U_->primes.size();
    if (!idx_.empty() && idx_.back() >= n)
      throw InputError("prime index " + std::to_string(idx_.back()) + " outside a universe of " + std::to_string(n) + " primes");
    // Canonical form: the excluded list is used iff it is strictly shorter.
    const bool want_cof = cofinite_ ? idx_.size() < n - idx_.size() : n - idx_.size() < idx_.size();
    if (want_cof != cofinite_) {
      std::vector<std::size_t> other;
      for (std::size_t i = 0, j = 0; i < n; ++i) {
        if (j < idx_.size() && idx_[j] == i) ++j;
        else other.push_back(i);
      }
      idx_ = std::move(other);
      cofinite_ = want_cof;
    }
  }
};

/// Parses "all", "none", "{0,2}" or "~{1}" (indices into the universe).
inline SpectrumPoint parse_stratum(const UniversePtr& U, std::string_view text) {
  std::string t = detail::strip_for_parse(text);
  if (t == "all") return SpectrumPoint::full(U);
  if (t == "none") return SpectrumPoint::empty(U);
  bool cof = false;
  if (!t.empty() && t.front() == '~') {
    cof = true;
    t.erase(0, 1);
  }
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw InputError("stratum must be all, none, {i,...} or ~{i,...}: '" + std::string(text) + "'");
  std::vector<std::size_t> idx;
  std::string body = t.substr(1, t.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t end = body.find(',', pos);
    if (end == std::string::npos) end = body.size();
    std::string tok = body.substr(pos, end - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
      throw InputError("bad prime index '" + tok + "' in stratum");
    idx.push_back(std::stoul(tok));
    pos = end + 1;
  }
  return cof ? SpectrumPoint::cofinite(U, idx) : SpectrumPoint::finite(U, idx);
}

/// S subset of T, for strata over one universe with one fiber label.
inline bool contains(const SpectrumPoint& S, const SpectrumPoint& T) {
  if (!same_universe(S, T)) throw InputError("strata belong to different prime universes");
  if (S.fiber() != T.fiber()) throw InputError("strata carry different fiber labels");
  const auto& a = S.encoded();
  const auto& b = T.encoded();
  if (!S.is_cofinite() && !T.is_cofinite()) return std::includes(b.begin(), b.end(), a.begin(), a.end());
  if (S.is_cofinite() && T.is_cofinite()) return std::includes(a.begin(), a.end(), b.begin(), b.end());
  if (!S.is_cofinite()) {
    for (auto i : a)
      if (std::binary_search(b.begin(), b.end(), i)) return false;
    return true;
  }
  // S given by exclusions, T by members: every non-excluded index must be in T.
  if (S.size() > T.size()) return false;
  for (std::size_t i = 0; i < S.universe()->primes.size(); ++i)
    if (S.has(i) && !T.has(i)) return false;
  return true;
}

inline Stratum classify(const SpectrumPoint& S) {
  const std::size_t n = S.universe()->primes.size();
  if (S.size() == n) return Stratum::maximal;
  if (S.size() + 1 == n) return Stratum::second_maximal;
  return Stratum::other;
}

/// Representable strata containing S: S itself, every all-but-one-prime
/// stratum above it, and the full set.
inline std::vector<SpectrumPoint> closure(const SpectrumPoint& S) {
  const UniversePtr& U = S.universe();
  std::vector<SpectrumPoint> out{S};
  for (std::size_t q = 0; q < U->primes.size(); ++q) {
    SpectrumPoint T = SpectrumPoint::all_but(U, q, S.fiber());
    if (contains(S, T)) out.push_back(T);
  }
  out.push_back(SpectrumPoint::full(U, S.fiber()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Component {
  std::size_t index = 0;
  PrimeIdeal prime;
  TraceRangeDescriptor trace;
};

/// One component per prime of the universe, labeled by its trace range.
inline std::vector<Component> components_of_I2(const UniversePtr& U) {
  std::vector<Component> out;
  for (std::size_t i = 0; i < U->primes.size(); ++i) out.push_back({i, U->primes[i], trace_range(U->primes[i])});
  return out;
}

/// Number of components labeled Z[1/p] for each rational p present.
inline std::map<Integer, int> count_components_by_label(const std::vector<Component>& comps) {
  std::map<Integer, int> out;
  for (const auto& c : comps) ++out[c.trace.p];
  return out;
}

}  // namespace bcinv
