#pragma once

#include <json.hpp>

#include "bcinv/equivalence.hpp"
#include "bcinv/numberfield.hpp"
#include "bcinv/rayclass.hpp"
#include "bcinv/spectrum.hpp"
#include "bcinv/zeta.hpp"

namespace bcinv::json {

using Json = nlohmann::ordered_json;

/// Exact integers: a JSON number when it fits in 64 bits, a decimal string otherwise.
inline Json integer(const Integer& z) {
  if (fits_int64(z)) return to_int64(z);
  return z.get_str();
}

template <class Range>
Json integers(const Range& r) {
  Json a = Json::array();
  for (const auto& z : r) a.push_back(integer(z));
  return a;
}

inline Json pairs(const std::vector<std::pair<int, int>>& ps) {
  Json a = Json::array();
  for (auto [e, f] : ps) a.push_back({e, f});
  return a;
}

inline Json field(const NumberField& k) {
  return {{"label", k.label},
          {"poly", k.poly.to_string()},
          {"degree", k.degree},
          {"disc", integer(k.disc)},
          {"irreducibility", k.irreducibility_asserted ? "asserted" : "certified"}};
}

inline Json prime(const PrimeIdeal& P) {
  return {{"p", integer(P.p)}, {"e", P.e}, {"f", P.f}, {"norm", integer(P.norm)}, {"generator", P.generator.to_string()}};
}

inline Json splitting(const SplittingType& st) {
  Json j = {{"p", integer(st.p)}, {"g", st.g}, {"pairs", pairs(st.pairs)}, {"p_maximal", st.p_maximal_certified}};
  Json ps = Json::array();
  for (const auto& P : st.primes) ps.push_back(prime(P));
  j["primes"] = std::move(ps);
  return j;
}

inline Json fingerprint(const SplittingFingerprint& fp) {
  Json entries = Json::array();
  for (const auto& [p, e] : fp.entries) entries.push_back({{"p", p}, {"g", e.g}, {"pairs", pairs(e.pairs)}, {"p_maximal", true}});
  return {{"bound", fp.bound}, {"entries", std::move(entries)}, {"skipped", fp.skipped}};
}

inline Json verdict(const EquivalenceVerdict& v) {
  Json j = {{"mode", to_string(v.mode)},
            {"result", v.agree ? "agree_to_bound" : "disagree"},
            {"bound", v.bound},
            {"witness", v.witness ? Json(*v.witness) : Json(nullptr)}};
  if (!v.agree) {
    j["detail"] = v.detail;
    j["first"] = {{"g", v.first->g}, {"pairs", pairs(v.first->pairs)}};
    j["second"] = {{"g", v.second->g}, {"pairs", pairs(v.second->pairs)}};
  }
  j["compared_primes"] = v.compared;
  j["excluded"] = v.excluded;
  j["caveat"] = v.caveat;
  return j;
}

inline Json chain(const RayClassChain& c) {
  Json h = Json::array(), units = Json::array();
  for (const auto& L : c.levels) {
    if (L.h) h.push_back(integer(*L.h));
    units.push_back(integer(L.local_unit_order));
  }
  Json j = {{"prime", prime(c.prime)},
            {"mode", c.mode == ChainMode::oracle ? "oracle" : "formula"},
            {"levels", static_cast<int>(c.levels.size()) - 1},
            {"h", std::move(h)},
            {"ratios", integers(c.ratios)},
            {"local_unit_orders", std::move(units)},
            {"asserted", c.asserted},
            {"certified", c.growth_certified}};
  if (c.mode == ChainMode::oracle) {
    j["enumeration_bound"] = c.enumeration_bound;
    j["class_number"] = c.class_number;
    j["discrepancies"] = c.discrepancies;
  }
  return j;
}

inline Json trace(const TraceRangeDescriptor& t) {
  Json j = {{"prime", prime(t.prime)}, {"label", t.label}, {"rational_prime", integer(t.p)}};
  if (t.chain) j["chain"] = chain(*t.chain);
  return j;
}

inline Json component(const Component& c) {
  return {{"index", c.index}, {"prime", {{"p", integer(c.prime.p)}, {"f", c.prime.f}, {"e", c.prime.e}, {"generator", c.prime.generator.to_string()}}},
          {"label", c.trace.label}};
}

inline Json universe(const PrimeUniverse& U) {
  Json ps = Json::array();
  for (std::size_t i = 0; i < U.primes.size(); ++i) {
    Json p = prime(U.primes[i]);
    p["index"] = i;
    ps.push_back(std::move(p));
  }
  return {{"bound", U.bound}, {"selection", U.by_norm ? "norm" : "rational_prime"}, {"primes", std::move(ps)}, {"skipped", U.skipped}};
}

inline Json point(const SpectrumPoint& S) {
  return {{"encoding", S.is_cofinite() ? "complement" : "members"},
          {"indices", S.encoded()},
          {"text", S.to_string()},
          {"size", S.size()},
          {"fiber", S.fiber()},
          {"stratum", to_string(classify(S))}};
}

inline Json euler(const EulerProduct& z) {
  return {{"s", z.s}, {"B", z.bound}, {"digits", z.digits}, {"prime_ideals", z.prime_ideals}, {"value", z.decimal()}};
}

inline Json zeta_comparison(const ZetaComparison& c) {
  Json j = {{"agree", c.agree}, {"N", c.N}, {"compared", c.compared}};
  if (!c.agree) j["first_disagreement"] = {{"n", c.n}, {"a_first", integer(c.a_first)}, {"a_second", integer(c.a_second)}};
  j["skipped"] = c.skipped;
  j["caveat"] = c.caveat;
  return j;
}

}  // namespace bcinv::json
