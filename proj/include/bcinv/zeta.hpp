#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcinv/numberfield.hpp"
#include "bcinv/parallel.hpp"
#include "bcinv/real.hpp"

namespace bcinv {

struct ZetaOptions {
  int digits = kDefaultDigits;
  unsigned jobs = 1;
};

struct EulerProduct {
  std::string s;
  std::uint64_t bound = 0;
  int digits = 0;
  std::size_t prime_ideals = 0;
  Real value{64};

  std::string decimal() const { return value.to_decimal(digits); }
};

/// Product over prime ideals of norm <= B of (1 - N(P)^-s)^-1.
inline EulerProduct euler_product(const NumberField& k, std::string_view s, std::uint64_t bound,
                                  const ZetaOptions& opt = {}) {
  const mpfr_prec_t bits = bits_for_digits(opt.digits);
  const Real sv = Real::from_string(s, bits);
  const Real one = Real::from_integer(1, bits);
  if (cmp(sv, one) <= 0) throw InputError("s must exceed 1, got " + std::string(s));

  struct Local {
    Real factor;
    std::size_t count;
  };
  const std::vector<std::uint64_t> ps = bound >= 2 ? primes_up_to(bound) : std::vector<std::uint64_t>{};
  auto locals = parallel_map<std::optional<Local>>(ps.size(), opt.jobs, [&](std::size_t i) {
    Local l{one, 0};
    for (const auto& P : split_prime(k, Integer(static_cast<unsigned long>(ps[i]))).primes) {
      if (P.norm > Integer(static_cast<unsigned long>(bound))) continue;
      l.factor = l.factor / (one - one / Real::pow(P.norm, sv));
      ++l.count;
    }
    return std::optional<Local>(std::move(l));
  });

  EulerProduct out{std::string(s), bound, opt.digits, 0, one};
  for (const auto& l : locals) {  // fixed order: increasing p
    out.value = out.value * l->factor;
    out.prime_ideals += l->count;
  }
  return out;
}

namespace detail {

/// Coefficients of prod_i (1 - t^{f_i})^-1 up to t^K.
inline std::vector<Integer> local_series(const SplittingType& st, int K) {
  std::vector<Integer> c(static_cast<std::size_t>(K) + 1, 0);
  c[0] = 1;
  for (auto [e, f] : st.pairs)
    for (int j = f; j <= K; ++j) c[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(j - f)];
  return c;
}

inline std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= n; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

}  // namespace detail

/// a_n for n in [1, N] where primes in `skipped` left some a_n undetermined.
struct IdealCounts {
  std::uint64_t N = 0;
  std::vector<Integer> a;          // a[0] unused
  std::vector<bool> known;         // known[n] false iff n has a skipped prime factor
  std::vector<std::uint64_t> skipped;
};

/// Ideal counts built multiplicatively from the local factors. With
/// `tolerate_skipped`, primes where Z[theta] is not maximal are recorded and
/// every a_n they touch is left unknown; otherwise NotPMaximal propagates.
inline IdealCounts ideal_counts(const NumberField& k, std::uint64_t N, unsigned jobs = 1,
                                bool tolerate_skipped = false) {
  if (N < 1) throw InputError("coefficient bound must be at least 1");
  const std::vector<std::uint64_t> ps = N >= 2 ? primes_up_to(N) : std::vector<std::uint64_t>{};
  auto series = parallel_map<std::optional<std::vector<Integer>>>(ps.size(), jobs, [&](std::size_t i) {
    const std::uint64_t p = ps[i];
    int K = 0;
    for (std::uint64_t q = p; q <= N; q *= p) {
      ++K;
      if (q > N / p) break;
    }
    try {
      return std::optional(detail::local_series(split_prime(k, Integer(static_cast<unsigned long>(p))), K));
    } catch (const NotPMaximal&) {
      if (!tolerate_skipped) throw;
      return std::optional<std::vector<Integer>>();
    }
  });

  std::vector<std::int64_t> index(N + 1, -1);
  for (std::size_t i = 0; i < ps.size(); ++i) index[ps[i]] = static_cast<std::int64_t>(i);
  const auto spf = detail::smallest_prime_factors(N);

  IdealCounts out;
  out.N = N;
  out.a.assign(N + 1, 0);
  out.known.assign(N + 1, true);
  out.known[0] = false;
  out.a[1] = 1;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!series[i]) out.skipped.push_back(ps[i]);
  for (std::uint64_t n = 2; n <= N; ++n) {
    const std::uint64_t p = spf[n];
    std::uint64_t m = n;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    const auto& s = series[static_cast<std::size_t>(index[p])];
    if (!s || !out.known[m]) {
      out.known[n] = false;
      continue;
    }
    out.a[n] = out.a[m] * (*s)[static_cast<std::size_t>(e)];
  }
  return out;
}

/// a_1..a_N; requires every p <= N to be p-maximal.
inline std::vector<Integer> ideal_count_coefficients(const NumberField& k, std::uint64_t N, unsigned jobs = 1) {
  auto c = ideal_counts(k, N, jobs, false);
  return {c.a.begin() + 1, c.a.end()};
}

struct ZetaComparison {
  bool agree = true;
  std::uint64_t N = 0;
  std::uint64_t compared = 0;
  std::uint64_t n = 0;  // first disagreement
  Integer a_first, a_second;
  std::vector<std::uint64_t> skipped;  // only in partial comparisons
  std::string caveat;
};

namespace detail {

inline ZetaComparison compare_counts(const IdealCounts& a, const IdealCounts& b) {
  ZetaComparison r;
  r.N = a.N;
  for (auto v : {&a.skipped, &b.skipped})
    for (auto p : *v)
      if (std::find(r.skipped.begin(), r.skipped.end(), p) == r.skipped.end()) r.skipped.push_back(p);
  std::sort(r.skipped.begin(), r.skipped.end());
  for (std::uint64_t n = 1; n <= a.N; ++n) {
    if (!a.known[n] || !b.known[n]) continue;
    ++r.compared;
    if (a.a[n] != b.a[n]) {
      r.agree = false;
      r.n = n;
      r.a_first = a.a[n];
      r.a_second = b.a[n];
      break;
    }
  }
  if (r.agree) {
    r.caveat = "coefficients agree for n <= " + std::to_string(a.N) +
               "; finite agreement is evidence of equal zeta functions, not a proof";
    if (!r.skipped.empty()) r.caveat += " (n divisible by a skipped prime not compared)";
  } else {
    r.caveat = "coefficients differ, so the zeta functions differ";
  }
  return r;
}

}  // namespace detail

/// Exact comparison of a_n for n <= N. NotPMaximal propagates.
inline ZetaComparison zeta_equal_up_to(const NumberField& a, const NumberField& b, std::uint64_t N, unsigned jobs = 1) {
  return detail::compare_counts(ideal_counts(a, N, jobs, false), ideal_counts(b, N, jobs, false));
}

/// As zeta_equal_up_to, but compares only n free of primes where either
/// order is not maximal; those primes are listed in `skipped`.
inline ZetaComparison zeta_equal_up_to_partial(const NumberField& a, const NumberField& b, std::uint64_t N,
                                               unsigned jobs = 1) {
  return detail::compare_counts(ideal_counts(a, N, jobs, true), ideal_counts(b, N, jobs, true));
}

}  // namespace bcinv
