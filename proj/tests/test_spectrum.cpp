#include <gtest/gtest.h>

#include <random>

#include "bcinv/equivalence.hpp"
#include "bcinv/poly_parse.hpp"
#include "bcinv/spectrum.hpp"

using namespace bcinv;

namespace {

NumberField F(const char* poly) { return NumberField::make(parse_poly(poly)); }

// Plain subset test on membership masks, independent of the encoding.
bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

SpectrumPoint random_point(const UniversePtr& U, std::mt19937_64& rng) {
  const std::size_t n = U->primes.size();
  switch (rng() % 6) {
    case 0: return SpectrumPoint::full(U);
    case 1: return SpectrumPoint::empty(U);
    case 2: return SpectrumPoint::all_but(U, rng() % n);
    default: {
      std::vector<bool> m(n);
      const unsigned density = static_cast<unsigned>(rng() % 5);
      for (std::size_t i = 0; i < n; ++i) m[i] = (rng() % 4) < density;
      return SpectrumPoint::from_mask(U, m);
    }
  }
}

}  // namespace

TEST(Spectrum, ContainsExamples) {
  auto U = PrimeUniverse::up_to_norm(F("x^2+1"), 13);
  ASSERT_EQ(U->primes.size(), 6U);  // norms 2 5 5 9 13 13
  EXPECT_TRUE(contains(SpectrumPoint::empty(U), SpectrumPoint::finite(U, {1})));
  EXPECT_TRUE(contains(SpectrumPoint::all_but(U, 2), SpectrumPoint::full(U)));
  EXPECT_FALSE(contains(SpectrumPoint::all_but(U, 1), SpectrumPoint::all_but(U, 2)));
  EXPECT_FALSE(contains(SpectrumPoint::full(U), SpectrumPoint::all_but(U, 0)));
}

TEST(Spectrum, RejectsForeignUniverseAndFiber) {
  auto U = PrimeUniverse::up_to_norm(F("x^2+1"), 13);
  auto V = PrimeUniverse::up_to_norm(F("x^2+x+1"), 13);
  auto U2 = PrimeUniverse::up_to_norm(F("x^2+1"), 13);
  EXPECT_THROW(contains(SpectrumPoint::empty(U), SpectrumPoint::full(V)), InputError);
  EXPECT_TRUE(contains(SpectrumPoint::empty(U), SpectrumPoint::full(U2)));
  EXPECT_THROW(contains(SpectrumPoint::empty(U, "a"), SpectrumPoint::full(U, "b")), InputError);
  EXPECT_THROW(SpectrumPoint::finite(U, {6}), InputError);
}

TEST(Spectrum, CanonicalEncoding) {
  auto U = PrimeUniverse::up_to_norm(F("x-1"), 13);  // 2 3 5 7 11 13
  ASSERT_EQ(U->primes.size(), 6U);
  auto a = SpectrumPoint::finite(U, {0, 1, 2, 3, 4});
  EXPECT_TRUE(a.is_cofinite());
  EXPECT_EQ(a, SpectrumPoint::all_but(U, 5));
  EXPECT_EQ(SpectrumPoint::finite(U, {0, 1, 2, 3, 4, 5}), SpectrumPoint::full(U));
  EXPECT_EQ(SpectrumPoint::cofinite(U, {0, 1, 2, 3}), SpectrumPoint::finite(U, {4, 5}));
  auto tie = SpectrumPoint::finite(U, {0, 1, 2});
  EXPECT_FALSE(tie.is_cofinite());
  EXPECT_EQ(SpectrumPoint::cofinite(U, {3, 4, 5}), tie);
  EXPECT_EQ(parse_stratum(U, "~{5}"), a);
  EXPECT_EQ(parse_stratum(U, " { 4 , 5 } "), SpectrumPoint::finite(U, {4, 5}));
  EXPECT_EQ(parse_stratum(U, "all"), SpectrumPoint::full(U));
  EXPECT_EQ(parse_stratum(U, "{}"), SpectrumPoint::empty(U));
  EXPECT_THROW(parse_stratum(U, "{a}"), InputError);
  EXPECT_THROW(parse_stratum(U, "4,5"), InputError);
}

TEST(Spectrum, Classify) {
  auto U = PrimeUniverse::up_to_norm(F("x^2+1"), 13);
  EXPECT_EQ(classify(SpectrumPoint::full(U)), Stratum::maximal);
  EXPECT_EQ(classify(SpectrumPoint::all_but(U, 3)), Stratum::second_maximal);
  EXPECT_EQ(classify(SpectrumPoint::empty(U)), Stratum::other);
  EXPECT_EQ(classify(SpectrumPoint::cofinite(U, {0, 1})), Stratum::other);
}

TEST(Spectrum, Closure) {
  auto U = PrimeUniverse::up_to_norm(F("x^2+1"), 13);
  const std::size_t n = U->primes.size();
  auto full = SpectrumPoint::full(U);
  EXPECT_EQ(closure(full), std::vector<SpectrumPoint>{full});
  auto sm = SpectrumPoint::all_but(U, 1);
  auto c = closure(sm);
  EXPECT_EQ(c.size(), 2U);
  EXPECT_NE(std::find(c.begin(), c.end(), sm), c.end());
  EXPECT_NE(std::find(c.begin(), c.end(), full), c.end());
  EXPECT_EQ(closure(SpectrumPoint::empty(U)).size(), n + 2);
  auto two = SpectrumPoint::finite(U, {0, 3});
  EXPECT_EQ(closure(two).size(), (n - 2) + 2);
  for (const auto& T : closure(two)) EXPECT_TRUE(contains(two, T));
}

TEST(Spectrum, PartialOrderOnRandomTriples) {
  auto U = PrimeUniverse::up_to_norm(F("x^2+5"), 60);
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 20000; ++trial) {
    auto a = random_point(U, rng), b = random_point(U, rng), c = random_point(U, rng);
    const auto ma = a.mask(), mb = b.mask(), mc = c.mask();
    ASSERT_EQ(contains(a, b), subset(ma, mb));
    ASSERT_TRUE(contains(a, a));
    if (contains(a, b) && contains(b, a)) ASSERT_EQ(a, b);
    if (contains(a, b) && contains(b, c)) ASSERT_TRUE(contains(a, c));
    ASSERT_EQ(a == b, ma == mb);
  }
}

TEST(Spectrum, SecondMaximalPointsIncomparable) {
  auto U = PrimeUniverse::up_to_norm(F("x^3-2"), 200);
  for (std::size_t i = 0; i < U->primes.size(); ++i)
    for (std::size_t j = 0; j < U->primes.size(); ++j)
      if (i != j) EXPECT_FALSE(contains(SpectrumPoint::all_but(U, i), SpectrumPoint::all_but(U, j)));
}

TEST(Components, Examples) {
  auto U = PrimeUniverse::up_to_norm(F("x^2+1"), 5);
  auto comps = components_of_I2(U);
  ASSERT_EQ(comps.size(), 3U);
  EXPECT_EQ(comps[0].trace.label, "Z[1/2]");
  EXPECT_EQ(comps[1].trace.label, "Z[1/5]");
  EXPECT_EQ(comps[2].trace.label, "Z[1/5]");
  EXPECT_EQ(comps[1].trace, comps[2].trace);
  EXPECT_EQ(count_components_by_label(comps)[5], 2);

  auto Q = components_of_I2(PrimeUniverse::up_to_norm(NumberField::rationals(), 3));
  ASSERT_EQ(Q.size(), 2U);
  EXPECT_EQ(Q[0].trace.label, "Z[1/2]");
  EXPECT_EQ(Q[1].trace.label, "Z[1/3]");
}

TEST(Components, GroupingReproducesSplittingNumbers) {
  for (const char* poly : {"x-1", "x^2+1", "x^2+5", "x^2-x-1", "x^3-2", "x^8-97"}) {
    const NumberField k = F(poly);
    auto U = PrimeUniverse::over_rational_primes(k, 100);
    auto counts = count_components_by_label(components_of_I2(U));
    auto fp = fingerprint(k, 100);
    EXPECT_EQ(fp.skipped, U->skipped) << poly;
    EXPECT_EQ(counts.size(), fp.entries.size()) << poly;
    for (const auto& [p, e] : fp.entries) EXPECT_EQ(counts[Integer(static_cast<unsigned long>(p))], e.g) << poly << " p=" << p;
  }
}
