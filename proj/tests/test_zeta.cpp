#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "bcinv/poly_parse.hpp"
#include "bcinv/zeta.hpp"

using namespace bcinv;

namespace {

NumberField F(const char* poly) { return NumberField::make(parse_poly(poly)); }

double zeta2_series(long terms) {
  double s = 0;
  for (long n = terms; n >= 1; --n) s += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  return s;
}

double l_chi4_2_series(long terms) {
  double s = 0;
  for (long k = terms; k >= 0; --k) {
    double d = 2.0 * static_cast<double>(k) + 1.0;
    s += (k % 2 == 0 ? 1.0 : -1.0) / (d * d);
  }
  return s;
}

// a_n = sum over d | n of the Kronecker symbol (D/d), D a fundamental discriminant.
long quadratic_count(long D, long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += mpz_si_kronecker(D, Integer(d).get_mpz_t());
  return s;
}

// Number of (x, y) with x^2 + y^2 = n, divided by the 4 units of Z[i].
long gaussian_count(long n) {
  long r = 0;
  for (long x = -n; x <= n; ++x)
    for (long y = -n; y <= n; ++y)
      if (x * x + y * y == n) ++r;
  return r / 4;
}

}  // namespace

TEST(EulerProduct, RationalsAtTwo) {
  auto z = euler_product(NumberField::rationals(), "2", 10000);
  EXPECT_NEAR(z.value.to_double(), zeta2_series(1000000), 1e-3);
  EXPECT_NEAR(z.value.to_double(), M_PI * M_PI / 6, 1e-4);
  EXPECT_EQ(z.prime_ideals, 1229U);
}

TEST(EulerProduct, GaussianAtTwo) {
  auto z = euler_product(F("x^2+1"), "2", 10000);
  EXPECT_NEAR(z.value.to_double(), zeta2_series(1000000) * l_chi4_2_series(1000000), 1e-3);
}

TEST(EulerProduct, EmptyProductAndErrors) {
  EXPECT_EQ(euler_product(F("x^2+1"), "2", 1).decimal(), "1." + std::string(29, '0'));
  EXPECT_EQ(euler_product(F("x^3-2"), "3", 1).prime_ideals, 0U);
  EXPECT_THROW(euler_product(F("x^2+1"), "1", 100), InputError);
  EXPECT_THROW(euler_product(F("x^2+1"), "0.5", 100), InputError);
  EXPECT_THROW(euler_product(F("x^2+1"), "two", 100), InputError);
  EXPECT_THROW(euler_product(F("x^8-97"), "2", 100), NotPMaximal);
}

TEST(EulerProduct, MonotoneInBoundAndS) {
  const NumberField k = F("x^2-x-1");
  Real prev = euler_product(k, "2", 2).value;
  for (std::uint64_t B : {10ULL, 50ULL, 200ULL, 1000ULL}) {
    Real cur = euler_product(k, "2", B).value;
    EXPECT_TRUE(prev <= cur);
    prev = cur;
  }
  Real hi = euler_product(k, "1.5", 500).value;
  for (const char* s : {"1.75", "2", "2.5", "4"}) {
    Real cur = euler_product(k, s, 500).value;
    EXPECT_TRUE(cur <= hi);
    hi = cur;
  }
}

TEST(EulerProduct, DeterministicAcrossJobsAndPrecision) {
  const NumberField k = F("x^3-2");
  auto a = euler_product(k, "2", 3000, {40, 1});
  auto b = euler_product(k, "2", 3000, {40, 4});
  EXPECT_EQ(a.decimal(), b.decimal());
  EXPECT_EQ(mpfr_cmp(a.value.get(), b.value.get()), 0);
  auto c = euler_product(k, "2", 3000, {20, 1});
  EXPECT_EQ(c.decimal().substr(0, 15), a.decimal().substr(0, 15));
}

TEST(Precision, EnvironmentOverride) {
  ::unsetenv("BCINV_PRECISION");
  EXPECT_EQ(default_precision_digits(), 30);
  ::setenv("BCINV_PRECISION", "50", 1);
  EXPECT_EQ(default_precision_digits(), 50);
  ::setenv("BCINV_PRECISION", "fifty", 1);
  EXPECT_THROW(default_precision_digits(), InputError);
  ::unsetenv("BCINV_PRECISION");
}

TEST(Coefficients, Examples) {
  auto q = ideal_count_coefficients(NumberField::rationals(), 500);
  for (const auto& v : q) EXPECT_EQ(v, 1);
  auto qi = ideal_count_coefficients(F("x^2+1"), 10);
  EXPECT_EQ(qi[0], 1);
  EXPECT_EQ(qi[4], 2);
  EXPECT_EQ(qi[2], 0);
  EXPECT_THROW(ideal_count_coefficients(F("x^8-97"), 100), NotPMaximal);
}

TEST(Coefficients, QuadraticCharacterOracle) {
  const std::pair<const char*, long> cases[] = {{"x^2+1", -4}, {"x^2+5", -20}, {"x^2-x-1", 5}, {"x^2+x+1", -3}, {"x^2+4x+5", -4}};
  for (auto [poly, D] : cases) {
    auto a = ideal_count_coefficients(F(poly), 400);
    for (long n = 1; n <= 400; ++n) EXPECT_EQ(a[static_cast<std::size_t>(n - 1)], quadratic_count(D, n)) << poly << " n=" << n;
  }
  auto g = ideal_count_coefficients(F("x^2+1"), 60);
  for (long n = 1; n <= 60; ++n) EXPECT_EQ(g[static_cast<std::size_t>(n - 1)], gaussian_count(n)) << n;
}

TEST(Coefficients, Multiplicative) {
  for (const char* poly : {"x^3-2", "x^2+5", "x^2+x+1"}) {
    auto a = ideal_count_coefficients(F(poly), 2000);
    auto at = [&](std::uint64_t n) { return a[n - 1]; };
    EXPECT_EQ(at(1), 1);
    for (std::uint64_t m = 1; m <= 44; ++m)
      for (std::uint64_t n = 1; m * n <= 2000; ++n)
        if (std::gcd(m, n) == 1) EXPECT_EQ(at(m * n), at(m) * at(n)) << poly << " " << m << "*" << n;
  }
}

TEST(Coefficients, PartialSumsBelowEulerProduct) {
  const NumberField k = F("x^2+x+1");
  const std::uint64_t N = 3000;
  auto a = ideal_count_coefficients(k, N);
  const mpfr_prec_t bits = bits_for_digits(30);
  Real sum = Real::from_integer(0, bits);
  const Real two = Real::from_string("2", bits), one = Real::from_integer(1, bits);
  for (std::uint64_t n = 1; n <= N; ++n)
    if (a[n - 1] != 0) sum = sum + Real::from_integer(a[n - 1], bits) / Real::pow(Integer(static_cast<unsigned long>(n)), two);
  EXPECT_TRUE(sum <= euler_product(k, "2", N).value);
}

TEST(ZetaEqual, Examples) {
  EXPECT_TRUE(zeta_equal_up_to(NumberField::rationals(), NumberField::rationals(), 100).agree);
  auto r = zeta_equal_up_to(F("x^2+1"), F("x^2+x+1"), 10);
  EXPECT_FALSE(r.agree);
  EXPECT_EQ(r.n, 2U);
  EXPECT_EQ(r.a_first, 1);
  EXPECT_EQ(r.a_second, 0);
  EXPECT_TRUE(zeta_equal_up_to(F("x^2+1"), F("x^2+4x+5"), 1000).agree);
  EXPECT_THROW(zeta_equal_up_to(F("x^8-97"), F("x^8-1552"), 10000), NotPMaximal);
}

TEST(ZetaEqual, PartialSkipsNonMaximalPrimes) {
  auto r = zeta_equal_up_to_partial(F("x^8-97"), F("x^8-1552"), 10000);
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.skipped, (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(r.compared, 5000U);
  auto d = zeta_equal_up_to_partial(F("x^8-97"), F("x^8-3"), 200);
  EXPECT_FALSE(d.agree);
}
