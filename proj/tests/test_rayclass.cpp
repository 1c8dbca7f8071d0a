#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "bcinv/poly_parse.hpp"
#include "bcinv/rayclass.hpp"

using namespace bcinv;

namespace {

NumberField F(const char* poly) { return NumberField::make(parse_poly(poly)); }

PrimeIdeal prime_over(const NumberField& k, long p, int f = 1, int which = 0) {
  int seen = 0;
  for (const auto& P : split_prime(k, p).primes)
    if (P.f == f && seen++ == which) return P;
  throw std::runtime_error("no such prime");
}

long phi(long n) {
  long r = 0;
  for (long i = 1; i <= n; ++i) r += std::gcd(i, n) == 1;
  return r;
}

// Class number of an imaginary quadratic discriminant by counting reduced forms.
long reduced_form_count(long D) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b - D) % (4 * a) != 0) continue;
      long c = (b * b - D) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

// Smallest solution of x^2 - D y^2 = +-4 with y >= 1, as a + y*theta.
BigQuadElement pell_unit(long s, long D) {
  for (long y = 1;; ++y)
    for (long sg : {-4L, 4L}) {
      long v = D * y * y + sg;
      if (v < 0) continue;
      long x = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
      if (x * x == v) return {Integer((x + s * y) / 2), Integer(y)};
    }
}

// Expected h_m for an imaginary quadratic field: h * |(O/P^m)^*| / |image of roots of unity|.
Integer imaginary_ray_order(const NumberField& k, const PrimeIdeal& P, int m, long h, long r_lift) {
  const long p = P.p.get_si(), s = k.poly.coeff(1).get_si(), t = k.poly.coeff(0).get_si();
  long M = 1;
  for (int i = 0; i < m; ++i) M *= p;
  std::set<std::pair<long, long>> img;
  for (long b = -2; b <= 2; ++b)
    for (long a = -4; a <= 4; ++a) {
      if (a * a - s * a * b + t * b * b != 1) continue;
      auto md = [M](long v) { return ((v % M) + M) % M; };
      if (m == 0) img.insert({0, 0});
      else if (P.f == 1) img.insert({md(a + b * r_lift), 0});
      else img.insert({md(a), md(b)});
    }
  long units = 0;
  if (m == 0) {
    units = 1;
  } else if (P.f == 1) {
    units = phi(M);
  } else {
    for (long a = 0; a < M; ++a)
      for (long b = 0; b < M; ++b) units += ((a * a - s * a * b + t * b * b) % p) != 0;
  }
  return Integer(h * units / static_cast<long>(img.size()));
}

}  // namespace

TEST(LocalFiltration, Examples) {
  const PrimeIdeal p5 = prime_over(NumberField::rationals(), 5);
  EXPECT_EQ(local_unit_filtration(p5, 3), (std::vector<Integer>{4, 5, 5, 5}));
  const PrimeIdeal i3 = prime_over(F("x^2+1"), 3, 2);
  EXPECT_EQ(local_unit_filtration(i3, 2), (std::vector<Integer>{8, 9, 9}));
  EXPECT_EQ(local_unit_filtration(i3, 0), (std::vector<Integer>{8}));
  EXPECT_EQ(local_unit_order(p5, 0), 1);
  EXPECT_EQ(local_unit_order(p5, 3), 100);
  EXPECT_EQ(local_unit_order(i3, 2), 72);
  EXPECT_THROW(local_unit_filtration(p5, -1), InputError);
}

TEST(Quadratic, IdealArithmetic) {
  for (const char* poly : {"x^2+5", "x^2+1", "x^2-x-1", "x^2+x+6", "x^2-10"}) {
    const QuadraticField K(F(poly));
    auto primes = K.primes_up_to(60);
    for (const auto& [P, I] : primes) {
      EXPECT_TRUE(K.valid(I)) << poly;
      EXPECT_EQ(I.norm(), P.norm.get_si());
    }
    for (std::size_t i = 0; i < primes.size(); ++i)
      for (std::size_t j = 0; j < primes.size(); ++j) {
        QuadIdeal IJ = K.mul(primes[i].second, primes[j].second);
        EXPECT_TRUE(K.valid(IJ));
        EXPECT_EQ(IJ.norm(), primes[i].second.norm() * primes[j].second.norm());
        EXPECT_EQ(IJ, K.mul(primes[j].second, primes[i].second));
      }
    for (const auto& [P, I] : primes) {
      auto g = K.generator(K.mul(I, K.conj(I)));
      ASSERT_TRUE(g.has_value()) << poly;
      EXPECT_EQ(std::llabs(K.norm(*g)), I.norm() * I.norm());
    }
  }
}

TEST(Quadratic, PrimeIdealsMatchGenericSplitting) {
  for (const char* poly : {"x^2+5", "x^2-x-1", "x^2+x+1"}) {
    const NumberField k = F(poly);
    const QuadraticField K(k);
    auto fast = K.primes_up_to(3000);
    auto slow = prime_ideals_up_to(k, 3000);
    ASSERT_EQ(fast.size(), slow.size()) << poly;
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_EQ(fast[i].first, slow[i]) << poly << " " << i;
  }
}

TEST(Quadratic, IdealCountsMatchKroneckerSums) {
  const std::pair<const char*, long> cases[] = {{"x^2+5", -20}, {"x^2-x-1", 5}, {"x^2+x+6", -23}};
  for (auto [poly, D] : cases) {
    const QuadraticField K(F(poly));
    std::vector<QuadIdeal> primes;
    for (const auto& pr : K.primes_up_to(500)) primes.push_back(pr.second);
    std::map<long, long> count;
    std::set<QuadIdeal> distinct;
    K.for_each_ideal(primes, 500, [&](const QuadIdeal& I) {
      ++count[I.norm()];
      EXPECT_TRUE(distinct.insert(I).second);
    });
    for (long n = 1; n <= 500; ++n) {
      long expect = 0;
      for (long d = 1; d <= n; ++d)
        if (n % d == 0) expect += mpz_si_kronecker(D, Integer(d).get_mpz_t());
      EXPECT_EQ(count[n], expect) << poly << " n=" << n;
    }
  }
}

TEST(Quadratic, ClassNumbersMatchReducedForms) {
  const std::pair<const char*, long> cases[] = {{"x^2+5", -20}, {"x^2+1", -4}, {"x^2+x+6", -23}, {"x^2+x+12", -47}, {"x^2+14", -56}, {"x^2+x+1", -3}};
  for (auto [poly, D] : cases) {
    const QuadraticField K(F(poly));
    auto cg = K.class_group_coprime_to(3);
    EXPECT_EQ(static_cast<long>(cg.size()), reduced_form_count(D)) << poly;
    for (const auto& r : cg.reps) EXPECT_NE(r.norm() % 3, 0);
  }
  EXPECT_EQ(QuadraticField(F("x^2-10")).class_group_coprime_to(3).size(), 2U);
  EXPECT_EQ(QuadraticField(F("x^2-x-1")).class_group_coprime_to(5).size(), 1U);
}

TEST(Quadratic, FundamentalUnitMatchesPell) {
  for (const char* poly : {"x^2-x-1", "x^2-2", "x^2-3", "x^2-7", "x^2-10", "x^2-x-3", "x^2-94", "x^2-x-7"}) {
    const NumberField k = F(poly);
    const QuadraticField K(k);
    const auto& eps = K.fundamental_unit();
    auto pell = pell_unit(K.s(), K.D());
    EXPECT_EQ(eps.a, pell.a) << poly;
    EXPECT_EQ(eps.b, pell.b) << poly;
    EXPECT_EQ(abs(K.norm(eps)), 1);
    EXPECT_GT(K.sign(eps, 0), 0);
  }
  EXPECT_THROW(QuadraticField(F("x^2+1")).fundamental_unit(), UnsupportedField);
}

TEST(Quadratic, ScopeErrors) {
  EXPECT_THROW(QuadraticField(F("x^2+3")), NotPMaximal);
  EXPECT_THROW(QuadraticField(F("x^3-2")), UnsupportedField);
}

TEST(RayOracle, RationalsEulerPhi) {
  const NumberField q = NumberField::rationals();
  for (long p : {2L, 3L, 5L, 7L}) {
    auto run = ray_class_orders(q, prime_over(q, p), 3);
    long pm = 1;
    for (int m = 0; m <= 3; ++m, pm *= p) EXPECT_EQ(run.h[static_cast<std::size_t>(m)], m == 0 ? 1 : phi(pm)) << p << "^" << m;
  }
  EXPECT_EQ(ray_class_oracle(q, prime_over(q, 5), 1), 4);
  EXPECT_EQ(ray_class_oracle(q, prime_over(q, 5), 2), 20);
}

TEST(RayOracle, ImaginaryQuadraticAgainstExactSequence) {
  struct Case {
    const char* poly;
    long p;
    int f;
    long h;
    int M;
  };
  for (const Case& c : {Case{"x^2+5", 3, 1, 2, 2}, Case{"x^2+5", 7, 1, 2, 2}, Case{"x^2+5", 11, 2, 2, 1}, Case{"x^2+1", 5, 1, 1, 3},
                        Case{"x^2+1", 3, 2, 1, 2}, Case{"x^2+x+1", 7, 1, 1, 2}, Case{"x^2+x+6", 2, 1, 3, 2}}) {
    const NumberField k = F(c.poly);
    const PrimeIdeal P = prime_over(k, c.p, c.f);
    auto run = ray_class_orders(k, P, c.M);
    EXPECT_EQ(static_cast<long>(run.class_number), c.h) << c.poly;
    long M = 1;
    for (int m = 0; m <= c.M; ++m, M *= c.p) {
      long r = 0;
      if (c.f == 1 && m > 0) r = detail::hensel_root(k.poly, detail::mod64(-P.generator.coeff(0).get_si(), c.p), c.p, M);
      EXPECT_EQ(run.h[static_cast<std::size_t>(m)], imaginary_ray_order(k, P, m, c.h, r)) << c.poly << " p=" << c.p << " m=" << m;
    }
  }
}

TEST(RayOracle, NarrowClassNumberOfMinusFive) {
  const NumberField k = F("x^2+5");
  EXPECT_EQ(ray_class_oracle(k, prime_over(k, 3), 0), 2);
  EXPECT_EQ(ray_class_oracle(k, prime_over(k, 3, 1, 1), 0), 2);
}

TEST(RayOracle, RealQuadraticUnitsCanBreakGrowth) {
  // In Q(sqrt 5), the image of <-1, eps> in (O/P^m)^* x signs decides each index.
  const NumberField k = F("x^2-x-1");
  const QuadraticField K(k);
  const PrimeIdeal P = prime_over(k, 11);
  auto c = chain(k, P, 3, ChainMode::oracle);
  const long r0 = detail::mod64(-P.generator.coeff(0).get_si(), 11);
  long M = 1;
  for (int m = 0; m <= 3; ++m, M *= 11) {
    // Closure of {-1, eps} acting on (sign pair, residue); h_m = 4 |(O/P^m)^*| / |image| (h = 1).
    const long r = m ? detail::hensel_root(k.poly, r0, 11, M) : 0;
    std::set<std::tuple<int, int, long>> img{{1, 1, m ? 1 % M : 0}};
    const auto& eps = K.fundamental_unit();
    const long er = m ? mod_floor(Integer(eps.a + eps.b * r), Integer(M)).get_si() : 0;
    const int es0 = K.sign(eps, 0), es1 = K.sign(eps, 1);
    std::vector<std::tuple<int, int, long>> todo(img.begin(), img.end());
    while (!todo.empty()) {
      auto [a, b, x] = todo.back();
      todo.pop_back();
      for (auto n : {std::tuple<int, int, long>{-a, -b, m ? (M - x) % M : 0}, std::tuple<int, int, long>{a * es0, b * es1, m ? x * er % M : 0}})
        if (img.insert(n).second) todo.push_back(n);
    }
    const long units = m ? phi(M) : 1;
    EXPECT_EQ(*c.levels[static_cast<std::size_t>(m)].h, Integer(4 * units / static_cast<long>(img.size()))) << "m=" << m;
  }
  bool all_p = std::all_of(c.ratios.begin(), c.ratios.end(), [](const Integer& r) { return r == 11; });
  EXPECT_EQ(c.growth_certified, all_p);
  EXPECT_EQ(c.discrepancies.empty(), all_p);
}

TEST(RayOracle, SaturationAndScope) {
  const NumberField q = NumberField::rationals();
  EXPECT_THROW(ray_class_orders(q, prime_over(q, 5), 2, {5, 1 << 20, 1}), SaturationFailure);
  EXPECT_EQ(ray_class_orders(q, prime_over(q, 5), 2, {200, 1 << 20, 1}).h[2], 20);
  const NumberField qi = F("x^2+1");
  EXPECT_THROW(ray_class_orders(qi, prime_over(qi, 2), 2), UnsupportedField);
  EXPECT_EQ(ray_class_orders(qi, prime_over(qi, 2), 1).h.size(), 2U);
  const NumberField c = F("x^3-2");
  EXPECT_THROW(ray_class_orders(c, prime_over(c, 5), 1), UnsupportedField);
}

TEST(RayOracle, DeterministicAcrossJobs) {
  const NumberField k = F("x^2+5");
  const PrimeIdeal P = prime_over(k, 7);
  auto a = ray_class_orders(k, P, 2, {0, 1 << 23, 1});
  auto b = ray_class_orders(k, P, 2, {0, 1 << 23, 4});
  EXPECT_EQ(a.h, b.h);
  EXPECT_EQ(a.bound, b.bound);
}

TEST(Chain, OracleAndFormulaModes) {
  const NumberField q = NumberField::rationals();
  auto c = chain(q, prime_over(q, 5), 3, ChainMode::oracle);
  std::vector<Integer> h;
  for (const auto& L : c.levels) h.push_back(*L.h);
  EXPECT_EQ(h, (std::vector<Integer>{1, 4, 20, 100}));
  EXPECT_EQ(c.ratios, (std::vector<Integer>{5, 5}));
  EXPECT_TRUE(c.growth_certified);
  EXPECT_FALSE(c.asserted);

  const NumberField k = F("x^2+5");
  auto s = chain(k, prime_over(k, 3), 2, ChainMode::oracle);
  EXPECT_EQ(s.ratios, (std::vector<Integer>{3}));
  EXPECT_TRUE(s.growth_certified);

  const NumberField cub = F("x^3-2");
  const PrimeIdeal inert7 = prime_over(cub, 7, 3);
  auto f = chain(cub, inert7, 2, ChainMode::formula);
  EXPECT_EQ(f.ratios, (std::vector<Integer>{343}));
  EXPECT_TRUE(f.asserted);
  EXPECT_FALSE(f.growth_certified);
  EXPECT_FALSE(f.levels[1].h.has_value());
  EXPECT_EQ(chain(q, prime_over(q, 3), 0, ChainMode::oracle).levels.size(), 1U);
}

TEST(TraceRange, LabelsDependOnlyOnP) {
  const NumberField qi = F("x^2+1");
  auto two = trace_range(prime_over(qi, 2));
  EXPECT_EQ(two.label, "Z[1/2]");
  auto a = trace_range(prime_over(qi, 5, 1, 0)), b = trace_range(prime_over(qi, 5, 1, 1));
  EXPECT_EQ(a.label, "Z[1/5]");
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.prime == b.prime);
  EXPECT_FALSE(a == two);
  const NumberField q = NumberField::rationals();
  EXPECT_EQ(trace_range(prime_over(q, 5)), a);
}
