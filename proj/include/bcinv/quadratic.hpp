#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bcinv/numberfield.hpp"

namespace bcinv {

namespace detail {

using i128 = __int128;

inline std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticError("int64 overflow in quadratic ideal arithmetic");
  return static_cast<std::int64_t>(v);
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t mod64(i128 a, std::int64_t m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

inline std::int64_t isqrt64(std::int64_t n) {
  if (n < 0) throw ArithmeticError("isqrt64 of a negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Square root of a quadratic residue n modulo an odd prime p (Tonelli-Shanks).
inline std::uint64_t sqrt_mod(std::uint64_t n, std::uint64_t p) {
  n %= p;
  if (n == 0) return 0;
  if (powmod64(n, (p - 1) / 2, p) != 1) throw ArithmeticError("sqrt_mod: not a quadratic residue");
  std::uint64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod64(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = powmod64(z, q, p), r = powmod64(n, (q + 1) / 2, p), t = powmod64(n, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    for (std::uint64_t tt = t; tt != 1; tt = mulmod(tt, tt, p)) ++i;
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    r = mulmod(r, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return r;
}

}  // namespace detail

/// a + b*theta.
struct QuadElement {
  std::int64_t a = 0, b = 0;
  friend bool operator==(const QuadElement&, const QuadElement&) = default;
};

/// a + b*theta with unbounded coordinates (used for units).
struct BigQuadElement {
  Integer a, b;
};

/// Integral ideal with Z-basis {A, B + C*theta}: C | A, C | B, 0 <= B < A.
/// The primitive part is the Hermite form (A/C, B/C + theta); the norm is A*C.
struct QuadIdeal {
  std::int64_t A = 1, B = 0, C = 1;
  std::int64_t norm() const { return detail::narrow(static_cast<detail::i128>(A) * C); }
  friend auto operator<=>(const QuadIdeal& x, const QuadIdeal& y) {
    return std::make_tuple(x.norm(), x.A, x.B, x.C) <=> std::make_tuple(y.norm(), y.A, y.B, y.C);
  }
  friend bool operator==(const QuadIdeal&, const QuadIdeal&) = default;
};

/// Arithmetic in Z[theta], theta^2 + s*theta + t = 0, for quadratic fields
/// whose ring of integers is Z[theta].
class QuadraticField {
 public:
  explicit QuadraticField(const NumberField& k) : k_(k) {
    if (k.degree != 2) throw UnsupportedField("quadratic arithmetic needs a degree-2 field, got degree " + std::to_string(k.degree));
    if (!fits_int64(k.poly.coeff(0)) || !fits_int64(k.poly.coeff(1)) || !fits_int64(k.disc) || abs(k.disc) > Integer(1) << 40)
      throw UnsupportedField("quadratic field coefficients too large: " + k.poly.to_string());
    t_ = to_int64(k.poly.coeff(0));
    s_ = to_int64(k.poly.coeff(1));
    D_ = to_int64(k.disc);
    // Z[theta] must be the full ring of integers: check every prime dividing D.
    std::int64_t rest = D_ < 0 ? -D_ : D_;
    for (std::int64_t q = 2; q * q <= rest || rest > 1; ++q) {
      if (q * q > rest) q = rest;
      if (rest % q != 0) continue;
      while (rest % q == 0) rest /= q;
      if (dedekind_criterion(k, Integer(static_cast<long>(q))) != PMaximality::p_maximal) throw NotPMaximal(Integer(static_cast<long>(q)));
    }
    if (real()) find_fundamental_unit();
  }

  const NumberField& field() const { return k_; }
  std::int64_t s() const { return s_; }
  std::int64_t t() const { return t_; }
  std::int64_t D() const { return D_; }
  bool real() const { return D_ > 0; }

  QuadElement mul(const QuadElement& x, const QuadElement& y) const {
    using detail::i128;
    i128 bb = static_cast<i128>(x.b) * y.b;
    return {detail::narrow(static_cast<i128>(x.a) * y.a - t_ * bb),
            detail::narrow(static_cast<i128>(x.a) * y.b + static_cast<i128>(y.a) * x.b - s_ * bb)};
  }
  QuadElement conj(const QuadElement& x) const {
    return {detail::narrow(static_cast<detail::i128>(x.a) - static_cast<detail::i128>(s_) * x.b), -x.b};
  }
  std::int64_t norm(const QuadElement& x) const {
    using detail::i128;
    return detail::narrow(static_cast<i128>(x.a) * x.a - static_cast<i128>(s_) * x.a * x.b + static_cast<i128>(t_) * x.b * x.b);
  }
  Integer norm(const BigQuadElement& x) const { return x.a * x.a - s_ * x.a * x.b + t_ * x.b * x.b; }

  /// Sign of the image of x under embedding 0 (theta -> (-s + sqrt D)/2) or 1.
  int sign(const BigQuadElement& x, int embedding) const {
    const Integer u = 2 * x.a - s_ * x.b;
    const Integer v = embedding == 0 ? x.b : Integer(-x.b);
    return sign_u_plus_v_sqrtD(u, v);
  }
  int sign(const QuadElement& x, int embedding) const { return sign(BigQuadElement{x.a, x.b}, embedding); }

  QuadIdeal ideal(const std::vector<QuadElement>& gens) const {
    using detail::i128;
    std::vector<std::array<i128, 2>> v;
    for (const auto& g : gens)
      if (g.a != 0 || g.b != 0) v.push_back({g.a, g.b});
    // Euclid on the theta-coordinate.
    for (;;) {
      std::size_t piv = v.size();
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i][1] != 0 && (piv == v.size() || abs128(v[i][1]) < abs128(v[piv][1]))) piv = i;
      if (piv == v.size()) throw ArithmeticError("ideal generators span a rank-1 lattice");
      bool done = true;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == piv || v[i][1] == 0) continue;
        i128 q = v[i][1] / v[piv][1];
        v[i][0] -= q * v[piv][0];
        v[i][1] -= q * v[piv][1];
        if (v[i][1] != 0) done = false;
      }
      if (done) {
        std::array<i128, 2> bc = v[piv];
        if (bc[1] < 0) bc = {-bc[0], -bc[1]};
        i128 A = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (i != piv) A = gcd128(A, v[i][0]);
        if (A != 0) {
          bc[0] %= A;
          if (bc[0] < 0) bc[0] += A;
        }
        // The theta-multiple of (B + C theta) lies in the lattice; fold it in.
        const std::int64_t B0 = detail::narrow(bc[0]), C0 = detail::narrow(bc[1]);
        QuadElement tb = mul(QuadElement{B0, C0}, QuadElement{0, 1});
        i128 x = tb.a, y = tb.b;
        i128 q = y / C0;
        x -= q * B0;
        y -= q * C0;
        if (y != 0) throw ArithmeticError("generators do not span an ideal");
        A = gcd128(A, x);
        if (A == 0) throw ArithmeticError("ideal generators span a rank-1 lattice");
        QuadIdeal I{detail::narrow(A), detail::mod64(bc[0], detail::narrow(A)), C0};
        return I;
      }
    }
  }

  QuadIdeal mul(const QuadIdeal& I, const QuadIdeal& J) const {
    const QuadElement g1[2] = {{I.A, 0}, {I.B, I.C}};
    const QuadElement g2[2] = {{J.A, 0}, {J.B, J.C}};
    return ideal({mul(g1[0], g2[0]), mul(g1[0], g2[1]), mul(g1[1], g2[0]), mul(g1[1], g2[1])});
  }
  QuadIdeal conj(const QuadIdeal& I) const { return ideal({{I.A, 0}, conj(QuadElement{I.B, I.C})}); }

  bool valid(const QuadIdeal& I) const {
    if (I.A < 1 || I.C < 1 || I.A % I.C != 0 || I.B % I.C != 0 || I.B < 0 || I.B >= I.A) return false;
    const std::int64_t a = I.A / I.C, b = I.B / I.C;
    return norm(QuadElement{b, 1}) % a == 0;
  }

  /// (p, h(theta)) in Hermite form.
  QuadIdeal prime_ideal(const PrimeIdeal& P) const {
    const std::int64_t p = to_int64(P.p);
    if (P.f == 2) return {p, 0, p};
    const std::int64_t r = detail::mod64(-to_int64(P.generator.coeff(0)), p);  // theta = r mod P
    return {p, detail::mod64(-static_cast<detail::i128>(r), p), 1};
  }

  /// A generator of I when I is principal.
  std::optional<QuadElement> generator(const QuadIdeal& I) const {
    const std::int64_t a = I.A / I.C, b = I.B / I.C;
    std::optional<std::pair<std::int64_t, std::int64_t>> xy = real() ? represent_one_real(a, b) : represent_one_imag(a, b);
    if (!xy) return std::nullopt;
    auto [x, y] = *xy;
    using detail::i128;
    return QuadElement{detail::narrow((static_cast<i128>(x) * a + static_cast<i128>(y) * b) * I.C),
                       detail::narrow(static_cast<i128>(y) * I.C)};
  }
  bool principal(const QuadIdeal& I) const { return generator(I).has_value(); }

  /// Every unit for imaginary fields; {-1, epsilon} for real fields.
  std::vector<BigQuadElement> unit_generators() const {
    if (real()) return {{-1, 0}, eps_};
    std::vector<BigQuadElement> out;
    for (std::int64_t b = -2; b <= 2; ++b)
      for (std::int64_t a = -4; a <= 4; ++a)
        if (norm(QuadElement{a, b}) == 1) out.push_back({a, b});
    return out;
  }
  const BigQuadElement& fundamental_unit() const {
    if (!real()) throw UnsupportedField("imaginary quadratic fields have no fundamental unit");
    return eps_;
  }

  /// All prime ideals of norm <= X, as (PrimeIdeal, Hermite form), sorted by (norm, p, generator).
  std::vector<std::pair<PrimeIdeal, QuadIdeal>> primes_up_to(std::int64_t X) const {
    std::vector<std::pair<PrimeIdeal, QuadIdeal>> out;
    for (std::uint64_t pu : bcinv::primes_up_to(static_cast<std::uint64_t>(X))) {
      const auto p = static_cast<std::int64_t>(pu);
      if (p == 2 || D_ % p == 0) {
        for (const auto& P : split_prime(k_, Integer(static_cast<long>(p))).primes)
          if (P.norm <= X) out.emplace_back(P, prime_ideal(P));
        continue;
      }
      const int leg = mpz_si_kronecker(D_, Integer(static_cast<long>(p)).get_mpz_t());
      if (leg == -1) {
        if (p > X / p) continue;
        PrimeIdeal P{Integer(static_cast<long>(p)), 1, 2, ModPoly::from(k_.poly, Integer(static_cast<long>(p))), Integer(static_cast<long>(p * p))};
        out.emplace_back(P, prime_ideal(P));
        continue;
      }
      const auto up = static_cast<std::uint64_t>(p);
      const std::uint64_t sq = detail::sqrt_mod(static_cast<std::uint64_t>(detail::mod64(D_, p)), up);
      const std::uint64_t inv2 = (up + 1) / 2;
      for (std::uint64_t sg : {sq, (up - sq) % up}) {
        const std::uint64_t r = detail::mulmod(static_cast<std::uint64_t>(detail::mod64(static_cast<detail::i128>(-s_) + sg, p)), inv2, up);
        PrimeIdeal P{Integer(static_cast<long>(p)), 1, 1,
                     ModPoly({Integer(static_cast<unsigned long>((up - r) % up)), Integer(1)}, Integer(static_cast<long>(p))),
                     Integer(static_cast<long>(p))};
        out.emplace_back(P, prime_ideal(P));
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

  /// Every ideal of norm <= X built from the given primes, via depth-first products.
  void for_each_ideal(const std::vector<QuadIdeal>& primes, std::int64_t X, const std::function<void(const QuadIdeal&)>& fn) const {
    std::function<void(std::size_t, const QuadIdeal&)> dfs = [&](std::size_t start, const QuadIdeal& I) {
      fn(I);
      for (std::size_t i = start; i < primes.size(); ++i) {
        if (primes[i].norm() > X / I.norm()) break;
        QuadIdeal J = I;
        while (J.norm() <= X / primes[i].norm()) {
          J = mul(J, primes[i]);
          dfs(i + 1, J);
        }
      }
    };
    dfs(0, QuadIdeal{});
  }

  /// Ordinary class group data: h, and one representative per class coprime to p.
  struct ClassGroup {
    std::vector<QuadIdeal> reps;  // reps[0] is the unit ideal
    std::size_t size() const { return reps.size(); }
  };

  ClassGroup class_group_coprime_to(std::int64_t p) const {
    // Every class has an ideal of norm at most sqrt|D| (Minkowski).
    const std::int64_t mb = std::max<std::int64_t>(2, detail::isqrt64(D_ < 0 ? -D_ : D_));
    std::vector<QuadIdeal> primes;
    for (const auto& [P, I] : primes_up_to(mb)) primes.push_back(I);
    std::vector<QuadIdeal> small;
    for_each_ideal(primes, mb, [&](const QuadIdeal& I) { small.push_back(I); });
    std::sort(small.begin(), small.end());
    std::vector<QuadIdeal> all;
    for (const auto& I : small)
      if (class_index(all, I) < 0) all.push_back(I);
    const std::size_t h = all.size();

    ClassGroup cg;
    for (std::int64_t Y = 2 * mb + 8;; Y *= 2) {
      if (Y > (std::int64_t(1) << 30)) throw InternalError("no class representatives coprime to p found");
      std::vector<QuadIdeal> cands;
      primes.clear();
      for (const auto& [P, I] : primes_up_to(Y))
        if (to_int64(P.p) != p) primes.push_back(I);
      for_each_ideal(primes, Y, [&](const QuadIdeal& I) { cands.push_back(I); });
      std::sort(cands.begin(), cands.end());
      cg.reps.clear();
      for (const auto& I : cands) {
        if (class_index(cg.reps, I) < 0) cg.reps.push_back(I);
        if (cg.reps.size() == h) return cg;
      }
    }
  }

  /// Index j with I ~ reps[j] in the class group, or -1. The generator of
  /// I * conj(reps[j]) is stored in `gen` when requested.
  int class_index(const std::vector<QuadIdeal>& reps, const QuadIdeal& I, QuadElement* gen = nullptr) const {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if (auto g = generator(mul(I, conj(reps[j])))) {
        if (gen) *gen = *g;
        return static_cast<int>(j);
      }
    }
    return -1;
  }

 private:
  NumberField k_;
  std::int64_t s_ = 0, t_ = 0, D_ = 0;
  BigQuadElement eps_;
  std::int64_t eps_bound_ = 1;  // integer upper bound for epsilon under embedding 0

  static detail::i128 abs128(detail::i128 v) { return v < 0 ? -v : v; }
  static detail::i128 gcd128(detail::i128 a, detail::i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b) {
      detail::i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  int sign_u_plus_v_sqrtD(const Integer& u, const Integer& v) const {
    const int su = sgn(u), sv = sgn(v);
    if (su >= 0 && sv >= 0) return (su > 0 || sv > 0) ? 1 : 0;
    if (su <= 0 && sv <= 0) return -1;
    const Integer lhs = u * u, rhs = v * v * D_;
    return lhs > rhs ? su : sv;
  }

  // Reduce a x^2 + bq x y + c y^2 (positive definite); the minimum is 1 iff the ideal is principal.
  std::optional<std::pair<std::int64_t, std::int64_t>> represent_one_imag(std::int64_t a0, std::int64_t b0) const {
    using detail::i128;
    i128 a = a0, b = 2 * static_cast<i128>(b0) - s_;
    i128 c = (static_cast<i128>(b0) * b0 - static_cast<i128>(s_) * b0 + t_) / a0;
    i128 m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    for (int iter = 0; iter < 10000; ++iter) {
      if (b > a || b <= -a) {
        i128 k = (a - b) / (2 * a);
        if ((a - b) % (2 * a) != 0 && (a - b) < 0) --k;
        c = a * k * k + b * k + c;
        b = b + 2 * a * k;
        m01 += k * m00;
        m11 += k * m10;
        continue;
      }
      if (a > c || (a == c && b < 0)) {
        std::swap(a, c);
        b = -b;
        i128 n00 = m01, n10 = m11;
        m01 = -m00;
        m11 = -m10;
        m00 = n00;
        m10 = n10;
        continue;
      }
      if (a != 1) return std::nullopt;
      return std::pair{detail::narrow(m00), detail::narrow(m10)};
    }
    throw InternalError("binary form reduction did not terminate");
  }

  // Bounded search: a generator can be moved by units into |sigma_i| <= sqrt(a * epsilon).
  std::optional<std::pair<std::int64_t, std::int64_t>> represent_one_real(std::int64_t a, std::int64_t b) const {
    using detail::i128;
    const i128 lim = static_cast<i128>(4) * a * eps_bound_ / D_;
    if (lim > (static_cast<i128>(1) << 40)) throw UnsupportedField("principality search range too large for this real quadratic field");
    const std::int64_t Y = detail::isqrt64(static_cast<std::int64_t>(lim)) + 1;
    const i128 bq = 2 * static_cast<i128>(b) - s_;
    for (std::int64_t y = 0; y <= Y; ++y) {
      for (int sigma : {1, -1}) {
        const i128 disc = static_cast<i128>(D_) * y * y + 4 * static_cast<i128>(a) * sigma;
        if (disc < 0) continue;
        const std::int64_t r = detail::isqrt64(detail::narrow(disc));
        if (static_cast<i128>(r) * r != disc) continue;
        for (i128 num : {-bq * y + r, -bq * y - r}) {
          if (num % (2 * a) == 0) return std::pair{detail::narrow(num / (2 * a)), y};
        }
      }
    }
    return std::nullopt;
  }

  // Continued fraction of theta_0 = (-s + sqrt D)/2; the first convergent
  // h/k with N(h - k theta) = +-1 gives the fundamental unit.
  void find_fundamental_unit() {
    const Integer D = D_, r = isqrt(D);
    Integer P = -s_, Q = 2;
    Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    for (int iter = 0; iter < 100000; ++iter) {
      Integer num = Q > 0 ? Integer(P + r) : Integer(P + r + 1), a;
      mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
      Integer h = a * h1 + h2, k = a * k1 + k2;
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      P = a * Q - P;
      Q = (D - P * P) / Q;
      BigQuadElement eta{h, -k};
      const Integer n = norm(eta);
      if (k >= 1 && (n == 1 || n == -1)) {
        const BigQuadElement c{h + s_ * k, k};  // conjugate of h - k theta
        for (const BigQuadElement& cand : {eta, BigQuadElement{-eta.a, -eta.b}, c, BigQuadElement{-c.a, -c.b}}) {
          if (sign_u_plus_v_sqrtD(2 * cand.a - s_ * cand.b - 2, cand.b) > 0) {
            eps_ = cand;
            const Integer u = abs(Integer(2 * cand.a - s_ * cand.b));
            const Integer bound = (u + abs(cand.b) * (r + 1)) / 2 + 1;
            if (bound > Integer("1000000000")) throw UnsupportedField("fundamental unit too large for bounded principality search");
            eps_bound_ = to_int64(bound);
            return;
          }
        }
      }
    }
    throw UnsupportedField("continued fraction iteration cap reached before finding a fundamental unit");
  }
};

}  // namespace bcinv
