// Two octic fields with the same splitting numbers that are not isomorphic.
//
//   ./demo_arith_equiv [bound]

#include <cstdlib>
#include <iostream>

#include "bcinv/bcinv.hpp"

using namespace bcinv;

int main(int argc, char** argv) {
  const std::uint64_t B = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
  const NumberField K = NumberField::make(parse_poly("x^8 - 97"), "K");
  const NumberField L = NumberField::make(parse_poly("x^8 - 1552"), "L");

  auto v = compare(fingerprint(K, B, 4), fingerprint(L, B, 4), CompareMode::splitting_numbers_only);
  std::cout << "splitting numbers: " << (v.agree ? "agree" : "disagree") << " (" << v.caveat << ")\n";

  // Z[theta] is not 2-maximal for either polynomial, so a_n is compared only for odd n.
  auto z = zeta_equal_up_to_partial(K, L, B, 4);
  std::cout << "ideal counts a_n:  " << (z.agree ? "agree" : "disagree") << " on " << z.compared << " of " << B
            << " indices\n";

  auto iso = isomorphism_test(K, L);
  std::cout << "isomorphism:       " << to_string(iso.verdict) << " (" << iso.reason << ")\n";

  // The invariant behind the comparison: primes above p counted by their trace labels.
  for (unsigned long p : {3UL, 7UL, 11UL, 13UL, 17UL}) {
    std::cout << "  p = " << p << ":";
    for (const NumberField* F : {&K, &L}) {
      int n = 0;
      for (const auto& P : split_prime(*F, p).primes) n += trace_range(P).label == localization_label(p);
      std::cout << "  " << F->label << " has " << n << " labeled " << localization_label(p);
    }
    std::cout << "\n";
  }
}
