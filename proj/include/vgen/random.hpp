// Random elements for fuzzing.

#ifndef VGEN_RANDOM_HPP_
#define VGEN_RANDOM_HPP_

#include <cstddef>
#include <random>
#include <vector>

#include "element.hpp"
#include "words.hpp"

namespace vgen {

  // A basis obtained from the root by `splits` random leaf splits (a random
  // coordinate for Brin signatures).
  std::vector<Word> random_basis(Signature const& sig, std::size_t splits,
                                 std::mt19937_64& rng);

  // A nontrivial element whose domain and range come from `splits` random
  // splits each, paired by a random bijection.  For V_n' the pairing is
  // adjusted to even lex_sign.
  Element random_element(Signature const& sig, std::size_t splits,
                         std::mt19937_64& rng);

}  // namespace vgen

#endif  // VGEN_RANDOM_HPP_
