// Permutations in the sense of basis pairs (A, s, A), written in cycle
// notation over pairwise incomparable words, and the named generators of
// V_n, V_n' and mV built from them.

#ifndef VGEN_PERMS_HPP_
#define VGEN_PERMS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "element.hpp"
#include "words.hpp"

namespace vgen {

  using Cycle = std::vector<Word>;

  class CycleDecomposition {
   public:
    CycleDecomposition() = default;
    // Drops 1-cycles.  Throws std::invalid_argument if the words across all
    // cycles are not pairwise incomparable or repeat.
    CycleDecomposition(Signature sig, std::vector<Cycle> cycles);

    Signature const&          signature() const noexcept { return sig_; }
    std::vector<Cycle> const& cycles() const noexcept { return cycles_; }
    std::vector<Word>         support() const;
    bool                      empty() const noexcept { return cycles_.empty(); }

    bool operator==(CycleDecomposition const&) const = default;

   private:
    Signature          sig_;
    std::vector<Cycle> cycles_;
  };

  // Grammar: cycles := cycle* ; cycle := "(" word (ws word)+ ")".  Words use
  // the text form of the signature; "()" or an empty string is the identity.
  CycleDecomposition parse_cycles(Signature const& sig, std::string_view text);
  std::string        to_string(CycleDecomposition const& c);

  Element to_element(CycleDecomposition const& c);

  // The cycles of an element in permutation form (A, s, A), if it has one.
  std::optional<CycleDecomposition> to_cycles(Element const& g);

  // Concatenates cycles with disjoint supports.
  CycleDecomposition disjoint_union(CycleDecomposition const& a,
                                    CycleDecomposition const& b);

  CycleDecomposition localize(CycleDecomposition const& c, Word const& u);

  BigInt order(CycleDecomposition const& c);

  enum class Parity { Even, Odd };

  struct ParityResult {
    Parity parity;
    // True when the value depends on the chosen support basis (even n, mV):
    // there a transposition expands to a product of transpositions of the
    // opposite parity.
    bool representation_relative;
  };

  ParityResult parity(CycleDecomposition const& c);

  // Product of transpositions over an antichain, evaluated left to right.
  CycleDecomposition product_of_transpositions(
      Signature const&                        sig,
      std::vector<std::pair<Word, Word>> const& transpositions);

  // (0 10 11 ... 1(n-1)) for V_n.  For mV the (2m+1)-cycle through 0 and
  // 2m disjoint depth-one boxes below 1, one inside each 1.0_i and 1.1_i.
  CycleDecomposition delta(Signature const& sig);
  // delta * (0 2), an (n+2)-cycle; odd n only.
  CycleDecomposition delta_prime(Signature const& sig);

  // sigma(d, k) = (a_0 ... a_{d-1}), tau(d, k) = (a_{N-d+1} ... a_N) with
  // N = level_size - 1 and a_i = nary_expansion(i, k).
  CycleDecomposition sigma(Signature const& sig, std::uint64_t d, unsigned k);
  CycleDecomposition tau(Signature const& sig, std::uint64_t d, unsigned k);
  // Least k with level_size(k) >= d.
  unsigned min_digits(Signature const& sig, std::uint64_t d);

  bool is_prime(std::uint64_t x);
  std::uint64_t next_prime_after(std::uint64_t x);

  struct PrimePair {
    std::uint64_t p = 0;  // unused (0) for mV
    std::uint64_t q = 0;
  };

  PrimePair choose_primes(Signature const& sig);

  CycleDecomposition zeta(Signature const& sig);
  CycleDecomposition beta(Signature const& sig);
  // delta_[n-1] zeta (Higman), delta_[1] zeta (Brin, 1 = all-ones word).
  CycleDecomposition alpha_cycles(Signature const& sig);
  CycleDecomposition alpha_prime_cycles(Signature const& sig);
  Element            alpha(Signature const& sig);
  Element            alpha_prime(Signature const& sig);

  // The word whose every coordinate is the single letter a.
  Word bold(Signature const& sig, unsigned a);

  // Lexicographically least depth-k word (uniform depth in every coordinate)
  // whose cylinder g fixes pointwise.  Throws std::domain_error if none.
  Word fixed_word(Element const& g, unsigned k);
  Word fixed_word(CycleDecomposition const& c, unsigned k);

}  // namespace vgen

#endif  // VGEN_PERMS_HPP_
