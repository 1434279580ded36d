// Addresses in n-ary Cantor space and in the m-fold product of binary Cantor
// space, together with bases (complete antichains) built from them.
//
// A Higman word is stored as a Word with exactly one coordinate over the
// alphabet {0,...,n-1}; a Brin word has m binary coordinates.  Every routine
// below treats the two cases uniformly: incomparability, meets and cylinder
// containment are all decided coordinate by coordinate.

#ifndef VGEN_WORDS_HPP_
#define VGEN_WORDS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vgen {

  enum class Family { HigmanVn, HigmanVnPrime, BrinMV };

  struct Signature {
    Family   family = Family::HigmanVn;
    unsigned arity  = 2;

    static Signature higman(unsigned n);
    static Signature higman_prime(unsigned n);
    static Signature brin(unsigned m);

    bool is_brin() const noexcept { return family == Family::BrinMV; }
    // Number of coordinates of a word.
    std::size_t dims() const noexcept { return is_brin() ? arity : 1; }
    // Size of the alphabet used in each coordinate.
    unsigned alphabet() const noexcept { return is_brin() ? 2 : arity; }

    // V_n and V_n' act on the same space, so their words are interchangeable.
    bool same_space(Signature const& other) const noexcept {
      return dims() == other.dims() && alphabet() == other.alphabet();
    }

    bool operator==(Signature const&) const = default;
  };

  std::string family_name(Family f);  // "Vn", "VnPrime", "mV"
  Family      parse_family(std::string_view s);
  std::string to_string(Signature const& sig);

  // One coordinate of a word.  Each char holds a digit *value* (0..alphabet-1),
  // not an ASCII character; short strings stay in the small-buffer.
  using Digits = std::string;

  struct Word {
    std::vector<Digits> coords;

    Word() = default;
    explicit Word(std::vector<Digits> c) : coords(std::move(c)) {}

    static Word root(Signature const& sig);
    static Word higman(std::initializer_list<unsigned> digits);

    std::size_t dims() const noexcept { return coords.size(); }
    // |u| in the min-over-coordinates sense.
    std::size_t length() const noexcept;
    std::size_t total_length() const noexcept;
    bool        is_root() const noexcept;

    auto operator<=>(Word const&) const = default;
    bool operator==(Word const&) const  = default;
  };

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

  // Throws std::invalid_argument unless w is a word over sig.
  void check_word(Signature const& sig, Word const& w);

  // Coordinatewise concatenation u.s
  Word concat(Word const& u, Word const& s);
  // Append a single letter to one coordinate.
  Word append(Word const& u, std::size_t coord, unsigned letter);
  // The suffix s with u.s == w; requires contains(u, w).
  Word strip_prefix(Word const& u, Word const& w);

  bool is_prefix(Digits const& u, Digits const& v) noexcept;

  // True iff every coordinate of u is a prefix of the matching coordinate of
  // v, i.e. the cylinder of v lies inside the cylinder of u.  For Higman
  // words this is exactly "u is an initial segment of v".
  bool is_prefix(Word const& u, Word const& v);
  inline bool contains(Word const& u, Word const& v) { return is_prefix(u, v); }

  bool incomparable(Word const& u, Word const& v);

  // The word whose cylinder is the intersection of the two cylinders, if the
  // intersection is nonempty.
  std::optional<Word> meet(Word const& u, Word const& v);

  // Text forms.  Higman words are digit strings ("0110") for arity <= 10 and
  // comma-separated decimals otherwise; Brin words are JSON arrays of binary
  // strings.
  std::string    to_string(Signature const& sig, Word const& w);
  Word           parse_word(Signature const& sig, std::string_view text);
  nlohmann::json word_to_json(Signature const& sig, Word const& w);
  Word           word_from_json(Signature const& sig, nlohmann::json const& j);

  // Left-zero-padded expansion of i with k digits (Higman), or the mk-bit
  // expansion split into m blocks of k bits (Brin).
  Word nary_expansion(Signature const& sig, std::uint64_t i, unsigned k);
  // Inverse of nary_expansion on words of uniform depth k.
  std::uint64_t nary_index(Signature const& sig, Word const& w);
  // Number of depth-k words: n^k or 2^{mk}.
  std::uint64_t level_size(Signature const& sig, unsigned k);

  // The children of w obtained by extending one coordinate by one letter.
  std::vector<Word> children(Signature const& sig,
                             Word const&      w,
                             std::size_t      coord = 0);

  class Basis {
   public:
    Basis() = default;
    // Validates: throws std::invalid_argument if the words do not form a
    // basis of the signature's space.
    Basis(Signature sig, std::vector<Word> words);

    static Basis trivial(Signature const& sig);

    Signature const&         signature() const noexcept { return sig_; }
    std::vector<Word> const& words() const noexcept { return words_; }
    std::size_t              size() const noexcept { return words_.size(); }
    bool                     contains_word(Word const& w) const;

    bool operator==(Basis const&) const = default;

   private:
    struct unchecked {};
    Basis(Signature sig, std::vector<Word> words, unchecked);
    friend Basis make_basis_unchecked(Signature const&, std::vector<Word>);

    Signature         sig_;
    std::vector<Word> words_;  // sorted
  };

  Basis make_basis_unchecked(Signature const& sig, std::vector<Word> words);

  bool is_antichain(std::vector<Word> const& words);
  bool is_basis(Signature const& sig, std::vector<Word> const& words);

  // Deterministic completion of an antichain to a basis.  Starting from the
  // root, a cylinder is kept whole when it equals an input word or meets no
  // input word; otherwise it is split along the lowest coordinate in which
  // some input word inside it is longer.  The result is the coarsest such
  // completion.  Throws std::invalid_argument if the input is not an
  // antichain.
  Basis extend_to_basis(Signature const& sig, std::vector<Word> const& antichain);

  // Same, but completing to a basis of the cylinder u.  Input words must lie
  // inside u.
  Basis extend_within(Signature const&         sig,
                      Word const&              u,
                      std::vector<Word> const& antichain);

  Basis common_refinement(Basis const& a, Basis const& b);

  // Sorted index over a set of words answering "which entries are comparable
  // with w" without a linear scan (exact for one coordinate, a prefilter on
  // the first coordinate otherwise).
  class WordIndex {
   public:
    WordIndex() = default;
    explicit WordIndex(std::vector<Word> const& words);

    // Positions (into the constructor argument) of words comparable with w.
    void comparable(Word const& w, std::vector<std::size_t>& out) const;

   private:
    std::vector<std::pair<Word, std::size_t>> entries_;
  };

}  // namespace vgen

#endif  // VGEN_WORDS_HPP_
