#include "vgen/words.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace vgen {

  namespace {
    void require(bool cond, char const* msg) {
      if (!cond) {
        throw std::invalid_argument(msg);
      }
    }

    void check_dims(Word const& u, Word const& v) {
      require(u.dims() == v.dims(), "signature mismatch between words");
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Signature
  ////////////////////////////////////////////////////////////////////////

  Signature Signature::higman(unsigned n) {
    require(n >= 2 && n <= 255, "Higman arity must satisfy 2 <= n <= 255");
    return Signature{Family::HigmanVn, n};
  }

  Signature Signature::higman_prime(unsigned n) {
    require(n >= 3 && n % 2 == 1 && n <= 255,
            "V_n' requires odd arity n >= 3");
    return Signature{Family::HigmanVnPrime, n};
  }

  Signature Signature::brin(unsigned m) {
    require(m >= 1 && m <= 16, "Brin dimension must satisfy 1 <= m <= 16");
    return Signature{Family::BrinMV, m};
  }

  std::string family_name(Family f) {
    switch (f) {
      case Family::HigmanVn:
        return "Vn";
      case Family::HigmanVnPrime:
        return "VnPrime";
      case Family::BrinMV:
        return "mV";
    }
    return "?";
  }

  Family parse_family(std::string_view s) {
    if (s == "Vn" || s == "V") {
      return Family::HigmanVn;
    } else if (s == "VnPrime" || s == "Vprime") {
      return Family::HigmanVnPrime;
    } else if (s == "mV") {
      return Family::BrinMV;
    }
    throw std::invalid_argument("unknown family: " + std::string(s));
  }

  std::string to_string(Signature const& sig) {
    switch (sig.family) {
      case Family::HigmanVn:
        return "V_" + std::to_string(sig.arity);
      case Family::HigmanVnPrime:
        return "V_" + std::to_string(sig.arity) + "'";
      case Family::BrinMV:
        return std::to_string(sig.arity) + "V";
    }
    return "?";
  }

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  Word Word::root(Signature const& sig) {
    return Word(std::vector<Digits>(sig.dims()));
  }

  Word Word::higman(std::initializer_list<unsigned> digits) {
    Digits d;
    for (unsigned x : digits) {
      d.push_back(static_cast<char>(x));
    }
    return Word({d});
  }

  std::size_t Word::length() const noexcept {
    std::size_t result = coords.empty() ? 0 : coords[0].size();
    for (auto const& c : coords) {
      result = std::min(result, c.size());
    }
    return result;
  }

  std::size_t Word::total_length() const noexcept {
    std::size_t result = 0;
    for (auto const& c : coords) {
      result += c.size();
    }
    return result;
  }

  bool Word::is_root() const noexcept {
    return std::all_of(
        coords.begin(), coords.end(), [](auto const& c) { return c.empty(); });
  }

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    std::size_t h = w.coords.size();
    for (auto const& c : w.coords) {
      h = h * 1000003u ^ std::hash<std::string>{}(c);
    }
    return h;
  }

  void check_word(Signature const& sig, Word const& w) {
    require(w.dims() == sig.dims(), "word has the wrong number of coordinates");
    for (auto const& c : w.coords) {
      for (char ch : c) {
        require(static_cast<unsigned char>(ch) < sig.alphabet(),
                "word digit out of range for signature");
      }
    }
  }

  Word concat(Word const& u, Word const& s) {
    check_dims(u, s);
    Word result = u;
    for (std::size_t i = 0; i < u.dims(); ++i) {
      result.coords[i] += s.coords[i];
    }
    return result;
  }

  Word append(Word const& u, std::size_t coord, unsigned letter) {
    Word result = u;
    result.coords.at(coord).push_back(static_cast<char>(letter));
    return result;
  }

  Word strip_prefix(Word const& u, Word const& w) {
    require(is_prefix(u, w), "strip_prefix: not a prefix");
    Word result;
    result.coords.reserve(u.dims());
    for (std::size_t i = 0; i < u.dims(); ++i) {
      result.coords.push_back(w.coords[i].substr(u.coords[i].size()));
    }
    return result;
  }

  bool is_prefix(Digits const& u, Digits const& v) noexcept {
    return u.size() <= v.size() && v.compare(0, u.size(), u) == 0;
  }

  bool is_prefix(Word const& u, Word const& v) {
    check_dims(u, v);
    for (std::size_t i = 0; i < u.dims(); ++i) {
      if (!is_prefix(u.coords[i], v.coords[i])) {
        return false;
      }
    }
    return true;
  }

  bool incomparable(Word const& u, Word const& v) {
    check_dims(u, v);
    for (std::size_t i = 0; i < u.dims(); ++i) {
      if (!is_prefix(u.coords[i], v.coords[i])
          && !is_prefix(v.coords[i], u.coords[i])) {
        return true;
      }
    }
    return false;
  }

  std::optional<Word> meet(Word const& u, Word const& v) {
    check_dims(u, v);
    Word result;
    result.coords.reserve(u.dims());
    for (std::size_t i = 0; i < u.dims(); ++i) {
      auto const& a = u.coords[i];
      auto const& b = v.coords[i];
      if (is_prefix(a, b)) {
        result.coords.push_back(b);
      } else if (is_prefix(b, a)) {
        result.coords.push_back(a);
      } else {
        return std::nullopt;
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text and JSON forms
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::string coord_to_string(Digits const& d, unsigned alphabet) {
      std::string out;
      if (alphabet <= 10) {
        for (char c : d) {
          out.push_back(static_cast<char>('0' + c));
        }
      } else {
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (i > 0) {
            out.push_back(',');
          }
          out += std::to_string(static_cast<unsigned char>(d[i]));
        }
      }
      return out;
    }

    Digits coord_from_string(std::string_view text, unsigned alphabet) {
      Digits d;
      if (alphabet <= 10) {
        for (char c : text) {
          require(c >= '0' && c < static_cast<char>('0' + alphabet),
                  "invalid digit in word");
          d.push_back(static_cast<char>(c - '0'));
        }
      } else if (!text.empty()) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
          auto next = text.find(',', pos);
          if (next == std::string_view::npos) {
            next = text.size();
          }
          auto tok = text.substr(pos, next - pos);
          require(!tok.empty(), "empty digit in comma-separated word");
          unsigned value = 0;
          for (char c : tok) {
            require(c >= '0' && c <= '9', "invalid digit in word");
            value = value * 10 + static_cast<unsigned>(c - '0');
            require(value < alphabet, "word digit out of range for signature");
          }
          d.push_back(static_cast<char>(value));
          pos = next + 1;
        }
      }
      return d;
    }
  }  // namespace

  std::string to_string(Signature const& sig, Word const& w) {
    if (!sig.is_brin()) {
      return coord_to_string(w.coords.at(0), sig.alphabet());
    }
    return word_to_json(sig, w).dump();
  }

  nlohmann::json word_to_json(Signature const& sig, Word const& w) {
    if (!sig.is_brin()) {
      return coord_to_string(w.coords.at(0), sig.alphabet());
    }
    auto arr = nlohmann::json::array();
    for (auto const& c : w.coords) {
      arr.push_back(coord_to_string(c, 2));
    }
    return arr;
  }

  Word word_from_json(Signature const& sig, nlohmann::json const& j) {
    if (!sig.is_brin()) {
      require(j.is_string(), "Higman word must be a JSON string");
      return Word({coord_from_string(j.get<std::string>(), sig.alphabet())});
    }
    require(j.is_array() && j.size() == sig.dims(),
            "Brin word must be a JSON array with one string per coordinate");
    Word w;
    for (auto const& c : j) {
      require(c.is_string(), "Brin word coordinates must be strings");
      w.coords.push_back(coord_from_string(c.get<std::string>(), 2));
    }
    return w;
  }

  Word parse_word(Signature const& sig, std::string_view text) {
    if (!sig.is_brin()) {
      if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
        text = text.substr(1, text.size() - 2);
      }
      if (text == "e" || text == "\xce\xb5") {  // epsilon
        text = "";
      }
      return Word({coord_from_string(text, sig.alphabet())});
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (nlohmann::json::exception const&) {
      throw std::invalid_argument("malformed Brin word: " + std::string(text));
    }
    return word_from_json(sig, j);
  }

  ////////////////////////////////////////////////////////////////////////
  // Expansions
  ////////////////////////////////////////////////////////////////////////

  std::uint64_t level_size(Signature const& sig, unsigned k) {
    std::uint64_t result = 1;
    unsigned      steps  = sig.is_brin() ? sig.arity * k : k;
    for (unsigned i = 0; i < steps; ++i) {
      require(result <= (std::uint64_t(1) << 56) / sig.alphabet(),
              "level too large");
      result *= sig.alphabet();
    }
    return result;
  }

  Word nary_expansion(Signature const& sig, std::uint64_t i, unsigned k) {
    require(i < level_size(sig, k), "nary_expansion: index out of range");
    unsigned const base   = sig.alphabet();
    std::size_t    digits = sig.is_brin() ? sig.arity * k : k;
    Digits         all(digits, 0);
    for (std::size_t pos = digits; pos-- > 0;) {
      all[pos] = static_cast<char>(i % base);
      i /= base;
    }
    if (!sig.is_brin()) {
      return Word({all});
    }
    Word w;
    for (std::size_t c = 0; c < sig.dims(); ++c) {
      w.coords.push_back(all.substr(c * k, k));
    }
    return w;
  }

  std::uint64_t nary_index(Signature const& sig, Word const& w) {
    check_word(sig, w);
    std::uint64_t result = 0;
    for (auto const& c : w.coords) {
      for (char d : c) {
        result = result * sig.alphabet() + static_cast<unsigned char>(d);
      }
    }
    return result;
  }

  std::vector<Word> children(Signature const& sig,
                             Word const&      w,
                             std::size_t      coord) {
    std::vector<Word> out;
    out.reserve(sig.alphabet());
    for (unsigned a = 0; a < sig.alphabet(); ++a) {
      out.push_back(append(w, coord, a));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Bases
  ////////////////////////////////////////////////////////////////////////

  bool is_antichain(std::vector<Word> const& words) {
    if (words.empty()) {
      return true;
    }
    std::vector<Word> sorted(words);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front().dims() == 1) {
      // In lexicographic order a word is immediately followed by any of its
      // extensions, so adjacent checks suffice.
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (!incomparable(sorted[i], sorted[i + 1])) {
          return false;
        }
      }
      return true;
    }
    WordIndex                index(sorted);
    std::vector<std::size_t> hits;
    for (auto const& w : sorted) {
      hits.clear();
      index.comparable(w, hits);
      if (hits.size() != 1) {
        return false;
      }
    }
    return true;
  }

  bool is_basis(Signature const& sig, std::vector<Word> const& words) {
    using boost::multiprecision::cpp_int;
    if (words.empty()) {
      return false;
    }
    for (auto const& w : words) {
      check_word(sig, w);
    }
    if (!is_antichain(words)) {
      return false;
    }
    std::size_t top = 0;
    for (auto const& w : words) {
      top = std::max(top, w.total_length());
    }
    cpp_int const base = sig.alphabet();
    cpp_int       sum  = 0;
    for (auto const& w : words) {
      sum += boost::multiprecision::pow(
          base, static_cast<unsigned>(top - w.total_length()));
    }
    return sum == boost::multiprecision::pow(base, static_cast<unsigned>(top));
  }

  Basis::Basis(Signature sig, std::vector<Word> words)
      : sig_(sig), words_(std::move(words)) {
    require(is_basis(sig_, words_), "words do not form a basis");
    std::sort(words_.begin(), words_.end());
  }

  Basis::Basis(Signature sig, std::vector<Word> words, unchecked)
      : sig_(sig), words_(std::move(words)) {
    std::sort(words_.begin(), words_.end());
  }

  Basis make_basis_unchecked(Signature const& sig, std::vector<Word> words) {
    return Basis(sig, std::move(words), Basis::unchecked{});
  }

  Basis Basis::trivial(Signature const& sig) {
    return make_basis_unchecked(sig, {Word::root(sig)});
  }

  bool Basis::contains_word(Word const& w) const {
    return std::binary_search(words_.begin(), words_.end(), w);
  }

  namespace {
    // Emits the uncovered cylinders below node.  `inside` holds the input
    // words (or pieces of them) meeting node; all lie inside node.
    void complete(Signature const&   sig,
                  Word const&        node,
                  std::vector<Word>  inside,
                  std::vector<Word>& out) {
      if (inside.empty()) {
        out.push_back(node);
        return;
      }
      if (inside.size() == 1 && inside.front() == node) {
        return;
      }
      // Prefer a coordinate in which every piece is longer, so no input word
      // gets cut; otherwise take the lowest coordinate in which some piece is.
      std::size_t const dims  = node.dims();
      std::size_t       split = dims;
      for (std::size_t i = 0; i < dims && split == dims; ++i) {
        if (std::all_of(inside.begin(), inside.end(), [&](Word const& w) {
              return w.coords[i].size() > node.coords[i].size();
            })) {
          split = i;
        }
      }
      for (std::size_t i = 0; i < dims && split == dims; ++i) {
        if (std::any_of(inside.begin(), inside.end(), [&](Word const& w) {
              return w.coords[i].size() > node.coords[i].size();
            })) {
          split = i;
        }
      }
      require(split < dims, "extend_to_basis: input not an antichain");
      std::size_t const depth = node.coords[split].size();
      for (unsigned a = 0; a < sig.alphabet(); ++a) {
        std::vector<Word> sub;
        for (auto const& w : inside) {
          if (w.coords[split].size() == depth) {
            sub.push_back(append(w, split, a));
          } else if (static_cast<unsigned char>(w.coords[split][depth]) == a) {
            sub.push_back(w);
          }
        }
        complete(sig, append(node, split, a), std::move(sub), out);
      }
    }
  }  // namespace

  Basis extend_within(Signature const&         sig,
                      Word const&              u,
                      std::vector<Word> const& antichain) {
    check_word(sig, u);
    for (auto const& w : antichain) {
      check_word(sig, w);
      require(is_prefix(u, w), "extend_within: word outside the cylinder");
    }
    require(is_antichain(antichain), "extend_to_basis: input not an antichain");
    std::vector<Word> out(antichain);
    complete(sig, u, antichain, out);
    return make_basis_unchecked(sig, std::move(out));
  }

  Basis extend_to_basis(Signature const& sig, std::vector<Word> const& antichain) {
    return extend_within(sig, Word::root(sig), antichain);
  }

  Basis common_refinement(Basis const& a, Basis const& b) {
    require(a.signature().same_space(b.signature()),
            "common_refinement: signature mismatch");
    WordIndex                index(b.words());
    std::vector<Word>        out;
    std::vector<std::size_t> hits;
    for (auto const& x : a.words()) {
      hits.clear();
      index.comparable(x, hits);
      for (auto j : hits) {
        if (auto m = meet(x, b.words()[j])) {
          out.push_back(std::move(*m));
        }
      }
    }
    return make_basis_unchecked(a.signature(), std::move(out));
  }

  ////////////////////////////////////////////////////////////////////////
  // WordIndex
  ////////////////////////////////////////////////////////////////////////

  WordIndex::WordIndex(std::vector<Word> const& words) {
    entries_.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      entries_.emplace_back(words[i], i);
    }
    std::sort(entries_.begin(), entries_.end());
  }

  void WordIndex::comparable(Word const&               w,
                             std::vector<std::size_t>& out) const {
    if (entries_.empty()) {
      return;
    }
    check_dims(w, entries_.front().first);
    Digits const& first = w.coords[0];
    auto          key_less = [](std::pair<Word, std::size_t> const& e,
                       std::string_view                   k) {
      return std::string_view(e.first.coords[0]) < k;
    };
    auto key_greater = [](std::string_view                   k,
                          std::pair<Word, std::size_t> const& e) {
      return k < std::string_view(e.first.coords[0]);
    };
    bool const multi = w.dims() > 1;
    auto       emit  = [&](auto it) {
      if (!multi || !incomparable(w, it->first)) {
        out.push_back(it->second);
      }
    };
    // Entries whose first coordinate is a prefix of w's first coordinate.
    for (std::size_t len = 0; len <= first.size(); ++len) {
      std::string_view p(first.data(), len);
      auto lo = std::lower_bound(entries_.begin(), entries_.end(), p, key_less);
      auto hi = std::upper_bound(lo, entries_.end(), p, key_greater);
      for (auto it = lo; it != hi; ++it) {
        emit(it);
      }
      if (len == first.size()) {
        // Entries whose first coordinate strictly extends it follow directly.
        for (auto it = hi; it != entries_.end()
                           && is_prefix(first, it->first.coords[0]);
             ++it) {
          emit(it);
        }
      }
    }
  }

}  // namespace vgen
