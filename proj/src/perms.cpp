#include "vgen/perms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace vgen {

  namespace {
    void require(bool cond, char const* msg) {
      if (!cond) {
        throw std::invalid_argument(msg);
      }
    }
  }  // namespace

  CycleDecomposition::CycleDecomposition(Signature sig, std::vector<Cycle> cycles)
      : sig_(sig) {
    std::vector<Word> all;
    for (auto& c : cycles) {
      for (auto const& w : c) {
        check_word(sig_, w);
        all.push_back(w);
      }
      if (c.size() >= 2) {
        cycles_.push_back(std::move(c));
      }
    }
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(),
            "cycle decomposition repeats a word");
    require(is_antichain(all), "cycle words are not pairwise incomparable");
  }

  std::vector<Word> CycleDecomposition::support() const {
    std::vector<Word> out;
    for (auto const& c : cycles_) {
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form
  ////////////////////////////////////////////////////////////////////////

  CycleDecomposition parse_cycles(Signature const& sig, std::string_view text) {
    std::vector<Cycle> cycles;
    std::size_t        pos  = 0;
    auto               skip = [&] {
      while (pos < text.size()
             && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'
                 || text[pos] == '\r')) {
        ++pos;
      }
    };
    skip();
    while (pos < text.size()) {
      require(text[pos] == '(', "cycle notation: expected '('");
      ++pos;
      Cycle cycle;
      while (true) {
        skip();
        require(pos < text.size(), "cycle notation: unterminated cycle");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        std::size_t start = pos;
        if (text[pos] == '[') {
          pos = text.find(']', pos);
          require(pos != std::string_view::npos, "cycle notation: unterminated word");
          ++pos;
        } else if (text[pos] == '"') {
          pos = text.find('"', pos + 1);
          require(pos != std::string_view::npos, "cycle notation: unterminated word");
          ++pos;
        } else {
          while (pos < text.size() && text[pos] != ')' && text[pos] != ' '
                 && text[pos] != '\t' && text[pos] != '(') {
            ++pos;
          }
        }
        cycle.push_back(parse_word(sig, text.substr(start, pos - start)));
      }
      require(cycle.size() != 1, "cycle notation: a cycle needs at least two words");
      if (!cycle.empty()) {
        cycles.push_back(std::move(cycle));
      }
      skip();
    }
    return CycleDecomposition(sig, std::move(cycles));
  }

  std::string to_string(CycleDecomposition const& c) {
    if (c.empty()) {
      return "()";
    }
    std::string out;
    for (auto const& cycle : c.cycles()) {
      out += "(";
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i > 0) {
          out += " ";
        }
        auto s = to_string(c.signature(), cycle[i]);
        out += s.empty() ? "\"\"" : s;
      }
      out += ")";
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Conversions
  ////////////////////////////////////////////////////////////////////////

  Element to_element(CycleDecomposition const& c) {
    auto const&          sig = c.signature();
    std::map<Word, Word> next;
    for (auto const& cycle : c.cycles()) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        next.emplace(cycle[i], cycle[(i + 1) % cycle.size()]);
      }
    }
    std::vector<Rule> rules;
    auto const completion = extend_to_basis(sig, c.support());
    for (auto const& w : completion.words()) {
      auto it = next.find(w);
      rules.push_back(Rule{w, it == next.end() ? w : it->second});
    }
    return Element::unchecked(sig, std::move(rules));
  }

  std::optional<CycleDecomposition> to_cycles(Element const& g) {
    if (!is_permutation_form(g)) {
      return std::nullopt;
    }
    std::map<Word, Word> next;
    for (auto const& r : g.rules()) {
      next.emplace(r.domain, r.range);
    }
    std::vector<Cycle> cycles;
    std::map<Word, bool> seen;
    for (auto const& [start, image] : next) {
      if (seen[start] || image == start) {
        continue;
      }
      Cycle cycle;
      for (Word w = start; !seen[w]; w = next.at(w)) {
        seen[w] = true;
        cycle.push_back(w);
      }
      cycles.push_back(std::move(cycle));
    }
    return CycleDecomposition(g.signature(), std::move(cycles));
  }

  CycleDecomposition disjoint_union(CycleDecomposition const& a,
                                    CycleDecomposition const& b) {
    require(a.signature().same_space(b.signature()),
            "disjoint_union: signature mismatch");
    auto cycles = a.cycles();
    cycles.insert(cycles.end(), b.cycles().begin(), b.cycles().end());
    return CycleDecomposition(a.signature(), std::move(cycles));
  }

  CycleDecomposition localize(CycleDecomposition const& c, Word const& u) {
    std::vector<Cycle> cycles;
    for (auto const& cycle : c.cycles()) {
      Cycle out;
      for (auto const& w : cycle) {
        out.push_back(concat(u, w));
      }
      cycles.push_back(std::move(out));
    }
    return CycleDecomposition(c.signature(), std::move(cycles));
  }

  BigInt order(CycleDecomposition const& c) {
    BigInt result = 1;
    for (auto const& cycle : c.cycles()) {
      BigInt len = cycle.size();
      result     = result / boost::multiprecision::gcd(result, len) * len;
    }
    return result;
  }

  ParityResult parity(CycleDecomposition const& c) {
    std::size_t transpositions = 0;
    for (auto const& cycle : c.cycles()) {
      transpositions += cycle.size() - 1;
    }
    auto const& sig = c.signature();
    return ParityResult{transpositions % 2 == 0 ? Parity::Even : Parity::Odd,
                        sig.is_brin() || sig.arity % 2 == 0};
  }

  CycleDecomposition product_of_transpositions(
      Signature const&                          sig,
      std::vector<std::pair<Word, Word>> const& transpositions) {
    std::vector<Word> points;
    for (auto const& [a, b] : transpositions) {
      for (auto const& w : {a, b}) {
        if (std::find(points.begin(), points.end(), w) == points.end()) {
          points.push_back(w);
        }
      }
    }
    std::vector<std::size_t> image(points.size());
    auto index = [&](Word const& w) {
      return static_cast<std::size_t>(
          std::find(points.begin(), points.end(), w) - points.begin());
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::size_t x = i;
      for (auto const& [a, b] : transpositions) {
        std::size_t ia = index(a), ib = index(b);
        if (x == ia) {
          x = ib;
        } else if (x == ib) {
          x = ia;
        }
      }
      image[i] = x;
    }
    std::vector<Cycle> cycles;
    std::vector<bool>  seen(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (seen[i]) {
        continue;
      }
      Cycle cycle;
      for (std::size_t j = i; !seen[j]; j = image[j]) {
        seen[j] = true;
        cycle.push_back(points[j]);
      }
      cycles.push_back(std::move(cycle));
    }
    return CycleDecomposition(sig, std::move(cycles));
  }

  ////////////////////////////////////////////////////////////////////////
  // Named generators
  ////////////////////////////////////////////////////////////////////////

  Word bold(Signature const& sig, unsigned a) {
    return Word(std::vector<Digits>(sig.dims(), Digits(1, static_cast<char>(a))));
  }

  namespace {
    std::vector<std::pair<Word, Word>> delta_transpositions(Signature const& sig) {
      std::vector<std::pair<Word, Word>> ts;
      if (!sig.is_brin()) {
        for (unsigned a = 0; a < sig.arity; ++a) {
          ts.emplace_back(Word::higman({0}), Word::higman({1, a}));
        }
      } else {
        // The boxes 1.0_i and 1.1_i overlap across coordinates once m >= 2.
        // Each is cut down to a depth-one sub-box: letter a in coordinate i,
        // a fill letter elsewhere, which keeps the 2m boxes disjoint.
        Word const zero = bold(sig, 0);
        for (std::size_t i = 0; i < sig.dims(); ++i) {
          for (unsigned a = 0; a < 2; ++a) {
            Word w = bold(sig, 1);
            for (std::size_t j = 0; j < sig.dims(); ++j) {
              unsigned const fill = i == 0 ? a : 1 - a;
              w = append(w, j, j == i ? a : fill);
            }
            ts.emplace_back(zero, w);
          }
        }
      }
      return ts;
    }
  }  // namespace

  CycleDecomposition delta(Signature const& sig) {
    return product_of_transpositions(sig, delta_transpositions(sig));
  }

  CycleDecomposition delta_prime(Signature const& sig) {
    require(!sig.is_brin() && sig.arity % 2 == 1,
            "delta' is only defined for odd Higman arity");
    auto ts = delta_transpositions(sig);
    ts.emplace_back(Word::higman({0}), Word::higman({2}));
    return product_of_transpositions(sig, ts);
  }

  unsigned min_digits(Signature const& sig, std::uint64_t d) {
    unsigned k = 0;
    while (level_size(sig, k) < d) {
      ++k;
    }
    return k;
  }

  CycleDecomposition sigma(Signature const& sig, std::uint64_t d, unsigned k) {
    require(d >= 1, "sigma: d must be positive");
    require(level_size(sig, k) >= d, "sigma: k too small for d");
    Cycle c;
    for (std::uint64_t i = 0; i < d; ++i) {
      c.push_back(nary_expansion(sig, i, k));
    }
    return CycleDecomposition(sig, {c});
  }

  CycleDecomposition tau(Signature const& sig, std::uint64_t d, unsigned k) {
    require(d >= 1, "tau: d must be positive");
    std::uint64_t const size = level_size(sig, k);
    require(size >= d, "tau: k too small for d");
    Cycle c;
    for (std::uint64_t i = size - d; i < size; ++i) {
      c.push_back(nary_expansion(sig, i, k));
    }
    return CycleDecomposition(sig, {c});
  }

  bool is_prime(std::uint64_t x) {
    if (x < 2) {
      return false;
    }
    for (std::uint64_t d = 2; d * d <= x; ++d) {
      if (x % d == 0) {
        return false;
      }
    }
    return true;
  }

  std::uint64_t next_prime_after(std::uint64_t x) {
    do {
      ++x;
    } while (!is_prime(x));
    return x;
  }

  PrimePair choose_primes(Signature const& sig) {
    // cube = n^3, or 8^m for mV
    std::uint64_t const cube = level_size(sig, 3);
    PrimePair           result;
    if (!sig.is_brin()) {
      if (sig.arity == 2) {
        result.p = 2;
      } else {
        for (std::uint64_t p = (cube + 3) / 4; 2 * p < cube; ++p) {
          if (is_prime(p)) {
            result.p = p;
            break;
          }
        }
      }
      require(result.p != 0, "no prime p in range");
    }
    for (std::uint64_t q = 3 * cube / 4 + 1; q < cube; ++q) {
      if (is_prime(q)) {
        result.q = q;
        break;
      }
    }
    require(result.q != 0, "no prime q in range");
    return result;
  }

  CycleDecomposition zeta(Signature const& sig) {
    if (sig.is_brin()) {
      return sigma(sig, level_size(sig, 3) / 4, 3);
    }
    return sigma(sig, choose_primes(sig).p, 3);
  }

  CycleDecomposition beta(Signature const& sig) {
    return tau(sig, choose_primes(sig).q, 3);
  }

  namespace {
    Word last_letter_word(Signature const& sig) {
      if (sig.is_brin()) {
        return bold(sig, 1);
      }
      return Word::higman({sig.arity - 1});
    }
  }  // namespace

  CycleDecomposition alpha_cycles(Signature const& sig) {
    return disjoint_union(localize(delta(sig), last_letter_word(sig)), zeta(sig));
  }

  CycleDecomposition alpha_prime_cycles(Signature const& sig) {
    return disjoint_union(localize(delta_prime(sig), last_letter_word(sig)),
                          zeta(sig));
  }

  Element alpha(Signature const& sig) {
    return to_element(alpha_cycles(sig));
  }

  Element alpha_prime(Signature const& sig) {
    return to_element(alpha_prime_cycles(sig));
  }

  Word fixed_word(Element const& g, unsigned k) {
    std::uint64_t const size = level_size(g.signature(), k);
    for (std::uint64_t i = 0; i < size; ++i) {
      Word w = nary_expansion(g.signature(), i, k);
      if (fixes_cylinder(g, w)) {
        return w;
      }
    }
    throw std::domain_error("no fixed word at this depth");
  }

  Word fixed_word(CycleDecomposition const& c, unsigned k) {
    return fixed_word(to_element(c), k);
  }

}  // namespace vgen
