// Small helpers shared by the unit tests, plus brute-force reference
// implementations that do not go through the library's own algorithms.

#ifndef VGEN_TESTS_SUPPORT_HPP_
#define VGEN_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vgen/element.hpp"
#include "vgen/perms.hpp"
#include "vgen/words.hpp"

namespace vgen::test {

  inline Signature const V2 = Signature::higman(2);
  inline Signature const V3 = Signature::higman(3);

  inline Word W(Signature const& sig, std::string const& text) {
    return parse_word(sig, text);
  }

  inline Word W(std::string const& text) {
    return parse_word(V2, text);
  }

  inline std::vector<Word> Ws(Signature const& sig, std::vector<std::string> const& texts) {
    std::vector<Word> out;
    for (auto const& t : texts) {
      out.push_back(W(sig, t));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  inline CycleDecomposition C(Signature const& sig, std::string const& text) {
    return parse_cycles(sig, text);
  }

  inline Element E(Signature const& sig, std::string const& text) {
    return to_element(parse_cycles(sig, text));
  }

  inline Element pairs(Signature const& sig,
                       std::vector<std::pair<std::string, std::string>> const& rules) {
    std::vector<Rule> rs;
    for (auto const& [d, r] : rules) {
      rs.push_back(Rule{W(sig, d), W(sig, r)});
    }
    return Element(sig, std::move(rs));
  }

  // The element gamma drawn next to alpha and beta.
  inline Element gamma() {
    return pairs(V2, {{"00", "0"}, {"01", "10"}, {"1", "11"}});
  }

  ////////////////////////////////////////////////////////////////////////
  // Reference implementations
  ////////////////////////////////////////////////////////////////////////

  inline bool ref_prefix(std::string const& a, std::string const& b) {
    return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
  }

  inline bool ref_incomparable(Word const& u, Word const& v) {
    for (std::size_t i = 0; i < u.dims(); ++i) {
      if (!ref_prefix(u.coords[i], v.coords[i]) && !ref_prefix(v.coords[i], u.coords[i])) {
        return true;
      }
    }
    return false;
  }

  // Exact measure test with a common denominator.
  inline bool ref_is_basis(Signature const& sig, std::vector<Word> const& ws) {
    using boost::multiprecision::cpp_int;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      for (std::size_t j = i + 1; j < ws.size(); ++j) {
        if (!ref_incomparable(ws[i], ws[j])) {
          return false;
        }
      }
    }
    std::size_t depth = 0;
    for (auto const& w : ws) {
      depth = std::max(depth, w.total_length());
    }
    cpp_int const base = sig.alphabet();
    cpp_int       total = 0, whole = 1;
    for (std::size_t i = 0; i < depth; ++i) {
      whole *= base;
    }
    for (auto const& w : ws) {
      cpp_int share = 1;
      for (std::size_t i = 0; i < depth - w.total_length(); ++i) {
        share *= base;
      }
      total += share;
    }
    return total == whole;
  }

  // Higman words only: image of an explicit finite word under g by scanning
  // the rules for the matching domain prefix.
  inline std::string ref_apply(Element const& g, std::string const& x) {
    for (auto const& r : g.rules()) {
      auto const& d = r.domain.coords[0];
      if (ref_prefix(d, x)) {
        return r.range.coords[0] + x.substr(d.size());
      }
    }
    return "?";
  }

  // All depth-k Higman words.
  inline std::vector<std::string> level(unsigned n, unsigned k) {
    std::vector<std::string> out{""};
    for (unsigned i = 0; i < k; ++i) {
      std::vector<std::string> next;
      for (auto const& s : out) {
        for (unsigned a = 0; a < n; ++a) {
          next.push_back(s + static_cast<char>(a));
        }
      }
      out = std::move(next);
    }
    return out;
  }

  // Image of a box given by explicit coordinate strings: the rule whose
  // domain is a prefix in every coordinate, with the suffixes carried over.
  inline std::vector<std::string> ref_apply_box(Element const& g,
                                                std::vector<std::string> const& x) {
    for (auto const& r : g.rules()) {
      bool hit = true;
      for (std::size_t i = 0; i < x.size(); ++i) {
        hit = hit && ref_prefix(r.domain.coords[i], x[i]);
      }
      if (hit) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < x.size(); ++i) {
          out.push_back(r.range.coords[i] + x[i].substr(r.domain.coords[i].size()));
        }
        return out;
      }
    }
    return {"?"};
  }

  // Pointwise comparison on every box of depth k in each coordinate, for k
  // past the deepest coordinate of any rule on either side.
  inline bool ref_same_action(Element const& f, Element const& g) {
    std::size_t depth = 0;
    for (auto const* e : {&f, &g}) {
      for (auto const& r : e->rules()) {
        for (auto const* w : {&r.domain, &r.range}) {
          for (auto const& c : w->coords) {
            depth = std::max(depth, c.size());
          }
        }
      }
    }
    auto const& sig   = f.signature();
    auto const  strip = level(sig.alphabet(), static_cast<unsigned>(depth) + 1);
    std::vector<std::size_t> index(sig.dims(), 0);
    for (;;) {
      std::vector<std::string> x;
      for (auto i : index) {
        x.push_back(strip[i]);
      }
      if (ref_apply_box(f, x) != ref_apply_box(g, x)) {
        return false;
      }
      std::size_t k = 0;
      while (k < index.size() && ++index[k] == strip.size()) {
        index[k++] = 0;
      }
      if (k == index.size()) {
        return true;
      }
    }
  }

  inline std::vector<Word> random_antichain(Signature const& sig, std::mt19937_64& rng,
                                            std::size_t splits) {
    std::vector<Word> leaves{Word::root(sig)};
    for (std::size_t s = 0; s < splits; ++s) {
      std::size_t const i     = rng() % leaves.size();
      std::size_t const coord = rng() % sig.dims();
      Word const        w     = leaves[i];
      leaves.erase(leaves.begin() + static_cast<long>(i));
      for (unsigned a = 0; a < sig.alphabet(); ++a) {
        leaves.push_back(append(w, coord, a));
      }
    }
    std::vector<Word> out;
    for (auto const& w : leaves) {
      if (rng() % 2) {
        out.push_back(w);
      }
    }
    return out;
  }

}  // namespace vgen::test

#endif  // VGEN_TESTS_SUPPORT_HPP_
