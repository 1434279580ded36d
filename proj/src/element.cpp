#include "vgen/element.hpp"

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

    void check_space(Element const& f, Element const& g) {
      require(f.signature().same_space(g.signature()),
              "signature mismatch between elements");
    }

    Signature combined(Signature const& a, Signature const& b) {
      if (a.family == b.family) {
        return a;
      }
      return Signature{a.is_brin() ? Family::BrinMV : Family::HigmanVn,
                       a.arity};
    }

    void sort_rules(std::vector<Rule>& rules) {
      std::sort(rules.begin(), rules.end(), [](Rule const& x, Rule const& y) {
        return x.domain < y.domain;
      });
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Element
  ////////////////////////////////////////////////////////////////////////

  Element::Element(Signature sig, std::vector<Rule> rules)
      : sig_(sig), rules_(std::move(rules)) {
    require(!rules_.empty(), "element needs at least one rule");
    for (auto const& r : rules_) {
      check_word(sig_, r.domain);
      check_word(sig_, r.range);
    }
    require(is_basis(sig_, domain_words()), "domain words do not form a basis");
    require(is_basis(sig_, range_words()), "range words do not form a basis");
    sort_rules(rules_);
  }

  Element Element::unchecked(Signature sig, std::vector<Rule> rules) {
    Element e;
    e.sig_   = sig;
    e.rules_ = std::move(rules);
    sort_rules(e.rules_);
    return e;
  }

  Element Element::identity(Signature const& sig) {
    return unchecked(sig, {Rule{Word::root(sig), Word::root(sig)}});
  }

  std::vector<Word> Element::domain_words() const {
    std::vector<Word> out;
    out.reserve(rules_.size());
    for (auto const& r : rules_) {
      out.push_back(r.domain);
    }
    return out;
  }

  std::vector<Word> Element::range_words() const {
    std::vector<Word> out;
    out.reserve(rules_.size());
    for (auto const& r : rules_) {
      out.push_back(r.range);
    }
    return out;
  }

  Element identity(Signature const& sig) {
    return Element::identity(sig);
  }

  Element compose(Element const& f, Element const& g) {
    check_space(f, g);
    WordIndex                index(g.domain_words());
    std::vector<Rule>        out;
    std::vector<std::size_t> hits;
    out.reserve(std::max(f.size(), g.size()));
    for (auto const& [a, b] : f.rules()) {
      hits.clear();
      index.comparable(b, hits);
      for (auto j : hits) {
        auto const& [c, d] = g.rules()[j];
        auto m             = meet(b, c);
        if (!m) {
          continue;
        }
        out.push_back(
            Rule{concat(a, strip_prefix(b, *m)), concat(d, strip_prefix(c, *m))});
      }
    }
    auto result = Element::unchecked(combined(f.signature(), g.signature()),
                                     std::move(out));
    if (!result.signature().is_brin()) {
      return reduce(result);
    }
    return result;
  }

  Element invert(Element const& g) {
    std::vector<Rule> out;
    out.reserve(g.size());
    for (auto const& [a, b] : g.rules()) {
      out.push_back(Rule{b, a});
    }
    return Element::unchecked(g.signature(), std::move(out));
  }

  bool equals(Element const& f, Element const& g) {
    check_space(f, g);
    WordIndex                index(g.domain_words());
    std::vector<std::size_t> hits;
    for (auto const& [a, b] : f.rules()) {
      hits.clear();
      index.comparable(a, hits);
      for (auto j : hits) {
        auto const& [c, d] = g.rules()[j];
        auto m             = meet(a, c);
        if (!m) {
          continue;
        }
        if (concat(b, strip_prefix(a, *m)) != concat(d, strip_prefix(c, *m))) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_identity(Element const& g) {
    return std::all_of(g.rules().begin(), g.rules().end(), [](Rule const& r) {
      return r.domain == r.range;
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Reduction
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool last_letter_is(Digits const& d, unsigned a) {
      return !d.empty() && static_cast<unsigned char>(d.back()) == a;
    }

    Element reduce_higman(Element const& g) {
      unsigned const    n     = g.signature().alphabet();
      std::vector<Rule> rules = g.rules();
      bool              changed = true;
      while (changed) {
        changed = false;
        std::vector<Rule> next;
        next.reserve(rules.size());
        std::size_t i = 0;
        while (i < rules.size()) {
          bool merged = false;
          if (i + n <= rules.size()) {
            Digits const& d0 = rules[i].domain.coords[0];
            Digits const& r0 = rules[i].range.coords[0];
            if (last_letter_is(d0, 0) && last_letter_is(r0, 0)) {
              std::size_t const dl = d0.size() - 1;
              std::size_t const rl = r0.size() - 1;
              merged               = true;
              for (unsigned a = 1; a < n && merged; ++a) {
                Digits const& da = rules[i + a].domain.coords[0];
                Digits const& ra = rules[i + a].range.coords[0];
                merged = da.size() == dl + 1 && ra.size() == rl + 1
                         && last_letter_is(da, a) && last_letter_is(ra, a)
                         && da.compare(0, dl, d0, 0, dl) == 0
                         && ra.compare(0, rl, r0, 0, rl) == 0;
              }
              if (merged) {
                next.push_back(Rule{Word({d0.substr(0, dl)}),
                                    Word({r0.substr(0, rl)})});
                i += n;
                changed = true;
              }
            }
          }
          if (!merged) {
            next.push_back(std::move(rules[i]));
            ++i;
          }
        }
        rules = std::move(next);
      }
      return Element::unchecked(g.signature(), std::move(rules));
    }

    Word parent(Word w, std::size_t coord) {
      w.coords[coord].pop_back();
      return w;
    }

    // If x and y are the two children of a common parent along coordinate
    // coord (x in the 0 branch), returns that parent.
    std::optional<Word> sibling_parent(Word const& x, Word const& y, std::size_t coord) {
      std::optional<std::size_t> diff;
      for (std::size_t i = 0; i < x.dims(); ++i) {
        if (x.coords[i] != y.coords[i]) {
          if (diff) {
            return std::nullopt;
          }
          diff = i;
        }
      }
      if (diff != coord) {
        return std::nullopt;
      }
      Digits const& a = x.coords[*diff];
      Digits const& b = y.coords[*diff];
      if (a.size() != b.size() || !last_letter_is(a, 0) || !last_letter_is(b, 1)
          || a.compare(0, a.size() - 1, b, 0, b.size() - 1) != 0) {
        return std::nullopt;
      }
      return parent(x, *diff);
    }

    Element reduce_brin(Element const& g) {
      std::map<Word, Word> rules;
      for (auto const& r : g.rules()) {
        rules.emplace(r.domain, r.range);
      }
      std::size_t const dims    = g.signature().dims();
      bool              changed = true;
      while (changed) {
        changed = false;
        // Lowest coordinate first; each pass merges disjoint sibling pairs.
        for (std::size_t coord = 0; coord < dims; ++coord) {
          std::vector<std::pair<Word, Word>> merged;
          std::vector<Word>                  consumed;
          for (auto it = rules.begin(); it != rules.end(); ++it) {
            if (!last_letter_is(it->first.coords[coord], 0)) {
              continue;
            }
            Word sib                 = it->first;
            sib.coords[coord].back() = 1;
            auto jt                  = rules.find(sib);
            if (jt == rules.end()) {
              continue;
            }
            auto range_parent = sibling_parent(it->second, jt->second, coord);
            if (!range_parent) {
              continue;
            }
            merged.emplace_back(parent(it->first, coord), std::move(*range_parent));
            consumed.push_back(it->first);
            consumed.push_back(std::move(sib));
          }
          for (auto const& w : consumed) {
            rules.erase(w);
          }
          for (auto& [d, r] : merged) {
            rules.emplace(std::move(d), std::move(r));
          }
          changed = changed || !merged.empty();
        }
      }
      std::vector<Rule> out;
      out.reserve(rules.size());
      for (auto& [d, r] : rules) {
        out.push_back(Rule{d, r});
      }
      return Element::unchecked(g.signature(), std::move(out));
    }
  }  // namespace

  Element reduce(Element const& g) {
    if (g.signature().is_brin()) {
      return reduce_brin(g);
    }
    return reduce_higman(g);
  }

  Element conjugate(Element const& x, Element const& y) {
    return compose(compose(invert(y), x), y);
  }

  Element localize(Element const& g, Word const& u) {
    check_word(g.signature(), u);
    if (u.is_root()) {
      return g;
    }
    std::vector<Rule> out;
    out.reserve(g.size() + u.total_length() * g.signature().alphabet());
    for (auto const& [a, b] : g.rules()) {
      out.push_back(Rule{concat(u, a), concat(u, b)});
    }
    auto const completion = extend_to_basis(g.signature(), {u});
    for (auto const& w : completion.words()) {
      if (w != u) {
        out.push_back(Rule{w, w});
      }
    }
    return Element::unchecked(g.signature(), std::move(out));
  }

  ////////////////////////////////////////////////////////////////////////
  // Powers
  ////////////////////////////////////////////////////////////////////////

  bool is_permutation_form(Element const& g) {
    auto dom = g.domain_words();  // already sorted
    auto ran = g.range_words();
    std::sort(ran.begin(), ran.end());
    return dom == ran;
  }

  namespace {
    // Position of each rule's range among the domain words; requires
    // permutation form.
    std::vector<std::size_t> permutation_indices(Element const& g) {
      auto                     dom = g.domain_words();
      std::vector<std::size_t> image(dom.size());
      for (std::size_t i = 0; i < dom.size(); ++i) {
        auto it = std::lower_bound(dom.begin(), dom.end(), g.rules()[i].range);
        image[i] = static_cast<std::size_t>(it - dom.begin());
      }
      return image;
    }

    Element power_permutation(Element const& g, BigInt const& e) {
      auto                     image = permutation_indices(g);
      std::size_t const        n     = image.size();
      std::vector<std::size_t> result(n);
      std::vector<bool>        seen(n, false);
      std::vector<std::size_t> cycle;
      for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) {
          continue;
        }
        cycle.clear();
        for (std::size_t i = start; !seen[i]; i = image[i]) {
          seen[i] = true;
          cycle.push_back(i);
        }
        std::size_t const len   = cycle.size();
        std::size_t const shift = static_cast<std::size_t>(e % len);
        for (std::size_t j = 0; j < len; ++j) {
          result[cycle[j]] = cycle[(j + shift) % len];
        }
      }
      std::vector<Rule> rules;
      rules.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        rules.push_back(Rule{g.rules()[i].domain, g.rules()[result[i]].domain});
      }
      return Element::unchecked(g.signature(), std::move(rules));
    }
  }  // namespace

  Element power(Element const& g, BigInt const& e) {
    require(e >= 0, "power: exponent must be nonnegative");
    if (e == 0) {
      return identity(g.signature());
    }
    if (is_permutation_form(g)) {
      // (A, s, A)^e = (A, s^e, A): exponent reduced per cycle.
      auto result = power_permutation(g, e);
      return g.signature().is_brin() ? result : reduce(result);
    }
    Element result = identity(g.signature());
    Element base   = reduce(g);
    BigInt  rest   = e;
    while (true) {
      if ((rest & 1) != 0) {
        result = reduce(compose(result, base));
      }
      rest >>= 1;
      if (rest == 0) {
        break;
      }
      base = reduce(compose(base, base));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Support and cylinders
  ////////////////////////////////////////////////////////////////////////

  // A rule acts as the identity on a nonempty open subset of its domain
  // cylinder iff it is trivial (domain == range), which is what the two
  // predicates below rely on.

  bool fixes_cylinder(Element const& g, Word const& u) {
    check_word(g.signature(), u);
    for (auto const& r : g.rules()) {
      if (r.domain != r.range && !incomparable(r.domain, u)) {
        return false;
      }
    }
    return true;
  }

  bool is_localized_in(Element const& g, Word const& u) {
    check_word(g.signature(), u);
    for (auto const& r : g.rules()) {
      if (r.domain != r.range && !contains(u, r.domain)) {
        return false;
      }
    }
    return true;
  }

  std::vector<Word> moved_cylinder_upper(Element const& g) {
    Element           r = g.signature().is_brin() ? g : reduce(g);
    std::vector<Word> out;
    for (auto const& rule : r.rules()) {
      if (rule.domain != rule.range) {
        out.push_back(rule.domain);
      }
    }
    return out;
  }

  std::vector<Rule> image_pieces(Element const& g, Word const& u) {
    check_word(g.signature(), u);
    std::vector<Rule> out;
    for (auto const& [a, b] : g.rules()) {
      if (auto m = meet(a, u)) {
        out.push_back(Rule{*m, concat(b, strip_prefix(a, *m))});
      }
    }
    return out;
  }

  std::optional<Word> prefix_image(Element const& g, Word const& u) {
    std::optional<Word> result;
    for (auto const& [piece, image] : image_pieces(g, u)) {
      Word suffix = strip_prefix(u, piece);
      Word v;
      for (std::size_t i = 0; i < suffix.dims(); ++i) {
        Digits const& img = image.coords[i];
        Digits const& suf = suffix.coords[i];
        if (img.size() < suf.size()
            || img.compare(img.size() - suf.size(), suf.size(), suf) != 0) {
          return std::nullopt;
        }
        v.coords.push_back(img.substr(0, img.size() - suf.size()));
      }
      if (result && *result != v) {
        return std::nullopt;
      }
      result = std::move(v);
    }
    return result;
  }

  int lex_sign(Element const& g) {
    require(!g.signature().is_brin() && g.signature().arity % 2 == 1,
            "lex_sign is only an invariant for odd Higman arity");
    auto const               n = g.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return g.rules()[x].range < g.rules()[y].range;
    });
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
      rank[order[i]] = i;
    }
    std::vector<bool> seen(n, false);
    std::size_t       cycles = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[i]) {
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = rank[j]) {
          seen[j] = true;
        }
      }
    }
    return (n - cycles) % 2 == 0 ? 1 : -1;
  }

  ////////////////////////////////////////////////////////////////////////
  // Eventually periodic points
  ////////////////////////////////////////////////////////////////////////

  namespace {
    PeriodicCoord canonical(PeriodicCoord c) {
      require(!c.period.empty(), "period must be nonempty");
      std::size_t const len = c.period.size();
      for (std::size_t t = 1; t <= len; ++t) {
        if (len % t != 0) {
          continue;
        }
        bool ok = true;
        for (std::size_t i = t; i < len && ok; ++i) {
          ok = c.period[i] == c.period[i - t];
        }
        if (ok) {
          c.period.resize(t);
          break;
        }
      }
      while (!c.preperiod.empty() && c.preperiod.back() == c.period.back()) {
        c.preperiod.pop_back();
        std::rotate(c.period.rbegin(), c.period.rbegin() + 1, c.period.rend());
      }
      return c;
    }

    // Drops the first k letters of the point coordinate.
    PeriodicCoord drop(PeriodicCoord const& c, std::size_t k) {
      if (k <= c.preperiod.size()) {
        return PeriodicCoord{c.preperiod.substr(k), c.period};
      }
      std::size_t const s   = (k - c.preperiod.size()) % c.period.size();
      Digits            per = c.period.substr(s) + c.period.substr(0, s);
      return PeriodicCoord{Digits(), per};
    }
  }  // namespace

  EventuallyPeriodicPoint::EventuallyPeriodicPoint(
      std::vector<PeriodicCoord> coords) {
    for (auto& c : coords) {
      coords_.push_back(canonical(std::move(c)));
    }
  }

  EventuallyPeriodicPoint EventuallyPeriodicPoint::higman(Word const& pre,
                                                          Word const& per) {
    return EventuallyPeriodicPoint({PeriodicCoord{pre.coords.at(0),
                                                  per.coords.at(0)}});
  }

  Digits EventuallyPeriodicPoint::prefix(std::size_t i, std::size_t len) const {
    auto const& c = coords_.at(i);
    Digits      out(c.preperiod.substr(0, len));
    while (out.size() < len) {
      out += c.period;
    }
    out.resize(len);
    return out;
  }

  std::string to_string(Signature const& sig, EventuallyPeriodicPoint const& x) {
    std::string out;
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
      auto const& c = x.coords()[i];
      if (i > 0) {
        out += ", ";
      }
      out += to_string(sig.is_brin() ? Signature::higman(2) : sig,
                       Word({c.preperiod}))
             + "(" + to_string(sig.is_brin() ? Signature::higman(2) : sig,
                               Word({c.period}))
             + ")*";
    }
    return sig.is_brin() ? "(" + out + ")" : out;
  }

  EventuallyPeriodicPoint apply_to_point(Element const&                 g,
                                         EventuallyPeriodicPoint const& x) {
    std::size_t const dims = g.signature().dims();
    require(x.coords().size() == dims, "point has the wrong dimension");
    std::vector<std::size_t> depth(dims, 0);
    for (auto const& r : g.rules()) {
      for (std::size_t i = 0; i < dims; ++i) {
        depth[i] = std::max(depth[i], r.domain.coords[i].size());
      }
    }
    Word probe;
    for (std::size_t i = 0; i < dims; ++i) {
      probe.coords.push_back(x.prefix(i, depth[i]));
    }
    for (auto const& [a, b] : g.rules()) {
      if (!contains(a, probe)) {
        continue;
      }
      std::vector<PeriodicCoord> out;
      for (std::size_t i = 0; i < dims; ++i) {
        auto tail = drop(x.coords()[i], a.coords[i].size());
        out.push_back(PeriodicCoord{b.coords[i] + tail.preperiod, tail.period});
      }
      return EventuallyPeriodicPoint(std::move(out));
    }
    throw std::logic_error("apply_to_point: domain is not a basis");
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  nlohmann::json element_to_json(Element const& g) {
    auto const&    sig = g.signature();
    nlohmann::json j;
    j["family"] = family_name(sig.family);
    j["arity"]  = sig.arity;
    auto rules  = nlohmann::json::array();
    for (auto const& [a, b] : g.rules()) {
      rules.push_back(nlohmann::json::array({word_to_json(sig, a), word_to_json(sig, b)}));
    }
    j["rules"] = std::move(rules);
    return j;
  }

  Element element_from_json(nlohmann::json const& j) {
    require(j.is_object() && j.contains("family") && j.contains("arity")
                && j.contains("rules"),
            "element JSON needs family, arity and rules");
    Family const   fam   = parse_family(j.at("family").get<std::string>());
    unsigned const arity = j.at("arity").get<unsigned>();
    Signature      sig   = fam == Family::BrinMV ? Signature::brin(arity)
                           : fam == Family::HigmanVnPrime
                               ? Signature::higman_prime(arity)
                               : Signature::higman(arity);
    std::vector<Rule> rules;
    for (auto const& r : j.at("rules")) {
      require(r.is_array() && r.size() == 2, "rule must be a [domain, range] pair");
      rules.push_back(Rule{word_from_json(sig, r[0]), word_from_json(sig, r[1])});
    }
    return Element(sig, std::move(rules));
  }

}  // namespace vgen
