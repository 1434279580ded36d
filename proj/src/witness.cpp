#include "vgen/witness.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace vgen {

  namespace {
    void require(bool cond, std::string const& msg) {
      if (!cond) {
        throw std::invalid_argument(msg);
      }
    }

    bool is_prime_flavor(Signature const& sig) {
      return sig.family == Family::HigmanVnPrime;
    }

    Word child(Word const& u, unsigned letter) {
      return append(u, 0, letter);
    }

    // u0 for Higman signatures, u.0 (every coordinate) for Brin.
    Word zero_word(Signature const& sig, Word const& u) {
      return sig.is_brin() ? concat(u, bold(sig, 0)) : child(u, 0);
    }

    // The letters c used to split a cylinder one level in every coordinate.
    std::vector<Word> split_letters(Signature const& sig) {
      std::vector<Word> out;
      auto const        count = level_size(sig, 1);
      for (std::uint64_t j = 0; j < count; ++j) {
        out.push_back(nary_expansion(sig, j, 1));
      }
      return out;
    }

    CycleDecomposition cycle_of(Signature const& sig, std::vector<Word> words) {
      return CycleDecomposition(sig, {std::move(words)});
    }

    // The generator attached to a frame word w.
    CycleDecomposition link_cycle(Signature const& sig, Word const& u, Word const& w) {
      if (is_prime_flavor(sig)) {
        return cycle_of(sig, {child(u, 0), child(u, 1), w});
      }
      return cycle_of(sig, {zero_word(sig, u), w});
    }

    CycleDecomposition alpha_for(Signature const& sig) {
      return is_prime_flavor(sig) ? alpha_prime_cycles(sig) : alpha_cycles(sig);
    }

    Element relabel(Element const& g, Signature const& sig) {
      return Element::unchecked(sig, g.rules());
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Frame
  ////////////////////////////////////////////////////////////////////////

  Word displaced_word(Element const& g) {
    require(!is_identity(g), "element is trivial");
    auto const& sig = g.signature();
    Element     r   = reduce(g);
    for (auto const& [d, img] : r.rules()) {
      if (d == img) {
        continue;
      }
      if (incomparable(d, img)) {
        return d;
      }
      // Comparable: in the lowest coordinate where the words differ one is
      // a proper prefix of the other.  Extending d there by a letter other
      // than the longer word's next letter separates d from its image.
      for (std::size_t i = 0; i < sig.dims(); ++i) {
        Digits const& a = d.coords[i];
        Digits const& b = img.coords[i];
        if (a == b) {
          continue;
        }
        Digits const& longer = a.size() < b.size() ? b : a;
        auto const    next   = static_cast<unsigned char>(
            longer[std::min(a.size(), b.size())]);
        unsigned const letter = next == 0 ? 1 : 0;
        return append(d, i, letter);
      }
    }
    throw std::logic_error("nontrivial element without a moved rule");
  }

  std::vector<Word> Frame::basis() const {
    std::vector<Word> out{u, v};
    out.insert(out.end(), links.begin(), links.end());
    return out;
  }

  Frame build_frame(Element const& g) {
    Frame f;
    f.u    = displaced_word(g);
    auto v = prefix_image(g, f.u);
    if (!v) {
      throw std::logic_error("displaced word has no prefix image");
    }
    f.v = *v;
    auto const completion = extend_to_basis(g.signature(), {f.u, f.v});
    for (auto const& w : completion.words()) {
      if (w != f.u && w != f.v) {
        f.links.push_back(w);
      }
    }
    return f;
  }

  ////////////////////////////////////////////////////////////////////////
  // Transporters
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Replaces the lexicographically greatest word of leaves not in special
    // by its children in coordinate 0.
    void split_leaf(Signature const&         sig,
                    std::vector<Word>&       leaves,
                    std::vector<Word> const& special) {
      for (std::size_t i = leaves.size(); i-- > 0;) {
        if (std::find(special.begin(), special.end(), leaves[i]) != special.end()) {
          continue;
        }
        Word const w = leaves[i];
        leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(i));
        for (auto const& c : children(sig, w, 0)) {
          leaves.push_back(c);
        }
        std::sort(leaves.begin(), leaves.end());
        return;
      }
      throw std::invalid_argument("transporter: no spare cylinder to split");
    }

    std::vector<Word> without(std::vector<Word> const& all,
                              std::vector<Word> const& special) {
      std::vector<Word> out;
      for (auto const& w : all) {
        if (std::find(special.begin(), special.end(), w) == special.end()) {
          out.push_back(w);
        }
      }
      return out;
    }
  }  // namespace

  Element transporter(Signature const&         sig,
                      std::vector<Word> const& sources,
                      std::vector<Word> const& targets,
                      Word const&              u,
                      bool                     even) {
    require(sources.size() == targets.size(),
            "transporter: sources and targets differ in size");
    for (auto const* list : {&sources, &targets}) {
      for (auto const& w : *list) {
        check_word(sig, w);
        require(contains(u, w), "transporter: word outside the cylinder");
      }
    }
    auto dom = extend_within(sig, u, sources).words();
    auto ran = extend_within(sig, u, targets).words();
    while (dom.size() < ran.size()) {
      split_leaf(sig, dom, sources);
    }
    while (ran.size() < dom.size()) {
      split_leaf(sig, ran, targets);
    }

    std::vector<Rule> rules;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      rules.push_back(Rule{sources[i], targets[i]});
    }
    auto const rest_dom = without(dom, sources);
    auto const rest_ran = without(ran, targets);
    for (std::size_t i = 0; i < rest_dom.size(); ++i) {
      rules.push_back(Rule{rest_dom[i], rest_ran[i]});
    }
    auto const completion = extend_to_basis(sig, {u});
    for (auto const& w : completion.words()) {
      if (w != u) {
        rules.push_back(Rule{w, w});
      }
    }
    Element result(sig, std::move(rules));
    if (even && lex_sign(result) < 0) {
      require(!rest_ran.empty(), "transporter: no spare cylinder for the parity fix");
      Word const& spare = rest_ran.front();
      result = compose(result, to_element(cycle_of(sig, {child(spare, 0), child(spare, 1)})));
    }
    return result;
  }

  Element transporter(Signature const& sig,
                      Word const&      s,
                      Word const&      t,
                      Word const&      u,
                      bool             even) {
    return transporter(sig, std::vector<Word>{s}, std::vector<Word>{t}, u, even);
  }

  ////////////////////////////////////////////////////////////////////////
  // Partner
  ////////////////////////////////////////////////////////////////////////

  std::vector<CycleDecomposition> PartnerParts::factors() const {
    std::vector<CycleDecomposition> out{x, y};
    out.insert(out.end(), z.begin(), z.end());
    return out;
  }

  namespace {
    // Inverse of a modulo m by the extended Euclidean algorithm.
    BigInt mod_inverse(BigInt const& a, BigInt const& m) {
      BigInt old_r = m, cur_r = a % m, old_s = 0, cur_s = 1;
      while (cur_r != 0) {
        BigInt const q = old_r / cur_r;
        old_r          = std::exchange(cur_r, old_r - q * cur_r);
        old_s          = std::exchange(cur_s, old_s - q * cur_s);
      }
      if (old_r != 1) {
        throw std::invalid_argument("orders are not coprime");
      }
      old_s %= m;
      return old_s < 0 ? old_s + m : old_s;
    }
  }  // namespace

  BigInt crt_exponent(std::vector<BigInt> const& orders, std::size_t i) {
    BigInt total = 1;
    for (auto const& o : orders) {
      total *= o;
    }
    BigInt const& oi   = orders.at(i);
    BigInt const  rest = total / oi;
    if (oi == 1) {
      return 0;
    }
    return (rest * mod_inverse(rest % oi, oi)) % total;
  }

  std::vector<std::string> check_parts(PartnerParts const& parts) {
    std::vector<std::string> failures;
    auto const               factors = parts.factors();
    std::vector<Element>     elems;
    for (auto const& f : factors) {
      elems.push_back(to_element(f));
    }
    Element product = identity(parts.sig);
    for (auto const& e : elems) {
      product = compose(product, e);
    }
    if (!equals(product, parts.h)) {
      failures.push_back("h is not the product of its factors");
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (order(factors[i]) != parts.orders[i]) {
        failures.push_back("factor " + std::to_string(i) + " has the wrong order");
      }
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        if (!equals(compose(elems[i], elems[j]), compose(elems[j], elems[i]))) {
          failures.push_back("factors " + std::to_string(i) + " and " + std::to_string(j)
                             + " do not commute");
        }
        if (boost::multiprecision::gcd(parts.orders[i], parts.orders[j]) != 1) {
          failures.push_back("factors " + std::to_string(i) + " and " + std::to_string(j)
                             + " have non-coprime orders");
        }
      }
      if (!equals(power(parts.h, parts.exponents[i]), elems[i])) {
        failures.push_back("exponent " + std::to_string(i) + " does not recover its factor");
      }
    }
    for (std::size_t i = 0; i < parts.z.size(); ++i) {
      auto const& cycles = parts.z[i].cycles();
      if (cycles.size() != 1 || cycles[0].size() != parts.primes[i]) {
        failures.push_back("z_" + std::to_string(i) + " is not a p_i-cycle");
      }
    }
    return failures;
  }

  std::string seed_citation(Signature const& sig) {
    switch (sig.family) {
      case Family::HigmanVn:
        return "Prop3.9i";
      case Family::HigmanVnPrime:
        return "Prop3.9ii";
      case Family::BrinMV:
        return "Prop3.17";
    }
    return "";
  }

  std::string closure_citation(Signature const& sig) {
    switch (sig.family) {
      case Family::HigmanVn:
        return "Prop3.6i";
      case Family::HigmanVnPrime:
        return "Prop3.6ii";
      case Family::BrinMV:
        return "Prop3.13";
    }
    return "";
  }

  std::string kind_name(StepKind k) {
    switch (k) {
      case StepKind::PowerExtract:
        return "PowerExtract";
      case StepKind::ConjugateBy:
        return "ConjugateBy";
      case StepKind::ProductOf:
        return "ProductOf";
      case StepKind::LocalizedMember:
        return "LocalizedMember";
      case StepKind::CitedClosure:
        return "CitedClosure";
    }
    return "";
  }

  StepKind parse_kind(std::string_view s) {
    for (auto k : {StepKind::PowerExtract, StepKind::ConjugateBy, StepKind::ProductOf,
                   StepKind::LocalizedMember, StepKind::CitedClosure}) {
      if (kind_name(k) == s) {
        return k;
      }
    }
    throw std::invalid_argument("unknown step kind: " + std::string(s));
  }

  namespace {
    class CertificateBuilder {
     public:
      explicit CertificateBuilder(Signature sig) : sig_(sig) {}

      void add(std::string id, StepKind kind, nlohmann::json args,
               std::optional<Element> claim = std::nullopt) {
        steps_.push_back(Step{std::move(id), kind, std::move(args), std::move(claim)});
      }

      void member(std::string id, std::string const& group, Element claim) {
        add(std::move(id), StepKind::LocalizedMember,
            {{"group", group}, {"justification", "member"}}, std::move(claim));
      }

      std::vector<Step> take() { return std::move(steps_); }

     private:
      Signature         sig_;
      std::vector<Step> steps_;
    };

    std::string idx(std::string const& base, std::size_t i) {
      return base + std::to_string(i);
    }
  }  // namespace

  Partner build_partner(Element const& g_in, Signature const& flavor) {
    require(g_in.signature().same_space(flavor),
            "element and family act on different spaces");
    if (is_prime_flavor(flavor)) {
      require(flavor.arity % 2 == 1 && flavor.arity >= 3, "V_n' needs odd n >= 3");
    }
    Element const g = relabel(g_in, flavor);
    require(!is_identity(g), "element is trivial");
    if (is_prime_flavor(flavor)) {
      require(lex_sign(g) > 0, "element is not in V_n' (odd parity)");
    }
    Signature const& sig = flavor;
    bool const       prime = is_prime_flavor(sig);

    Partner       out;
    PartnerParts& P = out.parts;
    P.sig           = sig;
    P.frame         = build_frame(g);
    Word const& u   = P.frame.u;
    Word const& v   = P.frame.v;

    auto const alpha_c = alpha_for(sig);
    auto const beta_c  = beta(sig);
    P.x                = localize(alpha_c, u);
    P.y                = localize(beta_c, v);
    P.a                = fixed_word(alpha_c, 3);
    P.b                = fixed_word(beta_c, 3);

    std::size_t const ell  = P.frame.links.size();
    std::uint64_t const base = sig.is_brin() ? 2 : sig.arity;
    unsigned            digits = 0;
    for (std::uint64_t reach = 1; reach < ell + 1; reach *= base) {
      ++digits;
    }
    Word const ua = concat(u, P.a);
    for (std::size_t i = 0; i <= ell; ++i) {
      Word suffix = Word::root(sig);
      std::uint64_t rest = i;
      Digits        d(digits, '\0');
      for (unsigned j = digits; j-- > 0;) {
        d[j] = static_cast<char>(rest % base);
        rest /= base;
      }
      suffix.coords[0] = d;
      P.branches.push_back(concat(ua, suffix));
    }
    P.link_words.push_back(concat(v, P.b));
    P.link_words.insert(P.link_words.end(), P.frame.links.begin(), P.frame.links.end());

    std::uint64_t const q        = choose_primes(sig).q;
    BigInt const        x_order  = order(P.x);
    std::uint64_t       p0       = 5;
    while (x_order % p0 == 0 || p0 == q) {
      p0 = next_prime_after(p0);
    }
    if (p0 >= q) {
      throw std::logic_error("p_0 does not lie below q");
    }
    P.primes.push_back(p0);
    for (std::uint64_t p = q; P.primes.size() <= ell;) {
      p = next_prime_after(p);
      P.primes.push_back(p);
    }

    std::vector<unsigned> depth;
    for (std::size_t i = 0; i <= ell; ++i) {
      auto const p = P.primes[i];
      unsigned   r = min_digits(sig, p - 1);
      depth.push_back(r);
      std::vector<Word> cycle;
      for (std::uint64_t j = 0; j + 1 < p; ++j) {
        cycle.push_back(concat(P.branches[i], nary_expansion(sig, j, r)));
      }
      cycle.push_back(P.link_words[i]);
      P.z.push_back(cycle_of(sig, std::move(cycle)));
    }

    std::vector<Cycle> all;
    for (auto const& f : P.factors()) {
      all.insert(all.end(), f.cycles().begin(), f.cycles().end());
      P.orders.push_back(order(f));
    }
    P.h = to_element(CycleDecomposition(sig, std::move(all)));
    for (std::size_t i = 0; i < P.orders.size(); ++i) {
      P.exponents.push_back(crt_exponent(P.orders, i));
    }

    // Certificate.
    CertificateBuilder cb(sig);
    auto const         factors = P.factors();
    std::vector<std::string> factor_ids{"x", "y"};
    for (std::size_t i = 0; i <= ell; ++i) {
      factor_ids.push_back(idx("z", i));
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      cb.add(factor_ids[i], StepKind::PowerExtract,
             {{"base", "h"}, {"exponent", P.exponents[i].str()}},
             to_element(factors[i]));
    }
    cb.add("betau", StepKind::ConjugateBy, {{"target", "y"}, {"by", "g^-1"}},
           to_element(localize(beta_c, u)));
    cb.add("Gu", StepKind::LocalizedMember,
           {{"cylinder", word_to_json(sig, u)},
            {"justification", seed_citation(sig)},
            {"generators", nlohmann::json::array({"x", "betau"})}});
    cb.add("Gv", StepKind::LocalizedMember,
           {{"cylinder", word_to_json(sig, v)},
            {"justification", "conjugate"},
            {"group", "Gu"},
            {"by", "g"}});

    Word const u0 = zero_word(sig, u);
    for (std::size_t i = 0; i <= ell; ++i) {
      auto const        p   = P.primes[i];
      unsigned const    r   = depth[i];
      Word const&       ui  = P.branches[i];
      Word const&       wi  = P.link_words[i];
      Word const        src = concat(ui, nary_expansion(sig, 0, r));
      // s_i cancels all of z_i except a transposition (three-cycle for V_n').
      std::uint64_t const s_len = prime ? p - 2 : p - 1;
      Element const       s     = to_element(localize(sigma(sig, s_len, r), ui));
      cb.member(idx("s", i), "Gu", s);
      Element chi;
      CycleDecomposition t_cycle;
      if (prime) {
        Word const src2 = concat(ui, nary_expansion(sig, p - 2, r));
        t_cycle         = cycle_of(sig, {src, src2, wi});
        chi = transporter(sig, {src, src2}, {child(u, 0), child(u, 1)}, u, true);
      } else {
        t_cycle = cycle_of(sig, {src, wi});
        chi     = transporter(sig, src, u0, u);
      }
      cb.add(idx("t", i), StepKind::ProductOf,
             {{"factors", nlohmann::json::array({idx("s", i) + "^-1", idx("z", i)})}}, to_element(t_cycle));
      cb.member(idx("chi", i), "Gu", chi);
      cb.add(idx("link", i), StepKind::ConjugateBy,
             {{"target", idx("t", i)}, {"by", idx("chi", i)}},
             to_element(link_cycle(sig, u, wi)));
    }

    Word const  vb      = P.link_words[0];
    auto const  letters = split_letters(sig);
    nlohmann::json bridge_refs = nlohmann::json::array();
    for (std::size_t j = 0; j < letters.size(); ++j) {
      Word const& c = letters[j];
      Element     phi;
      CycleDecomposition claim;
      if (prime) {
        phi   = transporter(sig, {child(u, 0), child(u, 1)},
                            {concat(child(u, 0), c), concat(child(u, 1), c)}, u, true);
        claim = cycle_of(sig, {concat(child(u, 0), c), concat(child(u, 1), c), concat(v, c)});
      } else {
        phi   = transporter(sig, u0, concat(u0, c), u);
        claim = cycle_of(sig, {concat(u0, c), concat(v, c)});
      }
      Element const psi = transporter(sig, vb, concat(v, c), v, prime);
      cb.member(idx("phi", j), "Gu", phi);
      cb.member(idx("psi", j), "Gv", psi);
      cb.add(idx("pi", j), StepKind::ProductOf,
             {{"factors", nlohmann::json::array({idx("phi", j), idx("psi", j)})}}, compose(phi, psi));
      cb.add(idx("bridge", j), StepKind::ConjugateBy,
             {{"target", "link0"}, {"by", idx("pi", j)}}, to_element(claim));
      bridge_refs.push_back(idx("bridge", j));
    }
    cb.add("bridge", StepKind::ProductOf, {{"factors", bridge_refs}},
           to_element(link_cycle(sig, u, v)));

    nlohmann::json basis = nlohmann::json::array();
    nlohmann::json links = nlohmann::json::array({"bridge"});
    for (auto const& w : P.frame.basis()) {
      basis.push_back(word_to_json(sig, w));
    }
    for (std::size_t i = 1; i <= ell; ++i) {
      links.push_back(idx("link", i));
    }
    cb.add("closure", StepKind::CitedClosure,
           {{"citation", closure_citation(sig)},
            {"group", "Gu"},
            {"basis", basis},
            {"links", links}});

    out.certificate = Certificate{sig, g, P.h, cb.take(), closure_citation(sig)};
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Verification
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct Group {
      Word cylinder;
    };

    class Checker {
     public:
      explicit Checker(Certificate const& cert) : cert_(cert), sig_(cert.sig) {
        known_.emplace("g", cert.g);
        known_.emplace("h", cert.h);
      }

      // Throws std::invalid_argument with a message on failure.
      void check(Step const& step) {
        require(!step.id.empty() && step.id != "g" && step.id != "h"
                    && !known_.count(step.id) && !groups_.count(step.id),
                "step id is empty or reused");
        switch (step.kind) {
          case StepKind::PowerExtract:
            check_power(step);
            break;
          case StepKind::ConjugateBy:
            check_conjugate(step);
            break;
          case StepKind::ProductOf:
            check_product(step);
            break;
          case StepKind::LocalizedMember:
            check_member(step);
            return;
          case StepKind::CitedClosure:
            check_closure(step);
            return;
        }
        known_.emplace(step.id, *step.claim);
      }

      std::optional<std::string> const& closure() const { return closure_; }

     private:
      Element resolve(nlohmann::json const& ref) const {
        require(ref.is_string(), "reference must be a string");
        std::string name    = ref.get<std::string>();
        bool        inverse = false;
        if (name.size() > 3 && name.compare(name.size() - 3, 3, "^-1") == 0) {
          inverse = true;
          name.resize(name.size() - 3);
        }
        auto it = known_.find(name);
        require(it != known_.end(), "unknown reference '" + name + "'");
        return inverse ? invert(it->second) : it->second;
      }

      Element const& claim(Step const& step) const {
        require(step.claim.has_value(), "step has no claimed element");
        require(step.claim->signature().same_space(sig_), "claim signature mismatch");
        return *step.claim;
      }

      void check_power(Step const& step) {
        auto const base = resolve(step.args.at("base"));
        auto const& e   = step.args.at("exponent");
        BigInt      exponent(e.is_string() ? e.get<std::string>()
                                           : std::to_string(e.get<long long>()));
        require(exponent >= 0, "negative exponent");
        require(equals(power(base, exponent), claim(step)),
                "power of " + step.args.at("base").get<std::string>()
                    + " does not equal the claim");
      }

      void check_conjugate(Step const& step) {
        auto const target = resolve(step.args.at("target"));
        auto const by     = resolve(step.args.at("by"));
        require(equals(conjugate(target, by), claim(step)),
                "conjugate does not equal the claim");
      }

      void check_product(Step const& step) {
        auto const& factors = step.args.at("factors");
        require(factors.is_array() && !factors.empty(), "factors must be a nonempty list");
        Element acc = identity(sig_);
        for (auto const& f : factors) {
          acc = compose(acc, resolve(f));
        }
        require(equals(acc, claim(step)), "product does not equal the claim");
      }

      void check_member(Step const& step) {
        auto const just = step.args.at("justification").get<std::string>();
        if (just == seed_citation(sig_)) {
          require(!step.claim, "group declarations carry no claim");
          Word const cyl  = word_from_json(sig_, step.args.at("cylinder"));
          auto const& gen = step.args.at("generators");
          require(gen.is_array() && gen.size() == 2, "seed needs two generators");
          auto const first  = resolve(gen[0]);
          auto const second = resolve(gen[1]);
          require(equals(first, localize(to_element(alpha_for(sig_)), cyl)),
                  "first generator is not the localized alpha");
          require(equals(second, localize(to_element(beta(sig_)), cyl)),
                  "second generator is not the localized beta");
          groups_.emplace(step.id, Group{cyl});
          return;
        }
        if (just == "conjugate") {
          require(!step.claim, "group declarations carry no claim");
          Word const cyl  = word_from_json(sig_, step.args.at("cylinder"));
          auto const from = group(step.args.at("group"));
          auto const by   = resolve(step.args.at("by"));
          auto const img  = prefix_image(by, from.cylinder);
          require(img && *img == cyl, "conjugating element does not carry the cylinder");
          groups_.emplace(step.id, Group{cyl});
          return;
        }
        require(just == "member", "unknown justification '" + just + "'");
        auto const  grp = group(step.args.at("group"));
        auto const& c   = claim(step);
        require(is_localized_in(c, grp.cylinder), "element moves points outside the cylinder");
        if (is_prime_flavor(sig_)) {
          require(lex_sign(c) > 0, "element is odd");
        }
        known_.emplace(step.id, c);
      }

      void check_closure(Step const& step) {
        require(!closure_, "more than one closure step");
        auto const citation = step.args.at("citation").get<std::string>();
        require(citation == closure_citation(sig_), "citation does not fit the family");
        auto const grp = group(step.args.at("group"));
        std::vector<Word> basis;
        for (auto const& w : step.args.at("basis")) {
          basis.push_back(word_from_json(sig_, w));
        }
        require(basis.size() >= 2, "basis too small");
        require(is_basis(sig_, basis), "hypothesis words do not form a basis");
        require(basis[0] == grp.cylinder, "first basis word is not the group's cylinder");
        auto const& links = step.args.at("links");
        require(links.is_array() && links.size() + 1 == basis.size(),
                "need exactly one link per basis word after the first");
        for (std::size_t i = 1; i < basis.size(); ++i) {
          auto const expected = to_element(link_cycle(sig_, basis[0], basis[i]));
          require(equals(resolve(links[i - 1]), expected),
                  "link for basis word " + to_string(sig_, basis[i]) + " has the wrong shape");
        }
        closure_ = citation;
      }

      Group group(nlohmann::json const& ref) const {
        require(ref.is_string(), "group reference must be a string");
        auto it = groups_.find(ref.get<std::string>());
        require(it != groups_.end(), "unknown group '" + ref.get<std::string>() + "'");
        return it->second;
      }

      Certificate const&             cert_;
      Signature                      sig_;
      std::map<std::string, Element> known_;
      std::map<std::string, Group>   groups_;
      std::optional<std::string>     closure_;
    };
  }  // namespace

  VerifyReport verify_certificate(Certificate const& cert) {
    VerifyReport report;
    auto         fail_global = [&](std::string msg) {
      if (!report.first_failure) {
        report.first_failure = "certificate";
        report.first_message = std::move(msg);
      }
    };
    try {
      require(cert.g.signature().same_space(cert.sig) && cert.h.signature().same_space(cert.sig),
              "g or h lives in another space");
      if (is_prime_flavor(cert.sig)) {
        require(lex_sign(cert.g) > 0, "g is odd");
        require(lex_sign(cert.h) > 0, "h is odd");
      }
    } catch (std::exception const& e) {
      fail_global(e.what());
      return report;
    }

    Checker checker(cert);
    for (auto const& step : cert.steps) {
      StepReport r{step.id, kind_name(step.kind), true, "ok"};
      try {
        checker.check(step);
      } catch (std::exception const& e) {
        r.ok      = false;
        r.message = e.what();
        if (!report.first_failure) {
          report.first_failure = step.id;
          report.first_message = r.message;
        }
      }
      report.steps.push_back(std::move(r));
    }
    if (!checker.closure()) {
      fail_global("no closure step was verified");
    } else if (*checker.closure() != cert.conclusion) {
      fail_global("conclusion does not match the closure step");
    }
    report.ok = !report.first_failure;
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  nlohmann::json certificate_to_json(Certificate const& cert) {
    nlohmann::json j;
    j["family"] = family_name(cert.sig.family);
    j["arity"]  = cert.sig.arity;
    j["g"]      = element_to_json(cert.g);
    j["h"]      = element_to_json(cert.h);
    auto steps  = nlohmann::json::array();
    for (auto const& s : cert.steps) {
      steps.push_back({{"id", s.id},
                       {"kind", kind_name(s.kind)},
                       {"args", s.args},
                       {"claim", s.claim ? element_to_json(*s.claim) : nlohmann::json()}});
    }
    j["steps"]      = std::move(steps);
    j["conclusion"] = cert.conclusion;
    return j;
  }

  Certificate certificate_from_json(nlohmann::json const& j) {
    require(j.is_object(), "certificate must be a JSON object");
    Certificate cert;
    Family const   fam   = parse_family(j.at("family").get<std::string>());
    unsigned const arity = j.at("arity").get<unsigned>();
    cert.sig = fam == Family::BrinMV          ? Signature::brin(arity)
             : fam == Family::HigmanVnPrime ? Signature::higman_prime(arity)
                                            : Signature::higman(arity);
    cert.g = relabel(element_from_json(j.at("g")), cert.sig);
    cert.h = relabel(element_from_json(j.at("h")), cert.sig);
    for (auto const& s : j.at("steps")) {
      Step step;
      step.id   = s.at("id").get<std::string>();
      step.kind = parse_kind(s.at("kind").get<std::string>());
      step.args = s.at("args");
      if (s.contains("claim") && !s.at("claim").is_null()) {
        step.claim = relabel(element_from_json(s.at("claim")), cert.sig);
      }
      cert.steps.push_back(std::move(step));
    }
    cert.conclusion = j.at("conclusion").get<std::string>();
    return cert;
  }

}  // namespace vgen
