#include "vgen/rewriting.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace vgen {

  Expr Expr::gen(CycleDecomposition c) {
    Expr e;
    e.kind_ = Kind::Gen;
    e.gen_  = std::move(c);
    return e;
  }

  Expr Expr::inverse(Expr inner) {
    Expr e;
    e.kind_ = Kind::Inverse;
    e.children_.push_back(std::move(inner));
    return e;
  }

  Expr Expr::product(std::vector<Expr> factors) {
    Expr e;
    e.kind_     = Kind::Product;
    e.children_ = std::move(factors);
    return e;
  }

  Expr Expr::conjugate(Expr inner, Expr by) {
    Expr e;
    e.kind_ = Kind::Conjugate;
    e.children_.push_back(std::move(inner));
    e.children_.push_back(std::move(by));
    return e;
  }

  Element evaluate(Signature const& sig, Expr const& e) {
    switch (e.kind()) {
      case Expr::Kind::Gen:
        return to_element(e.generator());
      case Expr::Kind::Inverse:
        return invert(evaluate(sig, e.children()[0]));
      case Expr::Kind::Product: {
        Element acc = identity(sig);
        for (auto const& f : e.children()) {
          acc = compose(acc, evaluate(sig, f));
        }
        return acc;
      }
      case Expr::Kind::Conjugate:
        return conjugate(evaluate(sig, e.children()[0]),
                         evaluate(sig, e.children()[1]));
    }
    throw std::logic_error("bad expression kind");
  }

  std::string to_string(Expr const& e) {
    switch (e.kind()) {
      case Expr::Kind::Gen:
        return to_string(e.generator());
      case Expr::Kind::Inverse:
        return "[" + to_string(e.children()[0]) + "]^-1";
      case Expr::Kind::Product: {
        if (e.children().empty()) {
          return "id";
        }
        std::string out;
        for (std::size_t i = 0; i < e.children().size(); ++i) {
          out += (i > 0 ? " * " : "") + to_string(e.children()[i]);
        }
        return out;
      }
      case Expr::Kind::Conjugate:
        return "[" + to_string(e.children()[0]) + "]^[" + to_string(e.children()[1])
             + "]";
    }
    return "";
  }

  namespace {
    void collect(Expr const& e, std::vector<CycleDecomposition>& out) {
      if (e.kind() == Expr::Kind::Gen) {
        if (std::find(out.begin(), out.end(), e.generator()) == out.end()) {
          out.push_back(e.generator());
        }
        return;
      }
      for (auto const& c : e.children()) {
        collect(c, out);
      }
    }
  }  // namespace

  std::vector<CycleDecomposition> generators_of(Expr const& e) {
    std::vector<CycleDecomposition> out;
    collect(e, out);
    return out;
  }

  namespace {
    void require(bool cond, char const* msg) {
      if (!cond) {
        throw std::invalid_argument(msg);
      }
    }

    // Uniform depth of w, or -1.
    long uniform_depth(Word const& w) {
      long d = static_cast<long>(w.coords.front().size());
      for (auto const& c : w.coords) {
        if (static_cast<long>(c.size()) != d) {
          return -1;
        }
      }
      return d;
    }

    bool deep_enough(Word const& w, std::size_t k) {
      return std::all_of(w.coords.begin(), w.coords.end(), [&](Digits const& c) {
        return c.size() >= k;
      });
    }

    struct Split {
      Word head;  // depth-k prefix
      Word tail;
    };

    Split split(Word const& w, std::size_t k) {
      Split s;
      for (auto const& c : w.coords) {
        s.head.coords.push_back(c.substr(0, k));
        s.tail.coords.push_back(c.substr(k));
      }
      return s;
    }

    Word least_avoiding(Signature const&         sig,
                        std::size_t              k,
                        std::vector<Word> const& avoid) {
      auto const size = level_size(sig, static_cast<unsigned>(k));
      for (std::uint64_t i = 0; i < size; ++i) {
        Word x = nary_expansion(sig, i, static_cast<unsigned>(k));
        if (std::find(avoid.begin(), avoid.end(), x) == avoid.end()) {
          return x;
        }
      }
      throw std::invalid_argument("no free depth-k word");
    }

    Expr transposition(Signature const& sig, Word a, Word b) {
      return Expr::gen(CycleDecomposition(sig, {{std::move(a), std::move(b)}}));
    }

    std::size_t check_base_word(Signature const& sig, Word const& u0) {
      check_word(sig, u0);
      long const k = uniform_depth(u0);
      require(k >= 2, "base word must have uniform depth at least 2");
      return static_cast<std::size_t>(k);
    }
  }  // namespace

  Expr express_transposition(Signature const& sig,
                             Word const&      u0,
                             Word const&      v_in,
                             Word const&      w_in) {
    std::size_t const k = check_base_word(sig, u0);
    check_word(sig, v_in);
    check_word(sig, w_in);
    require(deep_enough(v_in, k) && deep_enough(w_in, k),
            "words must be at least as deep as the base word");
    require(incomparable(v_in, w_in), "words must be incomparable");

    Word  v = v_in, w = w_in;
    Split sv = split(v, k), sw = split(w, k);
    if (sv.head != u0 && sw.head != u0) {
      return Expr::conjugate(transposition(sig, u0, v), transposition(sig, u0, w));
    }
    if (sv.head != u0) {
      std::swap(v, w);
      std::swap(sv, sw);
    }
    if (sw.head == u0) {
      Word const u1 = least_avoiding(sig, k, {u0});
      return Expr::conjugate(
          transposition(sig, u0, concat(u1, sw.tail)),
          Expr::product({transposition(sig, u0, concat(u1, sv.tail)),
                         transposition(sig, u0, u1)}));
    }
    Word const x = least_avoiding(sig, k, {sv.head, sw.head});
    return Expr::conjugate(transposition(sig, u0, w),
                           Expr::product({transposition(sig, u0, concat(x, sv.tail)),
                                          transposition(sig, u0, x)}));
  }

  namespace {
    struct ThreeCycleContext {
      Signature sig;
      Word      u0, u1;  // the caller's base pair
      bool      swapped; // generators are (u1 u0 t) = (u0 u1 t)^-1
      std::size_t k;

      Expr gen(Word const& t) const {
        auto e = Expr::gen(CycleDecomposition(sig, {{u0, u1, t}}));
        return swapped ? Expr::inverse(std::move(e)) : e;
      }
    };

    // Expresses (p q r) using generators (U0 U1 t), where (U0, U1) is the
    // context pair, possibly swapped.  Returns nothing if this arrangement
    // does not fit one of the ladder's normalized cases.
    std::optional<Expr> three_cycle_case(ThreeCycleContext const& ctx,
                                         Word const&              U0,
                                         Word const&              U1,
                                         Word const&              p,
                                         Word const&              q,
                                         Word const&              r) {
      auto const sp = split(p, ctx.k), sq = split(q, ctx.k), sr = split(r, ctx.k);
      auto const in_prefixes = [&](Word const& x) {
        return x == sp.head || x == sq.head || x == sr.head;
      };
      bool const has0 = in_prefixes(U0);
      bool const has1 = in_prefixes(U1);

      if (!has0 && !has1) {
        return Expr::conjugate(ctx.gen(r), Expr::product({ctx.gen(q), ctx.gen(p)}));
      }
      if (has0 && !has1) {
        if (sp.head != U0) {
          return std::nullopt;
        }
        Word const x = least_avoiding(ctx.sig, ctx.k,
                                      {U0, U1, sp.head, sq.head, sr.head});
        Word const xp = concat(x, sp.tail);
        Word const xq = concat(x, sq.tail);
        if (sq.head == U0 && sr.head == U0) {
          return Expr::conjugate(
              ctx.gen(concat(x, sr.tail)),
              Expr::product({ctx.gen(xq), ctx.gen(xp), ctx.gen(x)}));
        }
        if (sq.head != U0 && sr.head != U0) {
          return Expr::conjugate(ctx.gen(r),
                                 Expr::product({ctx.gen(q), ctx.gen(xp), ctx.gen(x)}));
        }
        if (sq.head == U0) {
          return Expr::conjugate(ctx.gen(r),
                                 Expr::product({ctx.gen(xq), ctx.gen(xp), ctx.gen(x)}));
        }
        return std::nullopt;
      }
      if (has0 && has1) {
        if (sp.head != U0 || sq.head != U1) {
          return std::nullopt;
        }
        Word const x  = least_avoiding(ctx.sig, ctx.k, {sp.head, sq.head, sr.head});
        Word const y  = least_avoiding(ctx.sig, ctx.k, {sp.head, sq.head, sr.head, x});
        auto const by = Expr::product({ctx.gen(concat(y, sq.tail)),
                                       ctx.gen(concat(x, sp.tail)),
                                       ctx.gen(y),
                                       ctx.gen(x)});
        if (sr.head != sp.head && sr.head != sq.head) {
          return Expr::conjugate(ctx.gen(r), by);
        }
        if (sr.head == sq.head) {
          return Expr::conjugate(ctx.gen(concat(y, sr.tail)), by);
        }
        return std::nullopt;
      }
      return std::nullopt;
    }
  }  // namespace

  Expr express_three_cycle(Signature const& sig,
                           Word const&      u0,
                           Word const&      u1,
                           Word const&      v,
                           Word const&      w,
                           Word const&      z) {
    require(!sig.is_brin() && sig.arity % 2 == 1, "three-cycle ladder needs odd n");
    std::size_t const k = check_base_word(sig, u0);
    check_word(sig, u1);
    require(uniform_depth(u1) == static_cast<long>(k) && u0 != u1,
            "base words must be distinct and of equal depth");
    for (auto const* t : {&v, &w, &z}) {
      check_word(sig, *t);
      require(deep_enough(*t, k), "words must be at least as deep as the base words");
    }
    require(is_antichain({v, w, z}), "words must be pairwise incomparable");

    for (bool swapped : {false, true}) {
      ThreeCycleContext ctx{sig, u0, u1, swapped, k};
      Word const&       U0 = swapped ? u1 : u0;
      Word const&       U1 = swapped ? u0 : u1;
      for (bool reflected : {false, true}) {
        // (v w z)^-1 = (v z w)
        std::vector<Word> cyc = reflected ? std::vector<Word>{v, z, w}
                                          : std::vector<Word>{v, w, z};
        for (int rot = 0; rot < 3; ++rot) {
          auto e = three_cycle_case(ctx, U0, U1, cyc[rot % 3], cyc[(rot + 1) % 3],
                                    cyc[(rot + 2) % 3]);
          if (e) {
            return reflected ? Expr::inverse(std::move(*e)) : std::move(*e);
          }
        }
      }
    }
    throw std::logic_error("three-cycle ladder found no case");
  }

  std::vector<CycleDecomposition> double_transposition_split(Signature const& sig,
                                                             Word const&      u1,
                                                             Word const&      v1,
                                                             Word const&      u2,
                                                             Word const&      v2) {
    require(!sig.is_brin() && sig.arity % 2 == 1, "double transposition split needs odd n");
    for (auto const* t : {&u1, &v1, &u2, &v2}) {
      check_word(sig, *t);
    }
    require(incomparable(u1, v1) && incomparable(u2, v2),
            "each transposition needs incomparable words");

    for (unsigned k = 0; k <= 16; ++k) {
      auto const size = level_size(sig, k);
      for (std::uint64_t i1 = 0; i1 < size; ++i1) {
        Word const x1 = nary_expansion(sig, i1, k);
        for (std::uint64_t i2 = 0; i2 < size; ++i2) {
          Word const x2 = nary_expansion(sig, i2, k);
          Word const a = concat(u1, x1), b = concat(v1, x1);
          Word const c = concat(u2, x2), d = concat(v2, x2);
          if (!is_antichain({a, b, c, d})) {
            continue;
          }
          if (k == 0) {
            return {CycleDecomposition(sig, {{u1, v1}, {u2, v2}})};
          }
          std::vector<std::pair<Word, Word>> first, last;
          for (std::uint64_t j = 0; j < size; ++j) {
            Word const x = nary_expansion(sig, j, k);
            if (j != i1) {
              first.emplace_back(concat(u1, x), concat(v1, x));
            }
            if (j != i2) {
              last.emplace_back(concat(u2, x), concat(v2, x));
            }
          }
          std::vector<CycleDecomposition> out;
          auto pair_up = [&](std::vector<std::pair<Word, Word>> const& ts) {
            for (std::size_t j = 0; j + 1 < ts.size(); j += 2) {
              out.emplace_back(sig, std::vector<Cycle>{{ts[j].first, ts[j].second},
                                                       {ts[j + 1].first, ts[j + 1].second}});
            }
          };
          pair_up(first);
          out.emplace_back(sig, std::vector<Cycle>{{a, b}, {c, d}});
          pair_up(last);
          return out;
        }
      }
    }
    throw std::logic_error("no splitting depth found");
  }

}  // namespace vgen
