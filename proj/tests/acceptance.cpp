// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "support.hpp"
#include "vgen/permgroup.hpp"
#include "vgen/random.hpp"
#include "vgen/rewriting.hpp"
#include "vgen/witness.hpp"

using namespace vgen;
using namespace vgen::test;
using Clock = std::chrono::steady_clock;

namespace {
  double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  }

  struct Outcome {
    bool        ok = true;
    std::string detail;

    void expect(bool cond, std::string const& what) {
      if (!cond && ok) {
        ok     = false;
        detail = what;
      }
    }
  };

  std::vector<Signature> fuzz_families() {
    return {Signature::higman(2),       Signature::higman(3),       Signature::higman(4),
            Signature::higman(5),       Signature::higman_prime(3), Signature::higman_prime(5),
            Signature::brin(1),         Signature::brin(2),         Signature::brin(3)};
  }

  Word random_word(Signature const& sig, std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    std::vector<Digits> coords(sig.dims());
    for (auto& c : coords) {
      for (std::size_t len = lo + rng() % (hi - lo + 1); len > 0; --len) {
        c.push_back(static_cast<char>(rng() % sig.alphabet()));
      }
    }
    return Word(coords);
  }

  std::vector<Word> random_incomparable(Signature const& sig, std::mt19937_64& rng,
                                        std::size_t count, std::size_t lo, std::size_t hi) {
    for (;;) {
      std::vector<Word> ws;
      for (std::size_t i = 0; i < count; ++i) {
        ws.push_back(random_word(sig, rng, lo, hi));
      }
      if (is_antichain(ws)) {
        return ws;
      }
    }
  }

  Element expand_once(Element const& g, std::mt19937_64& rng) {
    auto const& sig   = g.signature();
    auto        rules = g.rules();
    std::size_t i     = rng() % rules.size();
    Rule const  r     = rules[i];
    rules.erase(rules.begin() + static_cast<long>(i));
    for (unsigned a = 0; a < sig.alphabet(); ++a) {
      rules.push_back(Rule{append(r.domain, 0, a), append(r.range, 0, a)});
    }
    return Element(sig, std::move(rules));
  }

  Step& step_named(Certificate& c, std::string const& id) {
    for (auto& s : c.steps) {
      if (s.id == id) {
        return s;
      }
    }
    throw std::runtime_error("no step " + id);
  }

  ////////////////////////////////////////////////////////////////////////

  Outcome point_actions() {
    Outcome o;
    auto const a = alpha(V2);
    auto const b = to_element(beta(V2));
    auto const c = gamma();
    auto const x = EventuallyPeriodicPoint::higman(W(""), W("10"));
    struct Golden {
      char const*    name;
      Element const* g;
      char const*    pre;
      char const*    per;
    };
    for (auto const& [name, g, pre, per] :
         {Golden{"alpha", &a, "110", "10"}, Golden{"beta", &b, "110", "01"},
          Golden{"gamma", &c, "11", "01"}}) {
      auto const start = Clock::now();
      auto const y     = apply_to_point(*g, x);
      double const t   = seconds_since(start);
      o.expect(y == EventuallyPeriodicPoint::higman(W(pre), W(per)),
               std::string(name) + " image is " + to_string(V2, y));
      o.expect(t < 1e-3, std::string(name) + " took " + std::to_string(t) + "s");
    }
    return o;
  }

  Outcome worked_example() {
    Outcome    o;
    auto const start = Clock::now();
    auto const p     = build_partner(E(V2, "(00 01)"), V2);
    auto const& P    = p.parts;
    o.expect(P.orders == std::vector<BigInt>{6, 7, 5, 11}, "factor orders differ");
    BigInt lcm = 1;
    for (auto const& f : P.orders) {
      lcm = boost::multiprecision::lcm(lcm, f);
    }
    o.expect(lcm == 2310, "order of h is " + lcm.str());
    o.expect(order(*to_cycles(P.h)) == 2310, "order of h from its cycles differs");
    o.expect(P.exponents.at(0) == 385, "exponent for x is " + P.exponents.at(0).str());
    o.expect(equals(power(P.h, 385), to_element(P.x)), "h^385 is not x");
    o.expect(verify_certificate(p.certificate).ok, "certificate rejected");
    double const t = seconds_since(start);
    o.expect(t < 1.0, "took " + std::to_string(t) + "s");
    return o;
  }

  Outcome two_cycle_lemma() {
    Outcome    o;
    auto const start = Clock::now();
    int        count = 0;
    for (unsigned n = 7; n <= 30; ++n) {
      for (unsigned a = 2; a < n; ++a) {
        for (unsigned b = a; b < n; ++b) {
          ++count;
          o.expect(verify_two_cycle_alternating(n, a, b),
                   "fails at n=" + std::to_string(n) + " a=" + std::to_string(a)
                       + " b=" + std::to_string(b));
        }
      }
    }
    double const t = seconds_since(start);
    o.expect(t < 300, "took " + std::to_string(t) + "s");
    if (o.ok) {
      o.detail = std::to_string(count) + " instances in " + std::to_string(t) + "s";
    }
    return o;
  }

  Outcome level_three() {
    Outcome    o;
    auto const start = Clock::now();
    struct Case {
      Signature                     sig;
      std::optional<FullGroupClass> expected;
    };
    std::ostringstream record;
    for (auto const& [sig, expected] :
         {Case{Signature::higman(2), FullGroupClass::Symmetric},
          Case{Signature::higman(3), FullGroupClass::Alternating},
          Case{Signature::higman(4), FullGroupClass::Alternating},
          Case{Signature::brin(1), FullGroupClass::Symmetric},
          Case{Signature::brin(2), std::nullopt}}) {
      GroupHandle g(level_size(sig, 3),
                    {project_level(zeta(sig), 3), project_level(beta(sig), 3)});
      auto const cls = classify_full(g);
      o.expect(cls != FullGroupClass::Proper, to_string(sig) + " misses the alternating group");
      if (expected) {
        o.expect(cls == *expected, to_string(sig) + " is " + to_string(cls));
      }
      record << to_string(sig) << "=" << to_string(cls) << " ";
    }
    double const t = seconds_since(start);
    o.expect(t < 120, "took " + std::to_string(t) + "s");
    if (o.ok) {
      o.detail = record.str();
    }
    return o;
  }

  Outcome fuzz() {
    Outcome         o;
    auto const      start = Clock::now();
    std::mt19937_64 rng(20240601);
    int             runs = 0;
    for (auto const& sig : fuzz_families()) {
      for (int t = 0; t < 200; ++t) {
        auto const g = random_element(sig, 1 + rng() % 6, rng);
        auto const p = build_partner(g, sig);
        auto const r = verify_certificate(p.certificate);
        std::string const where = to_string(sig) + " case " + std::to_string(t) + ": ";
        o.expect(r.ok, where + "certificate rejected at " + r.first_failure.value_or("?"));
        auto const bad = check_parts(p.parts);
        o.expect(bad.empty(), where + (bad.empty() ? "" : bad.front()));
        auto const f = p.parts.factors();
        for (std::size_t i = 0; i < f.size(); ++i) {
          for (std::size_t j = i + 1; j < f.size(); ++j) {
            auto const a = to_element(f[i]), b = to_element(f[j]);
            o.expect(equals(compose(a, b), compose(b, a)), where + "factors do not commute");
            o.expect(gcd(p.parts.orders[i], p.parts.orders[j]) == 1,
                     where + "orders not coprime");
          }
        }
        for (std::size_t i = 0; i < p.parts.z.size(); ++i) {
          o.expect(order(p.parts.z[i]) == p.parts.primes[i], where + "z_i order");
        }
        ++runs;
      }
    }
    double const t = seconds_since(start);
    o.expect(t < 600, "took " + std::to_string(t) + "s");
    if (o.ok) {
      o.detail = std::to_string(runs) + " partners in " + std::to_string(t) + "s";
    }
    return o;
  }

  Outcome rewriting() {
    Outcome         o;
    auto const      start = Clock::now();
    std::mt19937_64 rng(77);
    std::vector<Signature> const tsigs{Signature::higman(2), Signature::higman(3),
                                       Signature::higman(5), Signature::brin(2)};
    for (int t = 0; t < 100; ++t) {
      auto const&    sig = tsigs[t % tsigs.size()];
      unsigned const k   = 2 + t % 2;
      Word const     u0  = nary_expansion(sig, rng() % level_size(sig, k), k);
      auto const     vw  = random_incomparable(sig, rng, 2, k, k + 2);
      auto const     e   = express_transposition(sig, u0, vw[0], vw[1]);
      o.expect(equals(evaluate(sig, e), to_element(CycleDecomposition(sig, {{vw[0], vw[1]}}))),
               "transposition instance " + std::to_string(t));
    }
    for (int t = 0; t < 100; ++t) {
      auto const sig = Signature::higman(t % 2 ? 5 : 3);
      auto const n   = level_size(sig, 2);
      auto const i0  = rng() % n;
      auto const i1  = (i0 + 1 + rng() % (n - 1)) % n;
      auto const vwz = random_incomparable(sig, rng, 3, 2, 4);
      auto const e   = express_three_cycle(sig, nary_expansion(sig, i0, 2),
                                           nary_expansion(sig, i1, 2), vwz[0], vwz[1], vwz[2]);
      o.expect(equals(evaluate(sig, e),
                      to_element(CycleDecomposition(sig, {{vwz[0], vwz[1], vwz[2]}}))),
               "three-cycle instance " + std::to_string(t));
    }
    for (int t = 0; t < 100; ++t) {
      auto const sig   = Signature::higman(t % 2 ? 5 : 3);
      auto const a     = random_incomparable(sig, rng, 2, 1, 3);
      auto const b     = random_incomparable(sig, rng, 2, 1, 3);
      auto const parts = double_transposition_split(sig, a[0], a[1], b[0], b[1]);
      Element    prod  = identity(sig);
      for (auto const& p : parts) {
        prod = compose(prod, to_element(p));
      }
      auto const target = compose(to_element(CycleDecomposition(sig, {{a[0], a[1]}})),
                                  to_element(CycleDecomposition(sig, {{b[0], b[1]}})));
      o.expect(equals(prod, target), "split instance " + std::to_string(t));
    }
    double const t = seconds_since(start);
    o.expect(t < 60, "took " + std::to_string(t) + "s");
    return o;
  }

  Outcome generators() {
    Outcome o;
    for (unsigned n = 2; n <= 12; ++n) {
      auto const sig = Signature::higman(n);
      auto const d   = delta(sig);
      o.expect(d.cycles().size() == 1 && d.cycles()[0].size() == n + 1,
               "delta for n=" + std::to_string(n));
      if (n % 2 == 1) {
        auto const dp = delta_prime(sig);
        o.expect(dp.cycles().size() == 1 && dp.cycles()[0].size() == n + 2,
                 "delta' for n=" + std::to_string(n));
      }
      auto const          pq = choose_primes(sig);
      std::uint64_t const c  = std::uint64_t{n} * n * n;
      if (n == 2) {
        o.expect(pq.p == 2, "p at n=2");
      } else {
        o.expect(is_prime(pq.p) && 4 * pq.p >= c && 2 * pq.p < c,
                 "p out of range at n=" + std::to_string(n));
      }
      o.expect(is_prime(pq.q) && 4 * pq.q > 3 * c && pq.q < c,
               "q out of range at n=" + std::to_string(n));
    }
    auto const pq3 = choose_primes(Signature::higman(3));
    o.expect(pq3.p == 7 && pq3.q == 23, "(p,q) at n=3");
    for (unsigned m = 1; m <= 4; ++m) {
      auto const sig = Signature::brin(m);
      auto const d   = delta(sig);
      o.expect(d.cycles().size() == 1 && d.cycles()[0].size() == 2 * m + 1,
               "Brin delta for m=" + std::to_string(m));
      std::uint64_t const c = std::uint64_t{1} << (3 * m);
      auto const          q = choose_primes(sig).q;
      o.expect(is_prime(q) && 4 * q > 3 * c && q < c, "Brin q for m=" + std::to_string(m));
    }
    return o;
  }

  Outcome group_laws() {
    Outcome         o;
    std::mt19937_64 rng(99);
    for (auto const& sig : fuzz_families()) {
      for (int t = 0; t < 500; ++t) {
        auto const f = random_element(sig, 1 + rng() % 3, rng);
        auto const g = random_element(sig, 1 + rng() % 3, rng);
        auto const h = random_element(sig, 1 + rng() % 3, rng);
        std::string const where = to_string(sig) + " case " + std::to_string(t) + ": ";
        o.expect(equals(compose(compose(f, g), h), compose(f, compose(g, h))),
                 where + "associativity");
        o.expect(equals(compose(f, invert(f)), identity(sig)), where + "inverse");
        o.expect(equals(invert(compose(f, g)), compose(invert(g), invert(f))),
                 where + "inverse of a product");
        o.expect(equals(reduce(f), f), where + "reduce changes the map");
        o.expect(equals(reduce(reduce(f)), reduce(f)), where + "reduce not idempotent");
        o.expect(equals(f, g) == (reduce(f) == reduce(g)) || sig.is_brin(),
                 where + "reduce and equals disagree");
      }
    }
    for (auto const& sig : {Signature::higman(2), Signature::higman(3), Signature::higman(4),
                            Signature::higman(5)}) {
      for (int t = 0; t < 200; ++t) {
        auto const f = random_element(sig, 1 + rng() % 4, rng);
        auto       g = f;
        for (int k = 0, e = 1 + static_cast<int>(rng() % 4); k < e; ++k) {
          g = expand_once(g, rng);
        }
        o.expect(reduce(f) == reduce(g), to_string(sig) + " reduce is not unique");
      }
    }
    return o;
  }

  Outcome soundness() {
    Outcome    o;
    auto const base  = build_partner(E(V2, "(00 01)"), V2).certificate;
    int        found = 0;
    {
      auto c = base;
      step_named(c, "x").args["exponent"] = "386";
      auto const r = verify_certificate(c);
      o.expect(!r.ok && r.first_failure == "x", "wrong exponent not caught at x");
      found += !r.ok;
    }
    {
      auto c = base;
      step_named(c, "chi0").claim = E(V2, "(00000 1)");
      auto const r = verify_certificate(c);
      o.expect(!r.ok && r.first_failure == "chi0", "non-localized member not caught at chi0");
      found += !r.ok;
    }
    {
      auto c = base;
      step_named(c, "closure").args["links"] = nlohmann::json::array({"link1", "bridge"});
      auto const r = verify_certificate(c);
      o.expect(!r.ok && r.first_failure == "closure", "wrong closure links not caught");
      found += !r.ok;
    }
    o.expect(verify_certificate(base).ok, "untampered certificate rejected");
    if (o.ok) {
      o.detail = std::to_string(found) + " of 3 probes rejected";
    }
    return o;
  }
}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria{
      {"point actions", point_actions},
      {"worked example", worked_example},
      {"two-cycle lemma", two_cycle_lemma},
      {"level-three generation", level_three},
      {"partner fuzzing", fuzz},
      {"rewriting identities", rewriting},
      {"generator sanity", generators},
      {"group laws and reduction", group_laws},
      {"soundness probes", soundness}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.ok     = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.ok;
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << " ("
              << criteria[i].first << (o.detail.empty() ? "" : "; " + o.detail) << ")"
              << std::endl;
  }
  return all ? 0 : 1;
}
