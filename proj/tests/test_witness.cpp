#include <doctest.h>

#include <numeric>

#include "support.hpp"
#include "vgen/random.hpp"
#include "vgen/witness.hpp"

using namespace vgen;
using namespace vgen::test;

namespace {
  Step& step(Certificate& c, std::string const& id) {
    for (auto& s : c.steps) {
      if (s.id == id) {
        return s;
      }
    }
    throw std::runtime_error("no step " + id);
  }

  // Least nonnegative e below the product with the required residues, by
  // direct search.
  BigInt search_exponent(std::vector<std::uint64_t> const& orders, std::size_t i) {
    std::uint64_t total = 1;
    for (auto o : orders) {
      total *= o;
    }
    for (std::uint64_t e = 0; e < total; ++e) {
      bool ok = e % orders[i] == 1 % orders[i];
      for (std::size_t j = 0; j < orders.size() && ok; ++j) {
        ok = j == i || e % orders[j] == 0;
      }
      if (ok) {
        return e;
      }
    }
    return -1;
  }

  void check_partner(Element const& g, Signature const& flavor) {
    auto const p = build_partner(g, flavor);
    CHECK(check_parts(p.parts).empty());
    auto const report = verify_certificate(p.certificate);
    INFO(report.first_message);
    CHECK(report.ok);
    auto const& P = p.parts;
    CHECK(incomparable(P.frame.u, P.frame.v));
    CHECK(prefix_image(g, P.frame.u) == P.frame.v);
    CHECK(is_basis(flavor, P.frame.basis()));
    auto const f = P.factors();
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(order(f[i]) == P.orders[i]);
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        CHECK(gcd(P.orders[i], P.orders[j]) == 1);
      }
    }
    for (std::size_t i = 0; i < P.z.size(); ++i) {
      REQUIRE(P.z[i].cycles().size() == 1);
      CHECK(P.z[i].cycles()[0].size() == P.primes[i]);
    }
  }
}  // namespace

TEST_CASE("displaced_word") {
  CHECK(displaced_word(E(V2, "(00 01)")) == W("00"));
  auto const u = displaced_word(gamma());
  auto const img = prefix_image(gamma(), u);
  REQUIRE(img.has_value());
  CHECK(incomparable(u, *img));
  CHECK(displaced_word(E(V2, "(01 1)")) == W("01"));
  CHECK_THROWS(displaced_word(identity(V2)));
}

TEST_CASE("displaced_word on random elements") {
  std::mt19937_64 rng(1);
  for (auto const& sig : {V2, V3, Signature::brin(2)}) {
    for (int t = 0; t < 100; ++t) {
      auto const g = random_element(sig, 4, rng);
      auto const u = displaced_word(g);
      auto const v = prefix_image(g, u);
      REQUIRE(v.has_value());
      CHECK(ref_incomparable(u, *v));
    }
  }
}

TEST_CASE("build_frame") {
  auto const f = build_frame(E(V2, "(00 01)"));
  CHECK(f.u == W("00"));
  CHECK(f.v == W("01"));
  CHECK(f.links == Ws(V2, {"1"}));
  auto const swap = build_frame(E(V2, "(0 1)"));
  CHECK(swap.u == W("0"));
  CHECK(swap.v == W("1"));
  CHECK(swap.links.empty());
  auto const t3 = build_frame(E(V3, "(0 1)"));
  CHECK(t3.basis() == std::vector<Word>{W(V3, "0"), W(V3, "1"), W(V3, "2")});
}

TEST_CASE("transporter") {
  auto const t = transporter(V2, W("00"), W("01"), W("0"));
  CHECK(is_localized_in(t, W("0")));
  CHECK(prefix_image(t, W("00")) == W("01"));
  CHECK(equals(t, E(V2, "(00 01)")));
  CHECK(is_identity(transporter(V2, W("010"), W("010"), W("01"))));
  auto const V3p = Signature::higman_prime(3);
  auto const e   = transporter(V3p, W(V3, "000100"), W(V3, "0000"), W(V3, "00"), true);
  CHECK(is_localized_in(e, W(V3, "00")));
  CHECK(prefix_image(e, W(V3, "000100")) == W(V3, "0000"));
  CHECK(lex_sign(e) == 1);
  auto const two = transporter(V3p, {W(V3, "010"), W(V3, "02")}, {W(V3, "00"), W(V3, "01")},
                               W(V3, "0"), true);
  CHECK(prefix_image(two, W(V3, "010")) == W(V3, "00"));
  CHECK(prefix_image(two, W(V3, "02")) == W(V3, "01"));
  CHECK(lex_sign(two) == 1);
  CHECK_THROWS(transporter(V2, W("10"), W("01"), W("0")));
}

TEST_CASE("transporter on random pairs") {
  std::mt19937_64 rng(2);
  for (auto const& sig : {V2, Signature::higman_prime(3), Signature::higman_prime(5),
                          Signature::brin(2)}) {
    bool const even = sig.family == Family::HigmanVnPrime;
    for (int t = 0; t < 100; ++t) {
      Word const u = nary_expansion(sig, rng() % level_size(sig, 1), 1);
      auto       s = u, d = u;
      for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
        s = append(s, rng() % sig.dims(), static_cast<unsigned>(rng() % sig.alphabet()));
      }
      for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
        d = append(d, rng() % sig.dims(), static_cast<unsigned>(rng() % sig.alphabet()));
      }
      auto const e = transporter(sig, s, d, u, even);
      CHECK(is_localized_in(e, u));
      CHECK(prefix_image(e, s) == d);
      if (even) {
        CHECK(lex_sign(e) == 1);
      }
    }
  }
}

TEST_CASE("crt_exponent") {
  std::vector<BigInt> const orders{6, 7, 5, 11};
  CHECK(crt_exponent(orders, 0) == 385);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    CHECK(crt_exponent(orders, i) == search_exponent({6, 7, 5, 11}, i));
  }
}

TEST_CASE("worked example: (00 01) in V_2") {
  auto const g = E(V2, "(00 01)");
  auto const p = build_partner(g, V2);
  auto const& P = p.parts;
  CHECK(P.orders == std::vector<BigInt>{6, 7, 5, 11});
  CHECK(std::accumulate(P.orders.begin(), P.orders.end(), BigInt(1),
                        [](BigInt a, BigInt const& b) { return a * b; })
        == 2310);
  CHECK(P.exponents[0] == 385);
  CHECK(equals(to_element(P.x), E(V2, "(00000 00001)(0010 00110 00111)")));
  CHECK(equals(power(P.h, 385), to_element(P.x)));
  CHECK(equals(P.h, [&] {
    Element acc = identity(V2);
    for (auto const& f : P.factors()) {
      acc = compose(acc, to_element(f));
    }
    return acc;
  }()));
  CHECK(P.primes == std::vector<std::uint64_t>{5, 11});
  auto const report = verify_certificate(p.certificate);
  CHECK(report.ok);
  CHECK(p.certificate.conclusion == "Prop3.6i");
  // The links are the transpositions (000 01) and (000 1).
  auto const& closure = step(const_cast<Certificate&>(p.certificate), "closure");
  CHECK(closure.args["links"].size() == 2);
}

TEST_CASE("swap has no links") {
  auto const p = build_partner(E(V2, "(0 1)"), V2);
  CHECK(p.parts.z.size() == 1);
  CHECK(p.parts.factors().size() == 3);
  CHECK(verify_certificate(p.certificate).ok);
}

TEST_CASE("build_partner errors") {
  CHECK_THROWS_WITH(build_partner(identity(V2), V2), "element is trivial");
  auto const V3p = Signature::higman_prime(3);
  CHECK_THROWS(build_partner(E(V3, "(0 1)"), V3p));
  CHECK_THROWS(build_partner(E(V2, "(0 1)"), V3));
  CHECK_NOTHROW(build_partner(E(V3, "(0 1 2)"), V3p));
}

TEST_CASE("members of V_n' certificates are even") {
  auto const      V3p = Signature::higman_prime(3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto const p = build_partner(random_element(V3p, 3, rng), V3p);
    for (auto const& s : p.certificate.steps) {
      if (s.kind == StepKind::LocalizedMember && s.claim) {
        CHECK(lex_sign(*s.claim) == 1);
      }
    }
    CHECK(p.certificate.conclusion == "Prop3.6ii");
  }
}

TEST_CASE("partners of random elements verify") {
  std::mt19937_64 rng(4);
  for (auto const& sig : {V2, V3, Signature::higman(4), Signature::higman(5),
                          Signature::higman_prime(3), Signature::higman_prime(5),
                          Signature::brin(1), Signature::brin(2)}) {
    CAPTURE(to_string(sig));
    for (int t = 0; t < 10; ++t) {
      check_partner(random_element(sig, 1 + rng() % 5, rng), sig);
    }
  }
}

TEST_CASE("certificate JSON round trip") {
  std::mt19937_64 rng(5);
  for (auto const& sig : {V2, Signature::higman_prime(3), Signature::brin(2)}) {
    auto const p    = build_partner(random_element(sig, 3, rng), sig);
    auto const j    = certificate_to_json(p.certificate);
    auto const back = certificate_from_json(nlohmann::json::parse(j.dump()));
    CHECK(certificate_to_json(back) == j);
    CHECK(verify_certificate(back).ok);
    CHECK(j.contains("g"));
    CHECK(j.contains("h"));
    CHECK(j.contains("steps"));
    CHECK(j.contains("conclusion"));
  }
  CHECK_THROWS(certificate_from_json(nlohmann::json::parse(R"({"steps": 3})")));
}

TEST_CASE("tampered certificates are rejected") {
  auto const base = build_partner(E(V2, "(00 01)"), V2).certificate;

  SUBCASE("exponent off by one") {
    auto c = base;
    step(c, "x").args["exponent"] = "386";
    auto const r = verify_certificate(c);
    CHECK_FALSE(r.ok);
    CHECK(r.first_failure == "x");
  }
  SUBCASE("member moving points outside its cylinder") {
    auto c = base;
    step(c, "chi0").claim = E(V2, "(00000 1)");
    auto const r = verify_certificate(c);
    CHECK_FALSE(r.ok);
    CHECK(r.first_failure == "chi0");
  }
  SUBCASE("closure with the wrong links") {
    auto c = base;
    step(c, "closure").args["links"] = nlohmann::json::array({"bridge", "bridge"});
    auto const r = verify_certificate(c);
    CHECK_FALSE(r.ok);
    CHECK(r.first_failure == "closure");
  }
  SUBCASE("wrong conclusion") {
    auto c       = base;
    c.conclusion = "Prop3.13";
    auto const r = verify_certificate(c);
    CHECK_FALSE(r.ok);
    CHECK(r.first_failure == "certificate");
  }
  SUBCASE("forward reference") {
    auto c = base;
    std::swap(c.steps[0], c.steps[c.steps.size() - 1]);
    CHECK_FALSE(verify_certificate(c).ok);
  }
  SUBCASE("missing closure") {
    auto c = base;
    c.steps.pop_back();
    auto const r = verify_certificate(c);
    CHECK_FALSE(r.ok);
    CHECK(r.first_failure == "certificate");
  }
  SUBCASE("wrong seed generator") {
    auto c = base;
    step(c, "Gu").args["generators"] = nlohmann::json::array({"y", "betau"});
    CHECK(verify_certificate(c).first_failure == "Gu");
  }
  SUBCASE("different partner") {
    auto c = base;
    c.h    = compose(c.h, E(V2, "(10 11)"));
    CHECK_FALSE(verify_certificate(c).ok);
  }
}
