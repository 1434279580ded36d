#include <doctest.h>

#include "support.hpp"

using namespace vgen;
using namespace vgen::test;

namespace {
  Signature const B2 = Signature::brin(2);
}

TEST_CASE("signatures") {
  CHECK(to_string(Signature::higman(2)) == "V_2");
  CHECK(to_string(Signature::higman_prime(3)) == "V_3'");
  CHECK(to_string(Signature::brin(2)) == "2V");
  CHECK_THROWS(Signature::higman_prime(4));
  CHECK_THROWS(Signature::higman(1));
  CHECK_THROWS(Signature::brin(0));
  CHECK(Signature::higman(3).same_space(Signature::higman_prime(3)));
  CHECK(Signature::higman(2).same_space(Signature::brin(1)));
  CHECK_FALSE(Signature::higman(2).same_space(Signature::brin(2)));
  CHECK(parse_family("Vprime") == Family::HigmanVnPrime);
  CHECK(parse_family("mV") == Family::BrinMV);
  CHECK_THROWS(parse_family("W"));
}

TEST_CASE("word text forms") {
  CHECK(to_string(V2, W("0110")) == "0110");
  CHECK(W("").is_root());
  CHECK(to_string(B2, W(B2, R"(["01",""])")) == R"(["01",""])");
  auto const V12 = Signature::higman(12);
  auto const w   = W(V12, "11,0,3");
  CHECK(w.coords[0] == std::string{11, 0, 3});
  CHECK(parse_word(V12, to_string(V12, w)) == w);
  CHECK_THROWS(W("012"));
  CHECK_THROWS(W(B2, R"(["0"])"));
}

TEST_CASE("is_prefix") {
  CHECK(is_prefix(W("10"), W("1010")));
  CHECK(is_prefix(W("10"), W("10")));
  CHECK_FALSE(is_prefix(W("11"), W("1010")));
}

TEST_CASE("incomparable") {
  CHECK(incomparable(W("00"), W("01")));
  CHECK_FALSE(incomparable(W("0"), W("01")));
  // Coordinate 1 has "0" before "00" and coordinate 2 has "1" before "11".
  CHECK_FALSE(incomparable(W(B2, R"(["0","11"])"), W(B2, R"(["00","1"])")));
  CHECK(incomparable(W(B2, R"(["0","1"])"), W(B2, R"(["1","1"])")));
}

TEST_CASE("incomparable agrees with the coordinatewise definition") {
  std::mt19937_64 rng(7);
  for (auto const& sig : {V2, V3, B2, Signature::brin(3)}) {
    for (int t = 0; t < 300; ++t) {
      auto a = random_antichain(sig, rng, 5);
      auto b = random_antichain(sig, rng, 5);
      if (a.empty() || b.empty()) {
        continue;
      }
      Word const& u = a.front();
      Word const& v = b.back();
      CHECK(incomparable(u, v) == ref_incomparable(u, v));
      CHECK(incomparable(u, v) == incomparable(v, u));
      if (!u.is_root()) {
        CHECK_FALSE(incomparable(u, u));
      }
    }
  }
}

TEST_CASE("is_basis") {
  CHECK(is_basis(V2, Ws(V2, {"00", "01", "1"})));
  CHECK_FALSE(is_basis(V2, Ws(V2, {"00", "1"})));
  CHECK(is_basis(V3, Ws(V3, {"0", "1", "2"})));
  CHECK_FALSE(is_basis(V2, Ws(V2, {"0", "00", "1"})));
}

TEST_CASE("extend_to_basis") {
  CHECK(extend_to_basis(V2, Ws(V2, {"00", "01"})).words() == Ws(V2, {"00", "01", "1"}));
  CHECK(extend_to_basis(V2, Ws(V2, {"0", "1"})).words() == Ws(V2, {"0", "1"}));
  CHECK(extend_to_basis(B2, {W(B2, R"(["0",""])")}).words()
        == Ws(B2, {R"(["0",""])", R"(["1",""])"}));
  CHECK_THROWS(extend_to_basis(V2, Ws(V2, {"0", "01"})));
}

TEST_CASE("extend_to_basis yields a basis containing its input") {
  std::mt19937_64 rng(11);
  for (auto const& sig : {V2, V3, Signature::higman(5), B2, Signature::brin(3)}) {
    for (int t = 0; t < 1000; ++t) {
      auto const a = random_antichain(sig, rng, 1 + rng() % 6);
      auto const b = extend_to_basis(sig, a).words();
      REQUIRE(ref_is_basis(sig, b));
      for (auto const& w : a) {
        CHECK(std::find(b.begin(), b.end(), w) != b.end());
      }
    }
  }
}

TEST_CASE("extend_within stays inside the cylinder") {
  auto const b = extend_within(V2, W("01"), {W("0110")}).words();
  CHECK(b == Ws(V2, {"010", "0110", "0111"}));
}

TEST_CASE("common_refinement") {
  auto const ab = [](std::vector<std::string> a, std::vector<std::string> b) {
    return common_refinement(Basis(V2, Ws(V2, a)), Basis(V2, Ws(V2, b))).words();
  };
  CHECK(ab({"0", "1"}, {"00", "01", "1"}) == Ws(V2, {"00", "01", "1"}));
  CHECK(ab({"0", "10", "11"}, {"00", "01", "1"}) == Ws(V2, {"00", "01", "10", "11"}));
  CHECK(ab({"0", "1"}, {"0", "1"}) == Ws(V2, {"0", "1"}));
}

TEST_CASE("common_refinement is symmetric and refines both") {
  std::mt19937_64 rng(3);
  for (auto const& sig : {V2, V3, B2}) {
    for (int t = 0; t < 200; ++t) {
      Basis const a  = extend_to_basis(sig, random_antichain(sig, rng, 4));
      Basis const b  = extend_to_basis(sig, random_antichain(sig, rng, 4));
      auto const  ab = common_refinement(a, b);
      CHECK(ab == common_refinement(b, a));
      CHECK(common_refinement(a, a).size() == a.size());
      CHECK(ref_is_basis(sig, ab.words()));
      for (auto const& w : ab.words()) {
        auto const over = [&](Basis const& x) {
          return std::count_if(x.words().begin(), x.words().end(),
                               [&](Word const& p) { return is_prefix(p, w); });
        };
        CHECK(over(a) == 1);
        CHECK(over(b) == 1);
      }
    }
  }
}

TEST_CASE("nary_expansion") {
  CHECK(nary_expansion(V2, 6, 3) == W("110"));
  CHECK(nary_expansion(V3, 5, 2) == W(V3, "12"));
  CHECK(nary_expansion(B2, 9, 2) == W(B2, R"(["10","01"])"));
  CHECK_THROWS(nary_expansion(V2, 8, 3));
  for (auto const& sig : {V2, V3, B2}) {
    unsigned const k = 2;
    Word           prev;
    for (std::uint64_t i = 0; i < level_size(sig, k); ++i) {
      Word const w = nary_expansion(sig, i, k);
      CHECK(nary_index(sig, w) == i);
      if (i > 0) {
        CHECK(prev < w);
      }
      prev = w;
    }
  }
}

TEST_CASE("word index finds comparable words") {
  std::mt19937_64 rng(5);
  for (auto const& sig : {V2, B2}) {
    for (int t = 0; t < 100; ++t) {
      auto const words = extend_to_basis(sig, random_antichain(sig, rng, 6)).words();
      WordIndex  index(words);
      auto const probe = random_antichain(sig, rng, 6);
      for (auto const& w : probe) {
        std::vector<std::size_t> hits;
        index.comparable(w, hits);
        for (std::size_t i = 0; i < words.size(); ++i) {
          if (!ref_incomparable(words[i], w)) {
            CHECK(std::find(hits.begin(), hits.end(), i) != hits.end());
          }
        }
      }
    }
  }
}
