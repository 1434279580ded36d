// Group elements of V_n, V_n' and mV as prefix-exchange maps.
//
// An Element is a basis pair: rules (a -> b) whose domain words form a basis
// and whose range words form a basis, acting by (a.w) -> (b.w).  Maps act on
// the right, so compose(f, g) is "first f, then g" and the conjugate of x by y
// is y^-1 x y.

#ifndef VGEN_ELEMENT_HPP_
#define VGEN_ELEMENT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "words.hpp"

namespace vgen {

  using BigInt = boost::multiprecision::cpp_int;

  struct Rule {
    Word domain;
    Word range;

    auto operator<=>(Rule const&) const = default;
    bool operator==(Rule const&) const  = default;
  };

  class Element {
   public:
    Element() = default;

    // Validates that the domains and the ranges each form a basis.
    Element(Signature sig, std::vector<Rule> rules);

    static Element identity(Signature const& sig);

    Signature const&         signature() const noexcept { return sig_; }
    std::vector<Rule> const& rules() const noexcept { return rules_; }
    std::size_t              size() const noexcept { return rules_.size(); }

    std::vector<Word> domain_words() const;
    std::vector<Word> range_words() const;

    // Same signature family and identical rule lists.  Use equals() for
    // equality of the maps.
    bool operator==(Element const&) const = default;

    // Rules are trusted (used internally after composition etc).
    static Element unchecked(Signature sig, std::vector<Rule> rules);

   private:
    Signature         sig_;
    std::vector<Rule> rules_;  // sorted by domain
  };

  Element identity(Signature const& sig);
  Element compose(Element const& f, Element const& g);
  Element invert(Element const& g);
  bool    equals(Element const& f, Element const& g);
  bool    is_identity(Element const& g);

  // Merges full sibling families.  For Higman signatures the result is the
  // unique minimal basis pair.  For Brin signatures only single-coordinate
  // sibling merges are performed and no minimality is claimed.
  Element reduce(Element const& g);

  // Conjugate x^y = y^-1 x y.
  Element conjugate(Element const& x, Element const& y);

  // g_[u]: a copy of g acting inside the cylinder u, the identity elsewhere.
  Element localize(Element const& g, Word const& u);

  Element power(Element const& g, BigInt const& e);

  bool fixes_cylinder(Element const& g, Word const& u);
  bool is_localized_in(Element const& g, Word const& u);

  // Domain words whose image differs, taken from the reduced pair.  This
  // over-approximates the support and is only a prefilter.
  std::vector<Word> moved_cylinder_upper(Element const& g);

  // The image pieces of the cylinder u: pairs (piece, image) where the pieces
  // partition u.
  std::vector<Rule> image_pieces(Element const& g, Word const& u);

  // If g maps u.w to v.w for every w, returns v.
  std::optional<Word> prefix_image(Element const& g, Word const& u);

  // True iff the domain basis equals the range basis, i.e. the pair has the
  // form (A, sigma, A).
  bool is_permutation_form(Element const& g);

  // Sign of the induced bijection between the lexicographically ordered
  // domain and range bases.  For odd n this is invariant under expansion and
  // is the homomorphism V_n -> {+1,-1} whose kernel is V_n'.  Throws for
  // other signatures.
  int lex_sign(Element const& g);

  ////////////////////////////////////////////////////////////////////////
  // Eventually periodic points
  ////////////////////////////////////////////////////////////////////////

  struct PeriodicCoord {
    Digits preperiod;
    Digits period;  // nonempty

    bool operator==(PeriodicCoord const&) const = default;
  };

  class EventuallyPeriodicPoint {
   public:
    EventuallyPeriodicPoint() = default;
    // Stored in canonical form: minimal period, then minimal preperiod.
    explicit EventuallyPeriodicPoint(std::vector<PeriodicCoord> coords);

    static EventuallyPeriodicPoint higman(Word const& preperiod,
                                          Word const& period);

    std::vector<PeriodicCoord> const& coords() const noexcept {
      return coords_;
    }
    // First len letters of coordinate i.
    Digits prefix(std::size_t i, std::size_t len) const;

    bool operator==(EventuallyPeriodicPoint const&) const = default;

   private:
    std::vector<PeriodicCoord> coords_;
  };

  std::string to_string(Signature const&               sig,
                        EventuallyPeriodicPoint const& x);

  EventuallyPeriodicPoint apply_to_point(Element const&                 g,
                                         EventuallyPeriodicPoint const& x);

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  nlohmann::json element_to_json(Element const& g);
  Element        element_from_json(nlohmann::json const& j);

}  // namespace vgen

#endif  // VGEN_ELEMENT_HPP_
