// Generating partners.  For a nontrivial g in V_n, V_n' or mV this builds an
// element h with <g,h> the whole group, together with a certificate that a
// checker can replay step by step.

#ifndef VGEN_WITNESS_HPP_
#define VGEN_WITNESS_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "element.hpp"
#include "perms.hpp"

namespace vgen {

  ////////////////////////////////////////////////////////////////////////
  // Frame
  ////////////////////////////////////////////////////////////////////////

  // A word u with u incomparable to its image, which g reaches by a prefix
  // rule.  Throws std::invalid_argument if g is the identity.
  Word displaced_word(Element const& g);

  struct Frame {
    Word              u;
    Word              v;
    std::vector<Word> links;  // w_1 .. w_l in lexicographic order
    // u, v, w_1, ..., w_l
    std::vector<Word> basis() const;
  };

  Frame build_frame(Element const& g);

  ////////////////////////////////////////////////////////////////////////
  // Transporters
  ////////////////////////////////////////////////////////////////////////

  // An element supported in the cylinder u mapping sources[i] onto targets[i]
  // by prefix rules.  With even = true the result has even lex_sign (odd
  // Higman arity only).  Throws std::invalid_argument if a word lies outside
  // u, the lists are not antichains of equal size, or no spare cylinder is
  // left for balancing.
  Element transporter(Signature const&         sig,
                      std::vector<Word> const& sources,
                      std::vector<Word> const& targets,
                      Word const&              u,
                      bool                     even = false);

  Element transporter(Signature const& sig,
                      Word const&      s,
                      Word const&      t,
                      Word const&      u,
                      bool             even = false);

  ////////////////////////////////////////////////////////////////////////
  // Partner
  ////////////////////////////////////////////////////////////////////////

  struct PartnerParts {
    Signature                       sig;
    Frame                           frame;
    CycleDecomposition              x, y;
    std::vector<CycleDecomposition> z;
    Word                            a, b;       // fixed anchors of alpha, beta
    std::vector<Word>               branches;   // u_0 .. u_l
    std::vector<Word>               link_words; // w_0 = vb, w_1 .. w_l
    std::vector<std::uint64_t>      primes;     // p_0 .. p_l
    std::vector<BigInt>             orders;     // |x|, |y|, |z_0|, ..., |z_l|
    std::vector<BigInt>             exponents;  // CRT exponents, same order
    Element                         h;

    // x, y, z_0, ..., z_l
    std::vector<CycleDecomposition> factors() const;
  };

  // e with e = 1 mod orders[i] and e = 0 mod every other order.  Orders
  // must be pairwise coprime.
  BigInt crt_exponent(std::vector<BigInt> const& orders, std::size_t i);

  // Checks the structural claims about the parts: h is the product, the
  // factors commute and have pairwise coprime orders, z_i is a p_i-cycle,
  // each exponent recovers its factor.  Returns the failures found.
  std::vector<std::string> check_parts(PartnerParts const& parts);

  ////////////////////////////////////////////////////////////////////////
  // Certificates
  ////////////////////////////////////////////////////////////////////////

  enum class StepKind {
    PowerExtract,
    ConjugateBy,
    ProductOf,
    LocalizedMember,
    CitedClosure
  };

  std::string kind_name(StepKind k);
  StepKind    parse_kind(std::string_view s);

  // References name g, h or an earlier step, optionally followed by "^-1".
  struct Step {
    std::string            id;
    StepKind               kind;
    nlohmann::json         args;
    std::optional<Element> claim;
  };

  struct Certificate {
    Signature         sig;
    Element           g;
    Element           h;
    std::vector<Step> steps;
    std::string       conclusion;
  };

  struct StepReport {
    std::string id;
    std::string kind;
    bool        ok = false;
    std::string message;
  };

  struct VerifyReport {
    bool                    ok = false;
    std::vector<StepReport> steps;
    // The first failing step id, or "certificate" for global failures.
    std::optional<std::string> first_failure;
    std::string                first_message;
  };

  struct Partner {
    PartnerParts parts;
    Certificate  certificate;
  };

  // flavor selects V_n, V_n' or mV; it must act on the same space as g.
  // For V_n' the element must have even lex_sign.  Throws
  // std::invalid_argument on a trivial g or a flavor mismatch.
  Partner build_partner(Element const& g, Signature const& flavor);

  VerifyReport verify_certificate(Certificate const& cert);

  nlohmann::json certificate_to_json(Certificate const& cert);
  Certificate    certificate_from_json(nlohmann::json const& j);

  // Citation tags for the seed group and the closure step of a family.
  std::string seed_citation(Signature const& sig);
  std::string closure_citation(Signature const& sig);

}  // namespace vgen

#endif  // VGEN_WITNESS_HPP_
