// Products and conjugates of transpositions and three-cycles, as expression
// trees that can be evaluated back to elements.

#ifndef VGEN_REWRITING_HPP_
#define VGEN_REWRITING_HPP_

#include <memory>
#include <string>
#include <vector>

#include "element.hpp"
#include "perms.hpp"

namespace vgen {

  class Expr {
   public:
    enum class Kind { Gen, Inverse, Product, Conjugate };

    static Expr gen(CycleDecomposition c);
    static Expr inverse(Expr e);
    static Expr product(std::vector<Expr> factors);
    // e^by = by^-1 e by
    static Expr conjugate(Expr e, Expr by);

    Kind                      kind() const noexcept { return kind_; }
    CycleDecomposition const& generator() const { return gen_; }
    std::vector<Expr> const&  children() const noexcept { return children_; }

   private:
    Kind               kind_ = Kind::Gen;
    CycleDecomposition gen_;
    std::vector<Expr>  children_;
  };

  Element     evaluate(Signature const& sig, Expr const& e);
  std::string to_string(Expr const& e);
  // The generators appearing in e, in order of first appearance.
  std::vector<CycleDecomposition> generators_of(Expr const& e);

  // (v w) over generators (u0 z) with u0 incomparable to z and |z| >= k,
  // where k = |u0| >= 2 (uniform depth in every coordinate for mV).
  Expr express_transposition(Signature const& sig,
                             Word const&      u0,
                             Word const&      v,
                             Word const&      w);

  // (v w z) over generators (u0 u1 t) with t incomparable to u0 and u1,
  // |t| >= k = |u0| = |u1| >= 2.  Odd Higman arity only.
  Expr express_three_cycle(Signature const& sig,
                           Word const&      u0,
                           Word const&      u1,
                           Word const&      v,
                           Word const&      w,
                           Word const&      z);

  // (u1 v1)(u2 v2) as a product of n^k double transpositions, k minimal.
  // Odd Higman arity only.
  std::vector<CycleDecomposition> double_transposition_split(Signature const& sig,
                                                             Word const&      u1,
                                                             Word const&      v1,
                                                             Word const&      u2,
                                                             Word const&      v2);

}  // namespace vgen

#endif  // VGEN_REWRITING_HPP_
