// Finite permutation groups on {0,...,N-1}: deterministic Schreier-Sims with
// Schreier vectors, exact order and membership by sifting.

#ifndef VGEN_PERMGROUP_HPP_
#define VGEN_PERMGROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "element.hpp"
#include "perms.hpp"

namespace vgen {

  inline constexpr std::size_t kDefaultDegreeCap = 512;

  class FinitePerm {
   public:
    using Point = std::uint32_t;

    FinitePerm() = default;
    // Throws std::invalid_argument unless images is a bijection.
    explicit FinitePerm(std::vector<Point> images);

    static FinitePerm identity(std::size_t degree);
    // Cycles over 0-based points.
    static FinitePerm from_cycles(std::size_t                            degree,
                                  std::vector<std::vector<Point>> const& cycles);

    std::size_t               degree() const noexcept { return images_.size(); }
    Point                     operator[](Point x) const { return images_[x]; }
    std::vector<Point> const& images() const noexcept { return images_; }
    bool                      is_identity() const noexcept;

    // Left to right: x^(a*b) = (x^a)^b.
    FinitePerm operator*(FinitePerm const& other) const;
    FinitePerm inverse() const;

    bool operator==(FinitePerm const&) const = default;

   private:
    std::vector<Point> images_;
  };

  std::string to_string(FinitePerm const& p);

  class GroupHandle {
   public:
    // Throws std::invalid_argument if degree exceeds the cap or a generator
    // has the wrong degree.
    GroupHandle(std::size_t             degree,
                std::vector<FinitePerm> generators,
                std::size_t             cap = kDefaultDegreeCap);

    std::size_t                    degree() const noexcept { return degree_; }
    std::vector<FinitePerm> const& generators() const noexcept { return gens_; }

    std::vector<FinitePerm::Point> orbit(FinitePerm::Point point) const;
    BigInt                         order() const;
    bool                           contains(FinitePerm const& x) const;

    std::vector<FinitePerm::Point> base() const;
    std::vector<FinitePerm>        strong_generators() const;

   private:
    struct Chain;
    Chain const& chain() const;

    std::size_t                            degree_;
    std::vector<FinitePerm>                gens_;
    mutable std::shared_ptr<std::once_flag> once_;
    mutable std::shared_ptr<Chain const>    chain_;
  };

  BigInt factorial(unsigned n);

  // A_n <= < (1 2 ... b), (a a+1 ... n) > for 1 < a <= b < n, n >= 7.  Tested
  // as membership of the 3-cycle (1 2 3) plus index at most 2 in S_n.
  bool verify_two_cycle_alternating(unsigned n, unsigned a, unsigned b);

  // The permutation induced on the depth-k words, indexed by nary_index.
  // Throws std::invalid_argument unless every support word has uniform
  // depth k.
  FinitePerm project_level(CycleDecomposition const& c, unsigned k);

  enum class FullGroupClass { Symmetric, Alternating, Proper };

  std::string to_string(FullGroupClass c);

  // Classifies a group of the given degree against S_N and A_N by its order.
  FullGroupClass classify_full(GroupHandle const& g);

}  // namespace vgen

#endif  // VGEN_PERMGROUP_HPP_
