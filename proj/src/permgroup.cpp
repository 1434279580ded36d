#include "vgen/permgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vgen {

  using Point = FinitePerm::Point;

  ////////////////////////////////////////////////////////////////////////
  // FinitePerm
  ////////////////////////////////////////////////////////////////////////

  FinitePerm::FinitePerm(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x]) {
        throw std::invalid_argument("images do not form a permutation");
      }
      seen[x] = true;
    }
  }

  FinitePerm FinitePerm::identity(std::size_t degree) {
    FinitePerm p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), Point{0});
    return p;
  }

  FinitePerm FinitePerm::from_cycles(std::size_t                            degree,
                                     std::vector<std::vector<Point>> const& cycles) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (auto const& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree || used[c[i]]) {
          throw std::invalid_argument("cycles are not disjoint or out of range");
        }
        used[c[i]]   = true;
        images[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return FinitePerm(std::move(images));
  }

  bool FinitePerm::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) {
        return false;
      }
    }
    return true;
  }

  FinitePerm FinitePerm::operator*(FinitePerm const& other) const {
    FinitePerm r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      r.images_[i] = other.images_[images_[i]];
    }
    return r;
  }

  FinitePerm FinitePerm::inverse() const {
    FinitePerm r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      r.images_[images_[i]] = static_cast<Point>(i);
    }
    return r;
  }

  std::string to_string(FinitePerm const& p) {
    std::string       out;
    std::vector<bool> seen(p.degree(), false);
    for (Point i = 0; i < p.degree(); ++i) {
      if (seen[i] || p[i] == i) {
        continue;
      }
      out += "(";
      for (Point j = i; !seen[j]; j = p[j]) {
        seen[j] = true;
        if (j != i) {
          out += " ";
        }
        out += std::to_string(j);
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Stabilizer chain
  ////////////////////////////////////////////////////////////////////////

  namespace {
    constexpr std::uint32_t kNone = ~std::uint32_t{0};

    struct Level {
      Point                      base_point;
      std::vector<FinitePerm>    gens;
      std::vector<FinitePerm>    inverses;
      std::vector<Point>         orbit;
      // For an orbit point y != base: y = parent^gens[label].
      std::vector<std::uint32_t> label;
      std::vector<Point>         parent;
      // done[i] = number of generators already paired with orbit[i].
      std::vector<std::size_t> done;

      Level(Point b, std::size_t degree)
          : base_point(b), label(degree, kNone), parent(degree, 0) {
        orbit.push_back(b);
        done.push_back(0);
        label[b] = kNone - 1;
      }

      bool in_orbit(Point y) const { return label[y] != kNone; }

      void add_generator(FinitePerm const& g) {
        gens.push_back(g);
        inverses.push_back(g.inverse());
        // Apply the new generator to the old points, and every generator to
        // the new ones.
        std::size_t const old_size = orbit.size();
        auto const        gi       = static_cast<std::uint32_t>(gens.size() - 1);
        for (std::size_t i = 0; i < orbit.size(); ++i) {
          Point const x = orbit[i];
          for (std::uint32_t s = (i < old_size ? gi : 0); s < gens.size(); ++s) {
            Point const y = gens[s][x];
            if (!in_orbit(y)) {
              label[y]  = s;
              parent[y] = x;
              orbit.push_back(y);
              done.push_back(0);
            }
          }
        }
      }

      // g * u_y^-1, where u_y maps the base point to y.
      void strip_transversal(FinitePerm& g, Point y) const {
        while (y != base_point) {
          auto const s = label[y];
          g            = g * inverses[s];
          y            = parent[y];
        }
      }

      FinitePerm transversal(Point y, std::size_t degree) const {
        FinitePerm u = FinitePerm::identity(degree);
        while (y != base_point) {
          u = gens[label[y]] * u;
          y = parent[y];
        }
        return u;
      }
    };

    Point first_moved(FinitePerm const& g) {
      for (Point i = 0; i < g.degree(); ++i) {
        if (g[i] != i) {
          return i;
        }
      }
      return kNone;
    }
  }  // namespace

  struct GroupHandle::Chain {
    std::size_t        degree;
    std::vector<Level> levels;

    // Sifts g from level i.  Returns the level where it stopped
    // (levels.size() if it passed every level).
    std::size_t sift(FinitePerm& g, std::size_t i) const {
      for (; i < levels.size(); ++i) {
        Point const y = g[levels[i].base_point];
        if (!levels[i].in_orbit(y)) {
          return i;
        }
        levels[i].strip_transversal(g, y);
      }
      return i;
    }

    // Adds h (fixing the base points before level j) to levels i..j,
    // creating level j if needed.
    void insert(FinitePerm const& h, std::size_t i, std::size_t j) {
      if (j == levels.size()) {
        levels.emplace_back(first_moved(h), degree);
      }
      for (std::size_t l = i; l <= j; ++l) {
        levels[l].add_generator(h);
      }
    }

    void complete(std::size_t i) {
      for (std::size_t idx = 0; idx < levels[i].orbit.size(); ++idx) {
        while (levels[i].done[idx] < levels[i].gens.size()) {
          auto const  s    = levels[i].done[idx]++;
          Point const beta = levels[i].orbit[idx];
          FinitePerm  g    = levels[i].transversal(beta, degree) * levels[i].gens[s];
          levels[i].strip_transversal(g, g[levels[i].base_point]);
          std::size_t const j = sift(g, i + 1);
          if (j == levels.size() && g.is_identity()) {
            continue;
          }
          insert(g, i + 1, j);
          for (std::size_t l = j + 1; l-- > i + 1;) {
            complete(l);
          }
        }
      }
    }
  };

  GroupHandle::GroupHandle(std::size_t             degree,
                           std::vector<FinitePerm> generators,
                           std::size_t             cap)
      : degree_(degree),
        gens_(std::move(generators)),
        once_(std::make_shared<std::once_flag>()) {
    if (degree_ > cap) {
      throw std::invalid_argument("degree " + std::to_string(degree_)
                                  + " exceeds cap " + std::to_string(cap));
    }
    for (auto const& g : gens_) {
      if (g.degree() != degree_) {
        throw std::invalid_argument("generator degree mismatch");
      }
    }
  }

  GroupHandle::Chain const& GroupHandle::chain() const {
    std::call_once(*once_, [this] {
      auto c    = std::make_shared<Chain>();
      c->degree = degree_;
      for (auto const& g : gens_) {
        if (g.is_identity()) {
          continue;
        }
        if (c->levels.empty()) {
          c->levels.emplace_back(first_moved(g), degree_);
        }
        FinitePerm h = g;
        auto       j = c->sift(h, 0);
        if (j == c->levels.size() && h.is_identity()) {
          continue;
        }
        c->insert(h, 0, j);
        for (std::size_t l = j + 1; l-- > 0;) {
          c->complete(l);
        }
      }
      chain_ = std::move(c);
    });
    return *chain_;
  }

  std::vector<Point> GroupHandle::orbit(Point point) const {
    if (point >= degree_) {
      throw std::invalid_argument("point out of range");
    }
    std::vector<bool>  seen(degree_, false);
    std::vector<Point> out{point};
    seen[point] = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (auto const& g : gens_) {
        Point y = g[out[i]];
        if (!seen[y]) {
          seen[y] = true;
          out.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  BigInt GroupHandle::order() const {
    BigInt result = 1;
    for (auto const& level : chain().levels) {
      result *= level.orbit.size();
    }
    return result;
  }

  bool GroupHandle::contains(FinitePerm const& x) const {
    if (x.degree() != degree_) {
      return false;
    }
    auto const& c = chain();
    FinitePerm  g = x;
    return c.sift(g, 0) == c.levels.size() && g.is_identity();
  }

  std::vector<Point> GroupHandle::base() const {
    std::vector<Point> out;
    for (auto const& level : chain().levels) {
      out.push_back(level.base_point);
    }
    return out;
  }

  std::vector<FinitePerm> GroupHandle::strong_generators() const {
    auto const& c = chain();
    return c.levels.empty() ? std::vector<FinitePerm>{} : c.levels[0].gens;
  }

  ////////////////////////////////////////////////////////////////////////
  // Checks
  ////////////////////////////////////////////////////////////////////////

  BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) {
      r *= i;
    }
    return r;
  }

  bool verify_two_cycle_alternating(unsigned n, unsigned a, unsigned b) {
    if (n < 7 || a <= 1 || a > b || b >= n) {
      throw std::invalid_argument("need n >= 7 and 1 < a <= b < n");
    }
    // Points 1..n become 0..n-1.
    std::vector<Point> left, right;
    for (unsigned i = 1; i <= b; ++i) {
      left.push_back(i - 1);
    }
    for (unsigned i = a; i <= n; ++i) {
      right.push_back(i - 1);
    }
    GroupHandle g(n,
                  {FinitePerm::from_cycles(n, {left}),
                   FinitePerm::from_cycles(n, {right})});
    return g.contains(FinitePerm::from_cycles(n, {{0, 1, 2}}))
        && 2 * g.order() >= factorial(n);
  }

  FinitePerm project_level(CycleDecomposition const& c, unsigned k) {
    auto const& sig    = c.signature();
    auto const  degree = level_size(sig, k);
    std::vector<std::vector<Point>> cycles;
    for (auto const& cycle : c.cycles()) {
      std::vector<Point> pts;
      for (auto const& w : cycle) {
        for (auto const& coord : w.coords) {
          if (coord.size() != k) {
            throw std::invalid_argument("support word is not of uniform depth k");
          }
        }
        pts.push_back(static_cast<Point>(nary_index(sig, w)));
      }
      cycles.push_back(std::move(pts));
    }
    return FinitePerm::from_cycles(degree, cycles);
  }

  std::string to_string(FullGroupClass c) {
    switch (c) {
      case FullGroupClass::Symmetric:
        return "Symmetric";
      case FullGroupClass::Alternating:
        return "Alternating";
      case FullGroupClass::Proper:
        return "Proper";
    }
    return "Proper";
  }

  FullGroupClass classify_full(GroupHandle const& g) {
    auto const full  = factorial(static_cast<unsigned>(g.degree()));
    auto const order = g.order();
    if (order == full) {
      return FullGroupClass::Symmetric;
    }
    if (2 * order == full) {
      return FullGroupClass::Alternating;
    }
    return FullGroupClass::Proper;
  }

}  // namespace vgen
