#include "vgen/random.hpp"

#include <algorithm>

namespace vgen {

  std::vector<Word> random_basis(Signature const& sig, std::size_t splits,
                                 std::mt19937_64& rng) {
    std::vector<Word> leaves{Word::root(sig)};
    for (std::size_t s = 0; s < splits; ++s) {
      std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
      std::uniform_int_distribution<std::size_t> coord(0, sig.dims() - 1);
      auto const                                 i = pick(rng);
      Word const                                 w = leaves[i];
      leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto const& c : children(sig, w, coord(rng))) {
        leaves.push_back(c);
      }
    }
    std::sort(leaves.begin(), leaves.end());
    return leaves;
  }

  Element random_element(Signature const& sig, std::size_t splits,
                         std::mt19937_64& rng) {
    if (splits == 0) {
      splits = 1;
    }
    while (true) {
      auto dom = random_basis(sig, splits, rng);
      auto ran = random_basis(sig, splits, rng);
      std::shuffle(ran.begin(), ran.end(), rng);
      std::vector<Rule> rules;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        rules.push_back(Rule{dom[i], ran[i]});
      }
      Element g(sig, rules);
      if (sig.family == Family::HigmanVnPrime && lex_sign(g) < 0) {
        std::swap(rules[0].range, rules[1].range);
        g = Element(sig, rules);
      }
      if (!is_identity(reduce(g))) {
        return g;
      }
    }
  }

}  // namespace vgen
