// Command-line front end: partner, verify, eval, oracle, primes, generators
// and render subcommands.  Exit codes: 0 success, 1 verification failure,
// 2 bad input.

#ifndef VGEN_CLI_HPP_
#define VGEN_CLI_HPP_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "element.hpp"
#include "words.hpp"

namespace vgen {

  // args excludes the program name.
  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);
  int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

  // Expression calculator over named generators and cycle notation:
  //   expr := term ('*' term)*
  //   term := atom ('^' (int | name | '[' expr ']' | cycles))*
  //   atom := name | cycles | '[' expr ']' | element JSON
  // Names: id alpha alpha_prime beta zeta delta delta_prime gamma.  An
  // integer exponent is a power (negative means inverse); anything else is
  // conjugation x^y = y^-1 x y.
  Element parse_expression(Signature const& sig, std::string_view text);

  // Cycle notation when the (reduced) pair is in permutation form, element
  // JSON otherwise.  Either form parses back with parse_expression.
  std::string format_element(Element const& g);

  std::string render_ascii(Element const& g);
  std::string render_dot(Element const& g);

}  // namespace vgen

#endif  // VGEN_CLI_HPP_
