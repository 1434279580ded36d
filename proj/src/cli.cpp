#include "vgen/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vgen/perms.hpp"
#include "vgen/permgroup.hpp"
#include "vgen/random.hpp"
#include "vgen/witness.hpp"

namespace vgen {

  ////////////////////////////////////////////////////////////////////////
  // Expressions
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class BadInput : public std::runtime_error {
     public:
      using std::runtime_error::runtime_error;
    };

    class ExprParser {
     public:
      ExprParser(Signature const& sig, std::string_view text) : sig_(sig), text_(text) {}

      Element parse() {
        Element e = expr();
        skip();
        if (pos_ != text_.size()) {
          fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
      }

     private:
      [[noreturn]] void fail(std::string const& msg) const {
        throw std::invalid_argument("expression: " + msg + " at offset "
                                    + std::to_string(pos_));
      }

      void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      bool peek(char c) {
        skip();
        return pos_ < text_.size() && text_[pos_] == c;
      }

      Element expr() {
        Element acc = term();
        while (peek('*')) {
          ++pos_;
          acc = compose(acc, term());
        }
        return acc;
      }

      Element term() {
        Element base = atom();
        while (peek('^')) {
          ++pos_;
          skip();
          if (pos_ < text_.size()
              && (text_[pos_] == '-' || std::isdigit(static_cast<unsigned char>(text_[pos_])))) {
            bool negative = text_[pos_] == '-';
            if (negative) {
              ++pos_;
            }
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
              ++pos_;
            }
            if (start == pos_) {
              fail("expected an exponent");
            }
            BigInt e(std::string(text_.substr(start, pos_ - start)));
            base = power(negative ? invert(base) : base, e);
          } else {
            base = conjugate(base, atom());
          }
        }
        return base;
      }

      Element atom() {
        skip();
        if (pos_ >= text_.size()) {
          fail("unexpected end of input");
        }
        char const c = text_[pos_];
        if (c == '[') {
          ++pos_;
          Element e = expr();
          if (!peek(']')) {
            fail("expected ']'");
          }
          ++pos_;
          return e;
        }
        if (c == '(') {
          return cycles();
        }
        if (c == '{') {
          return json_literal();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          std::size_t start = pos_;
          while (pos_ < text_.size()
                 && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
          }
          return named(std::string(text_.substr(start, pos_ - start)));
        }
        fail("unexpected '" + std::string(1, c) + "'");
      }

      Element cycles() {
        std::size_t start = pos_;
        while (peek('(')) {
          auto close = text_.find(')', pos_);
          if (close == std::string_view::npos) {
            fail("unterminated cycle");
          }
          pos_ = close + 1;
        }
        return to_element(parse_cycles(sig_, text_.substr(start, pos_ - start)));
      }

      Element json_literal() {
        int         depth = 0;
        std::size_t start = pos_;
        for (; pos_ < text_.size(); ++pos_) {
          if (text_[pos_] == '{') {
            ++depth;
          } else if (text_[pos_] == '}' && --depth == 0) {
            ++pos_;
            break;
          }
        }
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(text_.substr(start, pos_ - start));
        } catch (nlohmann::json::exception const& e) {
          fail(std::string("bad element JSON: ") + e.what());
        }
        Element g = element_from_json(j);
        if (!g.signature().same_space(sig_)) {
          fail("element JSON is for another signature");
        }
        return Element::unchecked(sig_, g.rules());
      }

      Element named(std::string const& name) {
        if (name == "id") {
          return identity(sig_);
        }
        if (name == "alpha") {
          return alpha(sig_);
        }
        if (name == "alpha_prime") {
          return alpha_prime(sig_);
        }
        if (name == "beta") {
          return to_element(beta(sig_));
        }
        if (name == "zeta") {
          return to_element(zeta(sig_));
        }
        if (name == "delta") {
          return to_element(delta(sig_));
        }
        if (name == "delta_prime") {
          return to_element(delta_prime(sig_));
        }
        if (name == "gamma") {
          if (sig_.is_brin() || sig_.arity != 2) {
            fail("gamma is only defined for n = 2");
          }
          return Element(sig_, {Rule{Word::higman({0, 0}), Word::higman({0})},
                                Rule{Word::higman({0, 1}), Word::higman({1, 0})},
                                Rule{Word::higman({1}), Word::higman({1, 1})}});
        }
        fail("unknown name '" + name + "'");
      }

      Signature        sig_;
      std::string_view text_;
      std::size_t      pos_ = 0;
    };
  }  // namespace

  Element parse_expression(Signature const& sig, std::string_view text) {
    return ExprParser(sig, text).parse();
  }

  std::string format_element(Element const& g) {
    Element const r = g.signature().is_brin() ? g : reduce(g);
    if (auto c = to_cycles(r)) {
      return to_string(*c);
    }
    if (auto c = to_cycles(g)) {
      return to_string(*c);
    }
    return element_to_json(r).dump();
  }

  ////////////////////////////////////////////////////////////////////////
  // Rendering
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Leaf labels: moved domain leaves are numbered in lexicographic order,
    // and each range leaf carries the number of its preimage.
    struct Labels {
      std::map<Word, int> domain, range;
    };

    Labels label_leaves(Element const& g) {
      Labels l;
      int    next = 1;
      for (auto const& [d, r] : g.rules()) {
        if (d != r) {
          l.domain[d] = next;
          l.range[r]  = next;
          ++next;
        }
      }
      return l;
    }

    std::string word_label(Signature const& sig, Word const& w) {
      auto s = to_string(sig, w);
      return s.empty() ? "e" : s;
    }

    void ascii_tree(Signature const&           sig,
                    std::vector<Word> const&   leaves,
                    std::map<Word, int> const& labels,
                    Word const&                node,
                    int                        depth,
                    std::ostream&              os) {
      os << std::string(static_cast<std::size_t>(2 * depth + 2), ' ') << word_label(sig, node);
      bool const leaf = std::find(leaves.begin(), leaves.end(), node) != leaves.end();
      if (leaf) {
        auto it = labels.find(node);
        if (it != labels.end()) {
          os << " [" << it->second << "]";
        }
        os << "\n";
        return;
      }
      os << "\n";
      for (auto const& c : children(sig, node, 0)) {
        ascii_tree(sig, leaves, labels, c, depth + 1, os);
      }
    }
  }  // namespace

  std::string render_ascii(Element const& g_in) {
    Element const      g   = g_in.signature().is_brin() ? g_in : reduce(g_in);
    auto const&        sig = g.signature();
    auto const         l   = label_leaves(g);
    std::ostringstream os;
    if (sig.is_brin()) {
      os << "boxes (domain -> range):\n";
      for (auto const& [d, r] : g.rules()) {
        os << "  " << to_string(sig, d) << " -> " << to_string(sig, r);
        if (d != r) {
          os << " [" << l.domain.at(d) << "]";
        }
        os << "\n";
      }
      return os.str();
    }
    os << "domain:\n";
    ascii_tree(sig, g.domain_words(), l.domain, Word::root(sig), 0, os);
    auto ran = g.range_words();
    std::sort(ran.begin(), ran.end());
    os << "range:\n";
    ascii_tree(sig, ran, l.range, Word::root(sig), 0, os);
    return os.str();
  }

  namespace {
    void dot_tree(Signature const&           sig,
                  std::string const&         name,
                  std::vector<Word> const&   leaves,
                  std::map<Word, int> const& labels,
                  std::ostream&              os) {
      os << "digraph " << name << " {\n";
      std::map<Word, int> ids;
      auto id = [&](Word const& w) {
        auto it = ids.find(w);
        if (it == ids.end()) {
          it = ids.emplace(w, static_cast<int>(ids.size())).first;
        }
        return name + "_" + std::to_string(it->second);
      };
      auto label = [&](Word const& w) {
        auto it = labels.find(w);
        return it == labels.end() ? std::string() : std::to_string(it->second);
      };
      if (sig.is_brin()) {
        for (auto const& w : leaves) {
          os << "  " << id(w) << " [shape=box, label=\"" << label(w) << "\", tooltip="
             << nlohmann::json(to_string(sig, w)).dump() << "];\n";
        }
        os << "}\n";
        return;
      }
      std::vector<Word> stack{Word::root(sig)};
      while (!stack.empty()) {
        Word const w = stack.back();
        stack.pop_back();
        bool const leaf = std::find(leaves.begin(), leaves.end(), w) != leaves.end();
        os << "  " << id(w) << " [label=\"" << (leaf ? label(w) : "") << "\""
           << (leaf ? ", shape=plaintext" : ", shape=point") << "];\n";
        if (leaf) {
          continue;
        }
        auto kids = children(sig, w, 0);
        for (auto const& c : kids) {
          os << "  " << id(w) << " -> " << id(c) << ";\n";
        }
        stack.insert(stack.end(), kids.rbegin(), kids.rend());
      }
      os << "}\n";
    }
  }  // namespace

  std::string render_dot(Element const& g_in) {
    Element const      g = g_in.signature().is_brin() ? g_in : reduce(g_in);
    auto const         l = label_leaves(g);
    std::ostringstream os;
    auto               ran = g.range_words();
    std::sort(ran.begin(), ran.end());
    dot_tree(g.signature(), "domain", g.domain_words(), l.domain, os);
    dot_tree(g.signature(), "range", ran, l.range, os);
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct FamilyFlags {
      std::string family = "V";
      unsigned    n      = 2;
      unsigned    m      = 1;

      void attach(CLI::App* app) {
        app->add_option("--family", family, "V, Vprime or mV")->capture_default_str();
        app->add_option("--n", n, "Higman arity")->capture_default_str();
        app->add_option("--m", m, "Brin dimension")->capture_default_str();
      }

      Signature signature() const {
        switch (parse_family(family)) {
          case Family::HigmanVn:
            return Signature::higman(n);
          case Family::HigmanVnPrime:
            return Signature::higman_prime(n);
          case Family::BrinMV:
            return Signature::brin(m);
        }
        return Signature::higman(n);
      }
    };

    std::string slurp(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw BadInput("cannot read " + path);
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    // A positional input is a file path if one exists, otherwise an
    // expression.
    Element read_element(Signature const& sig, std::string const& input) {
      std::ifstream probe(input);
      std::string   text = probe ? slurp(input) : input;
      return parse_expression(sig, text);
    }

    std::string join(std::vector<BigInt> const& xs) {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? " " : "") + xs[i].str();
      }
      return out;
    }

    int cmd_partner(FamilyFlags const& ff,
                    std::string const& input,
                    bool               random,
                    std::uint64_t      seed,
                    std::size_t        size,
                    std::string const& out_path,
                    std::ostream&      out) {
      Signature const sig = ff.signature();
      Element         g   = identity(sig);
      if (random) {
        std::mt19937_64 rng(seed);
        g = random_element(sig, size, rng);
      } else {
        if (input.empty()) {
          throw BadInput("no element given");
        }
        g = read_element(sig, input);
      }
      if (is_identity(reduce(g))) {
        throw BadInput("element is trivial");
      }
      Partner p;
      try {
        p = build_partner(g, sig);
      } catch (std::invalid_argument const& e) {
        throw BadInput(e.what());
      }
      auto const& P = p.parts;
      BigInt      h_order = 1;
      for (auto const& o : P.orders) {
        h_order *= o;
      }
      std::vector<BigInt> primes(P.primes.begin(), P.primes.end());
      out << "family: " << to_string(sig) << "\n";
      out << "g: " << format_element(g) << "\n";
      out << "u: " << word_label(sig, P.frame.u) << "\n";
      out << "v: " << word_label(sig, P.frame.v) << "\n";
      out << "links:";
      for (auto const& w : P.frame.links) {
        out << " " << word_label(sig, w);
      }
      out << "\n";
      out << "anchors: a=" << word_label(sig, P.a) << " b=" << word_label(sig, P.b) << "\n";
      out << "primes: " << join(primes) << "\n";
      out << "factor orders: " << join(P.orders) << "\n";
      out << "order of h: " << h_order.str() << "\n";
      out << "exponents: " << join(P.exponents) << "\n";
      auto const report = verify_certificate(p.certificate);
      out << "certificate: " << p.certificate.steps.size() << " steps, "
          << (report.ok ? "verified" : "FAILED at " + *report.first_failure) << "\n";
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
          throw BadInput("cannot write " + out_path);
        }
        f << certificate_to_json(p.certificate).dump(1) << "\n";
      }
      return report.ok ? 0 : 1;
    }

    int cmd_verify(std::string const& path, std::ostream& out) {
      Certificate cert;
      try {
        cert = certificate_from_json(nlohmann::json::parse(slurp(path)));
      } catch (nlohmann::json::exception const& e) {
        throw BadInput(std::string("malformed certificate: ") + e.what());
      } catch (std::invalid_argument const& e) {
        throw BadInput(std::string("malformed certificate: ") + e.what());
      }
      auto const report = verify_certificate(cert);
      for (auto const& s : report.steps) {
        out << (s.ok ? "ok   " : "FAIL ") << s.id << " (" << s.kind << ")";
        if (!s.ok) {
          out << ": " << s.message;
        }
        out << "\n";
      }
      if (report.ok) {
        out << "verdict: pass (" << cert.conclusion << ")\n";
        return 0;
      }
      out << "verdict: fail; first failing step: " << *report.first_failure << ": "
          << report.first_message << "\n";
      return 1;
    }

    nlohmann::json oracle_report(std::string const& check, nlohmann::json params,
                                 BigInt const& order, bool verdict) {
      return {{"check", check},
              {"parameters", std::move(params)},
              {"order", order.str()},
              {"verdict", verdict}};
    }

    int cmd_oracle(std::string const& check, FamilyFlags const& ff,
                   std::optional<unsigned> a, std::optional<unsigned> b, std::ostream& out) {
      bool all_ok = true;
      if (check == "two-cycles") {
        unsigned const n = ff.n;
        if (n < 7) {
          throw BadInput("two-cycles needs n >= 7");
        }
        for (unsigned aa = 2; aa < n; ++aa) {
          for (unsigned bb = aa; bb < n; ++bb) {
            if ((a && *a != aa) || (b && *b != bb)) {
              continue;
            }
            bool const ok = verify_two_cycle_alternating(n, aa, bb);
            std::vector<FinitePerm::Point> left, right;
            for (unsigned i = 0; i < bb; ++i) {
              left.push_back(i);
            }
            for (unsigned i = aa - 1; i < n; ++i) {
              right.push_back(i);
            }
            GroupHandle g(n, {FinitePerm::from_cycles(n, {left}),
                              FinitePerm::from_cycles(n, {right})});
            out << oracle_report(check, {{"n", n}, {"a", aa}, {"b", bb}}, g.order(), ok).dump()
                << "\n";
            all_ok = all_ok && ok;
          }
        }
        return all_ok ? 0 : 1;
      }
      if (check == "zeta-beta" || check == "level3-symmetric") {
        Signature const sig = ff.signature();
        auto const      deg = level_size(sig, 3);
        std::vector<FinitePerm> gens;
        if (check == "zeta-beta") {
          gens.push_back(project_level(zeta(sig), 3));
        } else {
          gens.push_back(project_level(sigma(sig, 2, 3), 3));
        }
        gens.push_back(project_level(beta(sig), 3));
        GroupHandle g(deg, gens);
        auto const  cls = classify_full(g);
        bool const  ok  = check == "zeta-beta" ? cls != FullGroupClass::Proper
                                               : cls == FullGroupClass::Symmetric;
        auto params = nlohmann::json{{"family", family_name(sig.family)},
                                     {"arity", sig.arity},
                                     {"degree", deg},
                                     {"class", to_string(cls)}};
        out << oracle_report(check, params, g.order(), ok).dump() << "\n";
        return ok ? 0 : 1;
      }
      throw BadInput("unknown oracle check '" + check
                     + "' (two-cycles, zeta-beta, level3-symmetric)");
    }

    int cmd_primes(FamilyFlags const& ff, std::ostream& out) {
      Signature const sig = ff.signature();
      auto const      pq  = choose_primes(sig);
      if (!sig.is_brin()) {
        out << "p=" << pq.p << " ";
      }
      out << "q=" << pq.q << "\n";
      return 0;
    }

    int cmd_generators(FamilyFlags const& ff, std::ostream& out) {
      Signature const sig = ff.signature();
      out << "delta = " << to_string(delta(sig)) << "\n";
      if (!sig.is_brin() && sig.arity % 2 == 1) {
        out << "delta_prime = " << to_string(delta_prime(sig)) << "\n";
      }
      out << "zeta = " << to_string(zeta(sig)) << "\n";
      out << "beta = " << to_string(beta(sig)) << "\n";
      out << "alpha = " << to_string(alpha_cycles(sig)) << "\n";
      if (!sig.is_brin() && sig.arity % 2 == 1) {
        out << "alpha_prime = " << to_string(alpha_prime_cycles(sig)) << "\n";
      }
      return 0;
    }
  }  // namespace

  int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Arithmetic and generating partners in V_n, V_n' and mV", "vgen"};
    app.require_subcommand(1);

    FamilyFlags partner_ff, eval_ff, oracle_ff, primes_ff, gen_ff, render_ff;
    std::string partner_input, partner_out, verify_path, eval_expr, oracle_check,
        render_input, render_format = "ascii";
    bool                    partner_random = false;
    std::uint64_t           partner_seed   = 1;
    std::size_t             partner_size   = 4;
    std::optional<unsigned> oracle_a, oracle_b;

    auto* partner = app.add_subcommand("partner", "build a generating partner and certificate");
    partner_ff.attach(partner);
    partner->add_option("element", partner_input, "element expression, cycles or file");
    partner->add_flag("--random", partner_random, "use a random element");
    partner->add_option("--seed", partner_seed, "random seed")->capture_default_str();
    partner->add_option("--size", partner_size, "random element splits")->capture_default_str();
    partner->add_option("--out", partner_out, "write the certificate JSON here");

    auto* verify = app.add_subcommand("verify", "check a certificate file");
    verify->add_option("certificate", verify_path)->required();

    auto* eval = app.add_subcommand("eval", "evaluate an expression");
    eval_ff.attach(eval);
    eval->add_option("expression", eval_expr)->required();

    auto* oracle = app.add_subcommand("oracle", "finite permutation group checks");
    oracle_ff.attach(oracle);
    oracle->add_option("check", oracle_check, "two-cycles, zeta-beta or level3-symmetric")
        ->required();
    oracle->add_option("--a", oracle_a);
    oracle->add_option("--b", oracle_b);

    auto* primes = app.add_subcommand("primes", "the primes p and q");
    primes_ff.attach(primes);

    auto* gens = app.add_subcommand("generators", "named generators in cycle notation");
    gen_ff.attach(gens);

    auto* render = app.add_subcommand("render", "draw a tree pair");
    render_ff.attach(render);
    render->add_option("element", render_input)->required();
    render->add_option("--format", render_format, "ascii or dot")
        ->check(CLI::IsMember({"ascii", "dot"}))
        ->capture_default_str();

    try {
      app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }

    try {
      if (*partner) {
        return cmd_partner(partner_ff, partner_input, partner_random, partner_seed,
                           partner_size, partner_out, out);
      }
      if (*verify) {
        return cmd_verify(verify_path, out);
      }
      if (*eval) {
        out << format_element(read_element(eval_ff.signature(), eval_expr)) << "\n";
        return 0;
      }
      if (*oracle) {
        return cmd_oracle(oracle_check, oracle_ff, oracle_a, oracle_b, out);
      }
      if (*primes) {
        return cmd_primes(primes_ff, out);
      }
      if (*gens) {
        return cmd_generators(gen_ff, out);
      }
      if (*render) {
        Element g = read_element(render_ff.signature(), render_input);
        out << (render_format == "dot" ? render_dot(g) : render_ascii(g));
        return 0;
      }
    } catch (BadInput const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (std::invalid_argument const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (std::domain_error const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    return 2;
  }

  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    std::vector<char const*> argv{"vgen"};
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }

}  // namespace vgen
