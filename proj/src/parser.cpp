#include "cbvlab/parser.hpp"

#include <vector>

#include "cbvlab/detail/lexer.hpp"

namespace cbvlab {

namespace {

using detail::Lexer;
using detail::Tok;

class TermParser {
 public:
  TermParser(std::string_view text, const Definitions& defs) : lex_(text), defs_(defs) {}

  Term parse() {
    Term t = term();
    if (lex_.peek().kind != Tok::End) throw ParseError("unexpected trailing input", lex_.peek().pos);
    return t;
  }

 private:
  bool at_atom_start() const {
    switch (lex_.peek().kind) {
      case Tok::Ident:
      case Tok::Hole:
      case Tok::LParen:
      case Tok::Lambda:
        return true;
      default:
        return false;
    }
  }

  Term term() {
    if (lex_.peek().kind == Tok::Lambda) return abstraction();
    if (!at_atom_start()) throw ParseError("expected a term", lex_.peek().pos);
    Term t = atom();
    while (at_atom_start()) {
      // A trailing abstraction extends to the end of the application.
      Term a = lex_.peek().kind == Tok::Lambda ? abstraction() : atom();
      t = Term::app(std::move(t), std::move(a));
    }
    return t;
  }

  Term abstraction() {
    lex_.expect(Tok::Lambda, "'\\'");
    std::vector<std::string> names;
    while (lex_.peek().kind == Tok::Ident) names.push_back(lex_.next().text);
    if (names.empty()) throw ParseError("expected a binder name", lex_.peek().pos);
    lex_.expect(Tok::Dot, "'.'");
    for (const auto& n : names) scope_.push_back(n);
    Term body = term();
    scope_.resize(scope_.size() - names.size());
    for (std::size_t i = names.size(); i-- > 0;) body = Term::abs(names[i], std::move(body));
    return body;
  }

  Term atom() {
    auto tok = lex_.next();
    switch (tok.kind) {
      case Tok::Hole:
        return Term::hole(tok.hole);
      case Tok::LParen: {
        Term t = term();
        lex_.expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::Ident:
        return identifier(tok);
      default:
        throw ParseError("expected a term", tok.pos);
    }
  }

  Term identifier(const detail::Token& tok) {
    for (std::size_t j = scope_.size(); j-- > 0;) {
      if (scope_[j] == tok.text) return Term::bound(static_cast<std::uint32_t>(scope_.size() - 1 - j));
    }
    if (tok.text == "Pair" && lex_.peek().kind == Tok::LParen) {
      lex_.next();
      Term m = term();
      lex_.expect(Tok::Comma, "',' in Pair(M,N)");
      Term n = term();
      lex_.expect(Tok::RParen, "')' closing Pair(M,N)");
      return Term::abs("z", Term::app(Term::app(Term::bound(0), shift(m, 1)), shift(n, 1)));
    }
    if (auto it = defs_.find(tok.text); it != defs_.end()) return it->second;
    return Term::free(tok.text);
  }

  Lexer lex_;
  const Definitions& defs_;
  std::vector<std::string> scope_;
};

}  // namespace

const Definitions& builtin_definitions() {
  static const Definitions defs = [] {
    Definitions d;
    const Definitions none;
    d["I"] = parse_term("\\x. x", none);
    d["Delta"] = parse_term("\\x. x x", none);
    d["Omega"] = Term::app(d["Delta"], d["Delta"]);
    d["True"] = parse_term("\\x y. x", none);
    d["False"] = parse_term("\\x y. y", none);
    return d;
  }();
  return defs;
}

Term parse_term(std::string_view text, const Definitions& defs) { return TermParser(text, defs).parse(); }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto start = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  if (!start(s[0])) return false;
  for (char c : s) {
    if (!(start(c) || (c >= '0' && c <= '9') || c == '_' || c == '\'')) return false;
  }
  return true;
}

}  // namespace cbvlab
