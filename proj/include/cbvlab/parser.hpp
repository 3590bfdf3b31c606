#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cbvlab/term.hpp"

namespace cbvlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Named closed terms that identifiers expand to when not bound by a lambda.
using Definitions = std::map<std::string, Term>;

/// I, Delta, Omega, True, False. `Pair(M,N)` is always available as syntax.
const Definitions& builtin_definitions();

/// term ::= "\" ident+ "." term | atom+ ; atom ::= ident | "_" digits | "(" term ")"
/// | "Pair(" term "," term ")". `λ` is accepted for `\`.
Term parse_term(std::string_view text, const Definitions& defs = builtin_definitions());

bool is_identifier(std::string_view s);

}  // namespace cbvlab
