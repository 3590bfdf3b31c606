#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "cbvlab/parser.hpp"

namespace cbvlab::detail {

enum class Tok { Lambda, Dot, LParen, RParen, LBracket, RBracket, Comma, Ident, Hole, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::uint32_t hole = 0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

  Token expect(Tok k, const char* what) {
    if (cur_.kind != k) throw ParseError(std::string("expected ") + what, cur_.pos);
    return next();
  }

 private:
  static bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
  static bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '\'';
  }
  static bool digit(char c) { return c >= '0' && c <= '9'; }

  void advance() {
    while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\n' || src_[i_] == '\r')) ++i_;
    cur_ = Token{};
    cur_.pos = i_;
    if (i_ >= src_.size()) return;
    char c = src_[i_];
    auto single = [&](Tok k) {
      cur_.kind = k;
      ++i_;
    };
    switch (c) {
      case '\\': return single(Tok::Lambda);
      case '.': return single(Tok::Dot);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case ',': return single(Tok::Comma);
      default: break;
    }
    if (src_.substr(i_, 2) == "\xCE\xBB") {  // UTF-8 lambda
      cur_.kind = Tok::Lambda;
      i_ += 2;
      return;
    }
    if (c == '_') {
      std::size_t j = i_ + 1;
      while (j < src_.size() && digit(src_[j])) ++j;
      if (j == i_ + 1) throw ParseError("malformed hole (expected digits after '_')", i_);
      std::uint64_t idx = 0;
      for (std::size_t k = i_ + 1; k < j; ++k) {
        idx = idx * 10 + static_cast<std::uint64_t>(src_[k] - '0');
        if (idx > 1000000) throw ParseError("hole index too large", i_);
      }
      if (idx == 0) throw ParseError("hole index 0 (holes are numbered from 1)", i_);
      cur_.kind = Tok::Hole;
      cur_.hole = static_cast<std::uint32_t>(idx);
      i_ = j;
      return;
    }
    if (ident_start(c)) {
      std::size_t j = i_;
      while (j < src_.size() && ident_char(src_[j])) ++j;
      cur_.kind = Tok::Ident;
      cur_.text = std::string(src_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    if (digit(c) || c == '\'') throw ParseError("malformed identifier (must start with a letter)", i_);
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token cur_;
};

}  // namespace cbvlab::detail
