#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "crucible/error.hpp"

namespace crucible {

enum class TokenKind { Identifier, Keyword, Number, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  Span span;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_symbol(std::string_view t) const { return is(TokenKind::Symbol, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

bool is_keyword(std::string_view word) noexcept;

/// Splits Alloy source into tokens. Skips `//`, `--` and `/* */` comments.
/// The returned vector always ends with a single End token.
/// Throws Error(SyntaxError) on stray characters and unterminated comments.
std::vector<Token> tokenize(std::string_view text);

}  // namespace crucible
