#include "crucible/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace crucible {

namespace {

constexpr std::array<std::string_view, 42> kKeywords = {
    "abstract", "all",    "and",     "as",      "assert", "but",     "check", "disj",
    "else",     "enum",   "exactly", "expect",  "extends", "fact",   "for",   "fun",
    "iden",     "iff",    "implies", "in",      "Int",    "int",     "let",   "lone",
    "module",   "no",     "none",    "not",     "one",    "open",    "or",    "pred",
    "private",  "run",    "seq",     "set",     "sig",    "some",    "sum",   "this",
    "univ",     "var",
};

// Longest first so that greedy matching works.
constexpr std::array<std::string_view, 14> kMultiCharSymbols = {
    "<=>", "=>", "->", "!=", "&&", "||", "<:", ":>", "++", ">=", "<=", "=<", "..", "::",
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.span = here(0);
    out.push_back(end);
    return out;
  }

 private:
  Span here(std::size_t length) const { return Span{pos_, length, line_, column_}; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      unsigned char c = text_[pos_];
      if (std::isspace(c)) {
        advance();
      } else if (starts_with("//") || starts_with("--")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (starts_with("/*")) {
        Span start = here(2);
        advance(2);
        while (pos_ < text_.size() && !starts_with("*/")) advance();
        if (pos_ >= text_.size()) throw Error(ErrorCode::SyntaxError, "unterminated comment", start);
        advance(2);
      } else {
        return;
      }
    }
  }

  Token next() {
    Token tok;
    unsigned char c = text_[pos_];
    std::size_t start = pos_;
    Span span = here(0);
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
      tok.text = std::string(text_.substr(start, pos_ - start));
      tok.kind = is_keyword(tok.text) ? TokenKind::Keyword : TokenKind::Identifier;
    } else if (std::isdigit(c)) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      tok.text = std::string(text_.substr(start, pos_ - start));
      tok.kind = TokenKind::Number;
    } else {
      tok.kind = TokenKind::Symbol;
      for (auto sym : kMultiCharSymbols) {
        if (starts_with(sym)) {
          tok.text = std::string(sym);
          break;
        }
      }
      if (tok.text.empty()) {
        static constexpr std::string_view kSingles = "{}[](),:|.~^*+-&!=#@<>;/%'";
        if (kSingles.find(static_cast<char>(c)) == std::string_view::npos) {
          std::string shown = (c >= 0x20 && c < 0x7f) ? std::string(1, static_cast<char>(c))
                                                      : "byte " + std::to_string(c);
          throw Error(ErrorCode::SyntaxError, "unexpected character '" + shown + "'", here(1));
        }
        tok.text = std::string(1, static_cast<char>(c));
      }
      advance(tok.text.size());
    }
    span.length = pos_ - start;
    tok.span = span;
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) noexcept {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace crucible
