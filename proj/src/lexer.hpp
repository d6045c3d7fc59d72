#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mixed/error.hpp"

namespace mixed::detail {

enum class Tok {
  Ident,
  Zero,
  Bot,
  And,       // &
  Or,        // |
  Arrow,     // ->
  LParen,
  RParen,
  Turnstile, // |-
  Comma,
  Semi,
  Bang,      // !
  Quest,     // ?
  Star,      // *
  Plus,      // +
  Lolli,     // -o
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string id(s.substr(start, i - start));
      out.push_back({id == "bot" ? Tok::Bot : Tok::Ident, id, start});
      continue;
    }
    if (two('|', '-')) {
      out.push_back({Tok::Turnstile, "|-", start});
      i += 2;
    } else if (two('-', '>')) {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
    } else if (two('-', 'o')) {
      out.push_back({Tok::Lolli, "-o", start});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '0': k = Tok::Zero; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case ';': k = Tok::Semi; break;
        case '!': k = Tok::Bang; break;
        case '?': k = Tok::Quest; break;
        case '*': k = Tok::Star; break;
        case '+': k = Tok::Plus; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// Cursor over a token vector.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[i_]; }
  bool at(Tok k) const { return toks_[i_].kind == k; }
  const Token& next() {
    const Token& t = toks_[i_];
    if (t.kind != Tok::End) ++i_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = toks_[i_];
    throw ParseError(msg + (t.kind == Tok::End ? " but reached end of input" : " near '" + t.text + "'"),
                     t.pos);
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace mixed::detail
