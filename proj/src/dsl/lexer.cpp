#include <cctype>

#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"

namespace qmock::dsl {

std::vector<Token> tokenize(const std::string& text, int firstLine) {
  std::vector<Token> out;
  int line = firstLine, col = 1;
  std::size_t k = 0;
  auto push = [&](TokenKind kind, std::string t, int c) { out.push_back(Token{kind, std::move(t), line, c}); };
  while (k < text.size()) {
    unsigned char ch = static_cast<unsigned char>(text[k]);
    if (ch == '\n') {
      ++line;
      col = 1;
      ++k;
      continue;
    }
    if (std::isspace(ch)) {
      ++col;
      ++k;
      continue;
    }
    if (ch == '#') {
      while (k < text.size() && text[k] != '\n') ++k;
      continue;
    }
    int start = col;
    if (std::isdigit(ch)) {
      std::size_t j = k;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(TokenKind::Number, text.substr(k, j - k), start);
      col += static_cast<int>(j - k);
      k = j;
      continue;
    }
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = k;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      push(TokenKind::Ident, text.substr(k, j - k), start);
      col += static_cast<int>(j - k);
      k = j;
      continue;
    }
    TokenKind kind;
    std::size_t len = 1;
    switch (ch) {
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '/': kind = TokenKind::Slash; break;
      case '^': kind = TokenKind::Caret; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ',': kind = TokenKind::Comma; break;
      case ';': kind = TokenKind::Semicolon; break;
      case '=': kind = TokenKind::Equals; break;
      case '.':
        if (k + 1 < text.size() && text[k + 1] == '.') {
          kind = TokenKind::DotDot;
          len = 2;
          break;
        }
        throw SyntaxError("single '.' (ranges are written lo..hi)", line, col);
      default: {
        std::string shown = ch < 0x80 ? std::string(1, static_cast<char>(ch)) : "non-ASCII byte";
        throw SyntaxError("unexpected character '" + shown + "'", line, col);
      }
    }
    push(kind, text.substr(k, len), start);
    k += len;
    col += static_cast<int>(len);
  }
  out.push_back(Token{TokenKind::End, "", line, col});
  return out;
}

}  // namespace qmock::dsl
