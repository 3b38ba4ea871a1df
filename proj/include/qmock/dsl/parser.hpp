#pragma once

#include <string>
#include <vector>

#include "qmock/dsl/ast.hpp"

namespace qmock::dsl {

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Semicolon, Equals, DotDot, End };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(const std::string& text, int firstLine = 1);

// throws SyntaxError / Error(ArityError) with the offending position
NodePtr parseExpression(const std::string& text, int firstLine = 1);

// canonical text; parse(print(t)) is structurally equal to t
std::string print(const NodePtr& node);

}  // namespace qmock::dsl
