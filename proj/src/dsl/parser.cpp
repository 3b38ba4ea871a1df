#include <map>

#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"
#include "qmock/mocktheta.hpp"

namespace qmock::dsl {

NodePtr makeNumber(long v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->value = v;
  return n;
}

NodePtr makeLeaf(NodeKind k, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  return n;
}

NodePtr makeUnary(NodeKind k, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = {std::move(a)};
  return n;
}

NodePtr makeBinary(NodeKind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = {std::move(a), std::move(b)};
  return n;
}

namespace {

bool sameBound(const Bound& a, const Bound& b) {
  if (a.kind != b.kind) return false;
  return a.kind != Bound::Kind::Finite || sameTree(a.expr, b.expr);
}

}  // namespace

bool sameTree(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->name != b->name || a->value != b->value) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t k = 0; k < a->kids.size(); ++k)
    if (!sameTree(a->kids[k], b->kids[k])) return false;
  if (!sameTree(a->bound, b->bound)) return false;
  if (a->kind == NodeKind::Sum || a->kind == NodeKind::Prod)
    return sameBound(a->lo, b->lo) && sameBound(a->hi, b->hi);
  return true;
}

bool lookupFunction(const std::string& name, FunctionArity* out) {
  static const std::map<std::string, FunctionArity> fixed = {
      {"jtp", {1, 2}}, {"j", {2, 2}}, {"J", {2, 2}}, {"Jbar", {2, 2}}, {"Jm", {1, 1}},
      {"m", {3, 3}},   {"g2", {2, 2}}, {"g3", {2, 2}},
  };
  auto it = fixed.find(name);
  if (it != fixed.end()) {
    if (out) *out = it->second;
    return true;
  }
  if (mockThetaByName(name)) {
    if (out) *out = FunctionArity{1, 1};
    return true;
  }
  return false;
}

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  NodePtr parseAll() {
    NodePtr e = expr();
    if (peek().kind != TokenKind::End) fail("unexpected '" + peek().text + "' after expression");
    return e;
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return t_[std::min(p_ + ahead, t_.size() - 1)]; }
  const Token& next() { return t_[p_ < t_.size() - 1 ? p_++ : p_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().line, peek().column); }
  bool accept(TokenKind k) {
    if (peek().kind != k) return false;
    ++p_;
    return true;
  }
  void expect(TokenKind k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + (peek().kind == TokenKind::End ? " before end of input" : ", found '" + peek().text + "'"));
  }

  static std::shared_ptr<Node> at(NodeKind k, const Token& tok) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->line = tok.line;
    n->column = tok.column;
    return n;
  }

  NodePtr binary(NodeKind k, const Token& tok, NodePtr a, NodePtr b) {
    auto n = at(k, tok);
    n->kids = {std::move(a), std::move(b)};
    return n;
  }

  NodePtr expr() {
    NodePtr left = term();
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      const Token& op = next();
      NodePtr right = term();
      left = binary(op.kind == TokenKind::Plus ? NodeKind::Add : NodeKind::Sub, op, left, right);
    }
    return left;
  }

  NodePtr term() {
    NodePtr left = unary();
    while (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash) {
      const Token& op = next();
      NodePtr right = unary();
      left = binary(op.kind == TokenKind::Star ? NodeKind::Mul : NodeKind::Div, op, left, right);
    }
    return left;
  }

  NodePtr unary() {
    if (peek().kind == TokenKind::Minus) {
      const Token& op = next();
      auto n = at(NodeKind::Neg, op);
      n->kids = {unary()};
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (peek().kind != TokenKind::Caret) return base;
    const Token& op = next();
    NodePtr e = exponent();
    if (peek().kind == TokenKind::Caret) fail("chained '^' needs parentheses");
    return binary(NodeKind::Pow, op, base, e);
  }

  // '^' takes a signed rational literal, an identifier, or a parenthesized expression
  NodePtr exponent() {
    if (peek().kind == TokenKind::Minus) {
      const Token& op = next();
      auto n = at(NodeKind::Neg, op);
      n->kids = {exponent()};
      return n;
    }
    const Token& tok = peek();
    if (tok.kind == TokenKind::Number) {
      next();
      NodePtr num = number(tok);
      if (peek().kind == TokenKind::Slash && peek(1).kind == TokenKind::Number) {
        const Token& op = next();
        const Token& den = next();
        return binary(NodeKind::Div, op, num, number(den));
      }
      return num;
    }
    if (tok.kind == TokenKind::Ident) {
      next();
      if (tok.text == "q" || tok.text == "i" || tok.text == "inf") fail("'" + tok.text + "' cannot be an exponent");
      auto n = at(NodeKind::Var, tok);
      n->name = tok.text;
      return n;
    }
    if (accept(TokenKind::LParen)) {
      NodePtr e = expr();
      expect(TokenKind::RParen, "')'");
      return e;
    }
    fail("expected exponent after '^'");
  }

  NodePtr number(const Token& tok) {
    auto n = at(NodeKind::Number, tok);
    n->value = mpz_class(tok.text);
    return n;
  }

  NodePtr atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::Number:
        next();
        return number(tok);
      case TokenKind::LParen: {
        next();
        NodePtr e = expr();
        expect(TokenKind::RParen, "')'");
        return e;
      }
      case TokenKind::Ident:
        return identifier();
      default:
        fail(tok.kind == TokenKind::End ? "unexpected end of input" : "unexpected '" + tok.text + "'");
    }
  }

  NodePtr identifier() {
    const Token& tok = next();
    const std::string& s = tok.text;
    if (s == "q") return at(NodeKind::Q, tok);
    if (s == "i") return at(NodeKind::Imag, tok);
    if (s == "inf") {
      --p_;
      fail("'inf' is only allowed as a range or Pochhammer bound");
    }
    bool call = peek().kind == TokenKind::LParen;
    if (s == "poch") {
      if (!call) fail("poch needs an argument list");
      return poch(tok);
    }
    if (s == "sum" || s == "prod") {
      if (!call) fail(s + " needs an argument list");
      return range(tok, s == "sum" ? NodeKind::Sum : NodeKind::Prod);
    }
    if (call) {
      FunctionArity ar{};
      if (!lookupFunction(s, &ar)) {
        --p_;
        fail("unknown function '" + s + "'");
      }
      return callNode(tok, ar);
    }
    auto n = at(NodeKind::Var, tok);
    n->name = s;
    return n;
  }

  NodePtr poch(const Token& tok) {
    expect(TokenKind::LParen, "'('");
    auto n = at(NodeKind::Poch, tok);
    n->kids.push_back(expr());
    while (accept(TokenKind::Comma)) n->kids.push_back(expr());
    expect(TokenKind::Semicolon, "';' before the Pochhammer base");
    n->kids.push_back(expr());
    expect(TokenKind::Semicolon, "';' before the Pochhammer bound");
    if (peek().kind == TokenKind::Ident && peek().text == "inf") {
      next();
    } else {
      n->bound = expr();
    }
    expect(TokenKind::RParen, "')'");
    return n;
  }

  Bound rangeBound(bool low) {
    Bound b;
    if (low && peek().kind == TokenKind::Minus && peek(1).kind == TokenKind::Ident && peek(1).text == "inf") {
      p_ += 2;
      b.kind = Bound::Kind::NegInf;
      return b;
    }
    if (!low && peek().kind == TokenKind::Ident && peek().text == "inf") {
      next();
      b.kind = Bound::Kind::PosInf;
      return b;
    }
    b.expr = expr();
    return b;
  }

  NodePtr range(const Token& tok, NodeKind kind) {
    expect(TokenKind::LParen, "'('");
    auto n = at(kind, tok);
    const Token& var = peek();
    if (var.kind != TokenKind::Ident || var.text == "q" || var.text == "i" || var.text == "inf")
      fail("expected index variable");
    next();
    n->name = var.text;
    expect(TokenKind::Equals, "'='");
    n->lo = rangeBound(true);
    expect(TokenKind::DotDot, "'..'");
    n->hi = rangeBound(false);
    expect(TokenKind::Comma, "','");
    n->kids.push_back(expr());
    expect(TokenKind::RParen, "')'");
    return n;
  }

  NodePtr callNode(const Token& tok, FunctionArity ar) {
    expect(TokenKind::LParen, "'('");
    auto n = at(NodeKind::Call, tok);
    n->name = tok.text;
    std::vector<std::pair<std::string, NodePtr>> args;
    if (peek().kind != TokenKind::RParen) {
      do {
        std::string label;
        if (peek().kind == TokenKind::Ident && peek(1).kind == TokenKind::Equals) {
          label = next().text;
          next();
        }
        args.emplace_back(label, expr());
      } while (accept(TokenKind::Comma));
    }
    const Token& close = peek();
    expect(TokenKind::RParen, "')'");
    // only jtp names its parameters: jtp(z=..., Q=...)
    std::vector<NodePtr> ordered(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) {
      const auto& [label, e] = args[k];
      std::size_t slot = k;
      if (!label.empty()) {
        if (n->name != "jtp" || (label != "z" && label != "Q"))
          throw SyntaxError("unknown argument name '" + label + "' for " + n->name, close.line, close.column);
        slot = label == "z" ? 0 : 1;
        if (slot >= ordered.size()) ordered.resize(slot + 1);
      }
      if (ordered[slot]) throw SyntaxError("argument given twice", close.line, close.column);
      ordered[slot] = e;
    }
    for (const auto& a : ordered)
      if (!a) throw SyntaxError("missing argument", close.line, close.column);
    int count = static_cast<int>(ordered.size());
    if (count < ar.minArgs || count > ar.maxArgs)
      throw Error(ErrorKind::ArityError, "line " + std::to_string(tok.line) + ", column " +
                                             std::to_string(tok.column) + ": " + n->name + " takes " +
                                             std::to_string(ar.minArgs) +
                                             (ar.maxArgs != ar.minArgs ? "-" + std::to_string(ar.maxArgs) : "") +
                                             " argument(s), got " + std::to_string(count));
    n->kids = std::move(ordered);
    return n;
  }
};

}  // namespace

NodePtr parseExpression(const std::string& text, int firstLine) {
  Parser p(tokenize(text, firstLine));
  return p.parseAll();
}

}  // namespace qmock::dsl
