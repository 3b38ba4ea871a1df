#include <cctype>

#include "qmock/dsl/parser.hpp"

namespace qmock::dsl {

namespace {

int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

std::string show(const NodePtr& n);

std::string wrap(const NodePtr& n, int minPrec) {
  std::string s = show(n);
  return precedence(*n) < minPrec ? "(" + s + ")" : s;
}

// a trailing "^<digits>" followed by "/<digit>" would re-read as a rational exponent
bool endsWithNumericPower(const std::string& s) {
  std::size_t k = s.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
  if (k == s.size() || k == 0) return false;
  if (s[k - 1] == '-') --k;
  return k > 0 && s[k - 1] == '^';
}

std::string showExponent(const NodePtr& e) {
  if (e->kind == NodeKind::Number || e->kind == NodeKind::Var) return show(e);
  if (e->kind == NodeKind::Neg && (e->kids[0]->kind == NodeKind::Number || e->kids[0]->kind == NodeKind::Var))
    return "-" + show(e->kids[0]);
  return "(" + show(e) + ")";
}

std::string showBound(const Bound& b) {
  switch (b.kind) {
    case Bound::Kind::PosInf: return "inf";
    case Bound::Kind::NegInf: return "-inf";
    case Bound::Kind::Finite: break;
  }
  return show(b.expr);
}

std::string show(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::Number: return n->value.get_str();
    case NodeKind::Imag: return "i";
    case NodeKind::Q: return "q";
    case NodeKind::Var: return n->name;
    case NodeKind::Neg: return "-" + wrap(n->kids[0], 3);
    case NodeKind::Add: return show(n->kids[0]) + " + " + wrap(n->kids[1], 2);
    case NodeKind::Sub: return show(n->kids[0]) + " - " + wrap(n->kids[1], 2);
    case NodeKind::Mul:
    case NodeKind::Div: {
      std::string left = wrap(n->kids[0], 2);
      std::string right = wrap(n->kids[1], 3);
      if (n->kind == NodeKind::Div && endsWithNumericPower(left) && std::isdigit(static_cast<unsigned char>(right[0])))
        left = "(" + left + ")";
      return left + (n->kind == NodeKind::Mul ? "*" : "/") + right;
    }
    case NodeKind::Pow: return wrap(n->kids[0], 5) + "^" + showExponent(n->kids[1]);
    case NodeKind::Poch: {
      std::string s = "poch(";
      for (std::size_t k = 0; k + 1 < n->kids.size(); ++k) s += (k ? ", " : "") + show(n->kids[k]);
      s += "; " + show(n->kids.back()) + "; " + (n->bound ? show(n->bound) : std::string("inf")) + ")";
      return s;
    }
    case NodeKind::Sum:
    case NodeKind::Prod:
      return std::string(n->kind == NodeKind::Sum ? "sum(" : "prod(") + n->name + "=" + showBound(n->lo) + ".." +
             showBound(n->hi) + ", " + show(n->kids[0]) + ")";
    case NodeKind::Call: {
      std::string s = n->name + "(";
      for (std::size_t k = 0; k < n->kids.size(); ++k) s += (k ? ", " : "") + show(n->kids[k]);
      return s + ")";
    }
  }
  return "?";
}

}  // namespace

std::string print(const NodePtr& node) { return show(node); }

}  // namespace qmock::dsl
