#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace qmock::dsl {

enum class NodeKind { Number, Imag, Q, Var, Neg, Add, Sub, Mul, Div, Pow, Poch, Sum, Prod, Call };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Bound {
  enum class Kind { Finite, PosInf, NegInf };
  Kind kind = Kind::Finite;
  NodePtr expr;
};

struct Node {
  NodeKind kind = NodeKind::Number;
  mpz_class value;              // Number literal (always a nonnegative integer)
  std::string name;             // Var, Call, and the index of Sum/Prod
  std::vector<NodePtr> kids;    // operands; Poch: args..., base; Call: args; Sum/Prod: body
  NodePtr bound;                // Poch upper index, null for inf
  Bound lo, hi;                 // Sum/Prod range
  int line = 0, column = 0;
};

NodePtr makeNumber(long v);
NodePtr makeLeaf(NodeKind k, std::string name = {});
NodePtr makeUnary(NodeKind k, NodePtr a);
NodePtr makeBinary(NodeKind k, NodePtr a, NodePtr b);

// structural equality (positions ignored)
bool sameTree(const NodePtr& a, const NodePtr& b);

// names the language reserves for calls, with their arities (min, max)
struct FunctionArity {
  int minArgs;
  int maxArgs;
};
bool lookupFunction(const std::string& name, FunctionArity* out);

}  // namespace qmock::dsl
