#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace morseval {

enum class NodeKind : std::uint8_t {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Pow,   // integer exponent stored in `ipow`
    Neg,
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
};

struct ExprNode {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0; // Constant
    int var = -1;       // Variable
    int ipow = 0;       // Pow
    int a = -1;         // first child
    int b = -1;         // second child
};

/// Expression tree stored as a node pool; `root` indexes into `nodes`.
class ExprAst {
public:
    std::vector<ExprNode> nodes;
    int root = -1;

    int add_node(ExprNode n) {
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    bool empty() const { return root < 0; }
};

bool ast_equal(const ExprAst& x, const ExprAst& y);

/// Parses `src` against the grammar
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := atom ("^" integer)?
///   atom   := number | ident | ident "(" expr ")" | "(" expr ")" | "-" atom
/// Identifiers must be declared variables or one of exp, log, sin, cos, sqrt.
ExprAst parse_expr(std::string_view src, const std::vector<std::string>& vars);

/// Serializes with enough parentheses that parse(print(e)) == e structurally.
std::string print_expr(const ExprAst& ast, const std::vector<std::string>& vars);

/// Exact symbolic derivative with respect to variable index `var`.
ExprAst derivative(const ExprAst& ast, int var);

} // namespace morseval
