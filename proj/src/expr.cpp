#include "morseval/expr.hpp"

#include "morseval/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

namespace morseval {

bool ast_equal(const ExprAst& x, const ExprAst& y) {
    std::function<bool(int, int)> eq = [&](int i, int j) -> bool {
        const ExprNode& p = x.nodes[static_cast<std::size_t>(i)];
        const ExprNode& q = y.nodes[static_cast<std::size_t>(j)];
        if (p.kind != q.kind) return false;
        switch (p.kind) {
        case NodeKind::Constant: return p.value == q.value;
        case NodeKind::Variable: return p.var == q.var;
        case NodeKind::Pow: return p.ipow == q.ipow && eq(p.a, q.a);
        case NodeKind::Neg:
        case NodeKind::Exp:
        case NodeKind::Log:
        case NodeKind::Sin:
        case NodeKind::Cos:
        case NodeKind::Sqrt: return eq(p.a, q.a);
        default: return eq(p.a, q.a) && eq(p.b, q.b);
        }
    };
    if (x.empty() || y.empty()) return x.empty() == y.empty();
    return eq(x.root, y.root);
}

namespace {

struct Parser {
    std::string_view src;
    std::size_t pos = 0;
    const std::vector<std::string>& vars;

    explicit Parser(std::string_view s, const std::vector<std::string>& v) : src(s), vars(v) {}

    ExprAst ast;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= src.size();
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw parse_error(std::string("expected ") + what, pos);
    }

    int parse_number() {
        skip_ws();
        std::size_t start = pos;
        const char* begin = src.data() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw parse_error("expected number", start);
        pos += static_cast<std::size_t>(end - begin);
        return ast.add_node({NodeKind::Constant, v, -1, 0, -1, -1});
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= src.size() ||
            !(std::isalpha(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            throw parse_error("expected identifier", start);
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        return std::string(src.substr(start, pos - start));
    }

    int parse_atom() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= src.size()) throw parse_error("unexpected end of input", pos);
        char c = src[pos];
        if (c == '-') {
            ++pos;
            int a = parse_atom();
            return ast.add_node({NodeKind::Neg, 0.0, -1, 0, a, -1});
        }
        if (c == '(') {
            ++pos;
            int e = parse_sum();
            expect(')', "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = parse_ident();
            if (accept('(')) {
                NodeKind k;
                if (name == "exp") k = NodeKind::Exp;
                else if (name == "log") k = NodeKind::Log;
                else if (name == "sin") k = NodeKind::Sin;
                else if (name == "cos") k = NodeKind::Cos;
                else if (name == "sqrt") k = NodeKind::Sqrt;
                else throw parse_error("unknown function '" + name + "'", start);
                int a = parse_sum();
                expect(')', "')'");
                return ast.add_node({k, 0.0, -1, 0, a, -1});
            }
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name)
                    return ast.add_node(
                        {NodeKind::Variable, 0.0, static_cast<int>(i), 0, -1, -1});
            throw parse_error("unknown identifier '" + name + "'", start);
        }
        throw parse_error("unexpected character", start);
    }

    int parse_factor() {
        int a = parse_atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos;
            bool negexp = false;
            if (pos < src.size() && src[pos] == '-') {
                negexp = true;
                ++pos;
            }
            if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
                throw parse_error("expected integer exponent", start);
            long k = 0;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                k = k * 10 + (src[pos] - '0');
                if (k > 64) throw parse_error("exponent too large", start);
                ++pos;
            }
            return ast.add_node(
                {NodeKind::Pow, 0.0, -1, static_cast<int>(negexp ? -k : k), a, -1});
        }
        return a;
    }

    int parse_term() {
        int a = parse_factor();
        for (;;) {
            if (accept('*')) {
                int b = parse_factor();
                a = ast.add_node({NodeKind::Mul, 0.0, -1, 0, a, b});
            } else if (accept('/')) {
                int b = parse_factor();
                a = ast.add_node({NodeKind::Div, 0.0, -1, 0, a, b});
            } else {
                return a;
            }
        }
    }

    int parse_sum() {
        int a = parse_term();
        for (;;) {
            if (accept('+')) {
                int b = parse_term();
                a = ast.add_node({NodeKind::Add, 0.0, -1, 0, a, b});
            } else if (accept('-')) {
                int b = parse_term();
                a = ast.add_node({NodeKind::Sub, 0.0, -1, 0, a, b});
            } else {
                return a;
            }
        }
    }
};

} // namespace

ExprAst parse_expr(std::string_view src, const std::vector<std::string>& vars) {
    if (src.empty()) throw parse_error("empty expression", 0);
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw usage_error("duplicate variable name '" + vars[i] + "'");
    Parser p(src, vars);
    int root = p.parse_sum();
    if (!p.eof()) throw parse_error("trailing input", p.pos);
    p.ast.root = root;
    return p.ast;
}

namespace {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string print_node(const ExprAst& ast, int i, const std::vector<std::string>& vars) {
    const ExprNode& n = ast.nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
    case NodeKind::Constant:
        return n.value < 0 ? "(" + fmt_num(n.value) + ")" : fmt_num(n.value);
    case NodeKind::Variable: return vars[static_cast<std::size_t>(n.var)];
    case NodeKind::Add:
        return "(" + print_node(ast, n.a, vars) + " + " + print_node(ast, n.b, vars) + ")";
    case NodeKind::Sub:
        return "(" + print_node(ast, n.a, vars) + " - " + print_node(ast, n.b, vars) + ")";
    case NodeKind::Mul:
        return "(" + print_node(ast, n.a, vars) + " * " + print_node(ast, n.b, vars) + ")";
    case NodeKind::Div:
        return "(" + print_node(ast, n.a, vars) + " / " + print_node(ast, n.b, vars) + ")";
    case NodeKind::Pow:
        return "(" + print_node(ast, n.a, vars) + ")^" +
               (n.ipow < 0 ? "-" + std::to_string(-n.ipow) : std::to_string(n.ipow));
    case NodeKind::Neg: return "-" + print_node(ast, n.a, vars);
    case NodeKind::Exp: return "exp(" + print_node(ast, n.a, vars) + ")";
    case NodeKind::Log: return "log(" + print_node(ast, n.a, vars) + ")";
    case NodeKind::Sin: return "sin(" + print_node(ast, n.a, vars) + ")";
    case NodeKind::Cos: return "cos(" + print_node(ast, n.a, vars) + ")";
    case NodeKind::Sqrt: return "sqrt(" + print_node(ast, n.a, vars) + ")";
    }
    return "";
}

// Derivative builder with light peephole simplification to keep repeated
// differentiation (vanishing-order probes go to order 8) from blowing up.
struct DerivBuilder {
    const ExprAst& in;
    ExprAst out;
    int var;

    bool is_const(int i, double v) const {
        const ExprNode& n = out.nodes[static_cast<std::size_t>(i)];
        return n.kind == NodeKind::Constant && n.value == v;
    }

    int cst(double v) { return out.add_node({NodeKind::Constant, v, -1, 0, -1, -1}); }

    int add(int a, int b) {
        if (is_const(a, 0.0)) return b;
        if (is_const(b, 0.0)) return a;
        return out.add_node({NodeKind::Add, 0.0, -1, 0, a, b});
    }

    int sub(int a, int b) {
        if (is_const(b, 0.0)) return a;
        return out.add_node({NodeKind::Sub, 0.0, -1, 0, a, b});
    }

    int mul(int a, int b) {
        if (is_const(a, 0.0) || is_const(b, 0.0)) return cst(0.0);
        if (is_const(a, 1.0)) return b;
        if (is_const(b, 1.0)) return a;
        return out.add_node({NodeKind::Mul, 0.0, -1, 0, a, b});
    }

    int div(int a, int b) {
        if (is_const(a, 0.0)) return cst(0.0);
        if (is_const(b, 1.0)) return a;
        return out.add_node({NodeKind::Div, 0.0, -1, 0, a, b});
    }

    int neg(int a) {
        if (is_const(a, 0.0)) return a;
        return out.add_node({NodeKind::Neg, 0.0, -1, 0, a, -1});
    }

    int unary(NodeKind k, int a) { return out.add_node({k, 0.0, -1, 0, a, -1}); }

    int pow(int a, int k) {
        if (k == 0) return cst(1.0);
        if (k == 1) return a;
        return out.add_node({NodeKind::Pow, 0.0, -1, k, a, -1});
    }

    // copy of subtree i into `out`
    int copy(int i) {
        const ExprNode& n = in.nodes[static_cast<std::size_t>(i)];
        ExprNode m = n;
        if (n.a >= 0) m.a = copy(n.a);
        if (n.b >= 0) m.b = copy(n.b);
        return out.add_node(m);
    }

    int d(int i) {
        const ExprNode& n = in.nodes[static_cast<std::size_t>(i)];
        switch (n.kind) {
        case NodeKind::Constant: return cst(0.0);
        case NodeKind::Variable: return cst(n.var == var ? 1.0 : 0.0);
        case NodeKind::Add: return add(d(n.a), d(n.b));
        case NodeKind::Sub: return sub(d(n.a), d(n.b));
        case NodeKind::Mul: return add(mul(d(n.a), copy(n.b)), mul(copy(n.a), d(n.b)));
        case NodeKind::Div: {
            int num = sub(mul(d(n.a), copy(n.b)), mul(copy(n.a), d(n.b)));
            int den = pow(copy(n.b), 2);
            return div(num, den);
        }
        case NodeKind::Pow: {
            int da = d(n.a);
            if (is_const(da, 0.0)) return cst(0.0);
            int base = pow(copy(n.a), n.ipow - 1);
            return mul(mul(cst(static_cast<double>(n.ipow)), base), da);
        }
        case NodeKind::Neg: return neg(d(n.a));
        case NodeKind::Exp: return mul(unary(NodeKind::Exp, copy(n.a)), d(n.a));
        case NodeKind::Log: return div(d(n.a), copy(n.a));
        case NodeKind::Sin: return mul(unary(NodeKind::Cos, copy(n.a)), d(n.a));
        case NodeKind::Cos: return neg(mul(unary(NodeKind::Sin, copy(n.a)), d(n.a)));
        case NodeKind::Sqrt: {
            int den = mul(cst(2.0), unary(NodeKind::Sqrt, copy(n.a)));
            return div(d(n.a), den);
        }
        }
        return cst(0.0);
    }
};

} // namespace

std::string print_expr(const ExprAst& ast, const std::vector<std::string>& vars) {
    if (ast.empty()) return "";
    return print_node(ast, ast.root, vars);
}

ExprAst derivative(const ExprAst& ast, int var) {
    DerivBuilder b{ast, {}, var};
    b.out.root = b.d(ast.root);
    return b.out;
}

} // namespace morseval
