#include "morseval/field.hpp"

#include "morseval/errors.hpp"

#include <cmath>
#include <cstdio>

namespace morseval {

void Box::validate() const {
    if (dim < 1 || dim > 3) throw precondition_error("box dimension must be 1..3");
    for (int i = 0; i < dim; ++i)
        if (!(lo[static_cast<std::size_t>(i)] < hi[static_cast<std::size_t>(i)]))
            throw precondition_error("box requires lo < hi per axis");
}

void Grid::validate(int dim) const {
    for (int i = 0; i < dim; ++i)
        if (counts[static_cast<std::size_t>(i)] < 2)
            throw precondition_error("grid counts must be >= 2");
}

ScalarField::ScalarField(ExprAst ast, std::vector<std::string> vars, Box domain)
    : ast_(std::move(ast)), vars_(std::move(vars)), domain_(domain) {
    domain_.validate();
}

ScalarField ScalarField::parse(const std::string& src, const std::vector<std::string>& vars) {
    Box b;
    b.dim = vars.empty() ? 1 : static_cast<int>(vars.size());
    for (int i = 0; i < b.dim; ++i) {
        b.lo[static_cast<std::size_t>(i)] = -10.0;
        b.hi[static_cast<std::size_t>(i)] = 10.0;
    }
    return parse(src, vars, b);
}

ScalarField ScalarField::parse(const std::string& src, const std::vector<std::string>& vars,
                               Box domain) {
    return ScalarField(parse_expr(src, vars), vars, domain);
}

namespace {

double eval_node(const ExprAst& ast, int i, std::span<const double> p) {
    const ExprNode& n = ast.nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::Variable: return p[static_cast<std::size_t>(n.var)];
    case NodeKind::Add: return eval_node(ast, n.a, p) + eval_node(ast, n.b, p);
    case NodeKind::Sub: return eval_node(ast, n.a, p) - eval_node(ast, n.b, p);
    case NodeKind::Mul: return eval_node(ast, n.a, p) * eval_node(ast, n.b, p);
    case NodeKind::Div: {
        double b = eval_node(ast, n.b, p);
        if (b == 0.0) throw domain_error("division by zero");
        return eval_node(ast, n.a, p) / b;
    }
    case NodeKind::Pow: {
        double a = eval_node(ast, n.a, p);
        if (a == 0.0 && n.ipow < 0) throw domain_error("negative power of zero");
        return std::pow(a, static_cast<double>(n.ipow));
    }
    case NodeKind::Neg: return -eval_node(ast, n.a, p);
    case NodeKind::Exp: return std::exp(eval_node(ast, n.a, p));
    case NodeKind::Log: {
        double a = eval_node(ast, n.a, p);
        if (a <= 0.0) throw domain_error("log of nonpositive value");
        return std::log(a);
    }
    case NodeKind::Sin: return std::sin(eval_node(ast, n.a, p));
    case NodeKind::Cos: return std::cos(eval_node(ast, n.a, p));
    case NodeKind::Sqrt: {
        double a = eval_node(ast, n.a, p);
        if (a < 0.0) throw domain_error("sqrt of negative value");
        return std::sqrt(a);
    }
    }
    return 0.0;
}

Jet2 eval_node_jet(const ExprAst& ast, int i, std::span<const double> p, int n, int order) {
    const ExprNode& nd = ast.nodes[static_cast<std::size_t>(i)];
    switch (nd.kind) {
    case NodeKind::Constant: return Jet2::constant(nd.value, n, order);
    case NodeKind::Variable:
        return Jet2::variable(p[static_cast<std::size_t>(nd.var)], nd.var, n, order);
    case NodeKind::Add:
        return eval_node_jet(ast, nd.a, p, n, order) + eval_node_jet(ast, nd.b, p, n, order);
    case NodeKind::Sub:
        return eval_node_jet(ast, nd.a, p, n, order) - eval_node_jet(ast, nd.b, p, n, order);
    case NodeKind::Mul:
        return eval_node_jet(ast, nd.a, p, n, order) * eval_node_jet(ast, nd.b, p, n, order);
    case NodeKind::Div:
        return eval_node_jet(ast, nd.a, p, n, order) / eval_node_jet(ast, nd.b, p, n, order);
    case NodeKind::Pow: return jet_powi(eval_node_jet(ast, nd.a, p, n, order), nd.ipow);
    case NodeKind::Neg: return -eval_node_jet(ast, nd.a, p, n, order);
    case NodeKind::Exp: return jet_exp(eval_node_jet(ast, nd.a, p, n, order));
    case NodeKind::Log: return jet_log(eval_node_jet(ast, nd.a, p, n, order));
    case NodeKind::Sin: return jet_sin(eval_node_jet(ast, nd.a, p, n, order));
    case NodeKind::Cos: return jet_cos(eval_node_jet(ast, nd.a, p, n, order));
    case NodeKind::Sqrt: return jet_sqrt(eval_node_jet(ast, nd.a, p, n, order));
    }
    return Jet2::constant(0.0, n, order);
}

} // namespace

double ScalarField::value(std::span<const double> p) const {
    return eval_node(ast_, ast_.root, p);
}

Jet2 ScalarField::jet(std::span<const double> p, int order) const {
    return eval_node_jet(ast_, ast_.root, p, dim(), order);
}

ScalarField ScalarField::deriv(int var) const {
    return ScalarField(derivative(ast_, var), vars_, domain_);
}

FieldFn ScalarField::fn() const {
    ScalarField copy = *this;
    return [copy](std::span<const double> p) { return copy.value(p); };
}

JetFn ScalarField::jetfn() const {
    ScalarField copy = *this;
    return [copy](std::span<const double> p, int order) { return copy.jet(p, order); };
}

Jet2 eval_jet(const ScalarField& f, std::span<const double> p, int order) {
    if (order < 0 || order > 2) throw precondition_error("jet order must be 0..2");
    return f.jet(p, order);
}

Jet2 fd_jet(const FieldFn& f, std::span<const double> p, int n, int order, double h) {
    Jet2 r = Jet2::constant(f(p), n, order);
    if (order == 0) return r;
    std::array<double, 3> q{};
    for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    auto at = [&](int i, double di, int j, double dj) {
        std::array<double, 3> x = q;
        x[static_cast<std::size_t>(i)] += di;
        if (j >= 0) x[static_cast<std::size_t>(j)] += dj;
        return f(std::span<const double>(x.data(), static_cast<std::size_t>(n)));
    };
    for (int i = 0; i < n; ++i)
        r.g[static_cast<std::size_t>(i)] = (at(i, h, -1, 0) - at(i, -h, -1, 0)) / (2 * h);
    if (order >= 2) {
        for (int i = 0; i < n; ++i)
            r.h[static_cast<std::size_t>(Jet2::hidx(i, i, n))] =
                (at(i, h, -1, 0) - 2 * r.v + at(i, -h, -1, 0)) / (h * h);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                r.h[static_cast<std::size_t>(Jet2::hidx(i, j, n))] =
                    (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) /
                    (4 * h * h);
    }
    return r;
}

JetFn fd_jetfn(FieldFn f, int n, double h) {
    return [f, n, h](std::span<const double> p, int order) { return fd_jet(f, p, n, order, h); };
}

double Fn1D::third(double x) const {
    if (d3f) return d3f(x);
    const double h = 1e-4;
    return (d2f(x + h) - d2f(x - h)) / (2 * h);
}

Fn1D Fn1D::from_field(const ScalarField& k) {
    if (k.dim() != 1) throw precondition_error("Fn1D requires a 1-variable field");
    ScalarField k1 = k.deriv(0);
    ScalarField k2 = k1.deriv(0);
    ScalarField k3 = k2.deriv(0);
    Fn1D out;
    out.f = [k](double x) { return k.value(std::span<const double>(&x, 1)); };
    out.df = [k1](double x) { return k1.value(std::span<const double>(&x, 1)); };
    out.d2f = [k2](double x) { return k2.value(std::span<const double>(&x, 1)); };
    out.d3f = [k3](double x) { return k3.value(std::span<const double>(&x, 1)); };
    return out;
}

} // namespace morseval
