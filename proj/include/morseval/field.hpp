#pragma once

#include "morseval/expr.hpp"
#include "morseval/jet.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace morseval {

/// Per-axis closed intervals; desk scale is dim <= 3.
struct Box {
    int dim = 0;
    std::array<double, 3> lo{};
    std::array<double, 3> hi{};

    static Box interval(double a, double b) {
        Box box;
        box.dim = 1;
        box.lo[0] = a;
        box.hi[0] = b;
        return box;
    }

    static Box make(std::span<const double> los, std::span<const double> his) {
        Box box;
        box.dim = static_cast<int>(los.size());
        for (int i = 0; i < box.dim; ++i) {
            box.lo[static_cast<std::size_t>(i)] = los[static_cast<std::size_t>(i)];
            box.hi[static_cast<std::size_t>(i)] = his[static_cast<std::size_t>(i)];
        }
        return box;
    }

    bool contains(std::span<const double> p, double margin = 0.0) const {
        for (int i = 0; i < dim; ++i)
            if (p[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)] + margin ||
                p[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)] - margin)
                return false;
        return true;
    }

    void validate() const;
};

struct Grid {
    std::array<int, 3> counts{64, 64, 64};

    static Grid uniform(int n) { return Grid{{n, n, n}}; }

    void validate(int dim) const;
};

/// Point-valued callable on R^dim.
using FieldFn = std::function<double(std::span<const double>)>;

/// Jet-valued callable (value, gradient, Hessian up to `order`).
using JetFn = std::function<Jet2(std::span<const double>, int order)>;

/// Expression-backed smooth function with exact derivatives via second-order
/// forward duals.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(ExprAst ast, std::vector<std::string> vars, Box domain);

    /// Parses `src` over `vars`; domain defaults to [-10,10]^n when omitted.
    static ScalarField parse(const std::string& src, const std::vector<std::string>& vars);
    static ScalarField parse(const std::string& src, const std::vector<std::string>& vars, Box domain);

    double value(std::span<const double> p) const;
    Jet2 jet(std::span<const double> p, int order) const;

    /// Exact partial-derivative field (symbolic).
    ScalarField deriv(int var) const;

    int dim() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    const Box& domain() const { return domain_; }
    const ExprAst& ast() const { return ast_; }
    std::string print() const { return print_expr(ast_, vars_); }

    FieldFn fn() const;
    JetFn jetfn() const;

private:
    ExprAst ast_;
    std::vector<std::string> vars_;
    Box domain_;
};

/// (value, gradient?, hessian?) of `f` at `p`; exact forward-mode derivatives.
Jet2 eval_jet(const ScalarField& f, std::span<const double> p, int order);

/// Central-difference jet for closure-backed fields (order <= 2).
Jet2 fd_jet(const FieldFn& f, std::span<const double> p, int n, int order, double h = 1e-5);

JetFn fd_jetfn(FieldFn f, int n, double h = 1e-5);

/// 1D smooth function handle with exact-derivative closures; the dromedary
/// and value-moving machinery operate on these so that flow-composed and
/// quadrature-backed functions can ride the same code paths as AST fields.
struct Fn1D {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    std::function<double(double)> d3f; // may be empty; fd fallback then

    double third(double x) const;

    static Fn1D from_field(const ScalarField& k);
};

} // namespace morseval
