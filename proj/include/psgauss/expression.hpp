#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "psgauss/jet.hpp"

namespace psgauss {

enum class ExprOp {
    Constant, VarU, VarV, Param,
    Neg, Sin, Cos, Sinh, Cosh, Exp, Log, Sqrt,
    Add, Sub, Mul, Div, PowInt,
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Immutable expression tree node.  Unary ops use `a`; binary ops use
/// `a` and `b`; PowInt uses `a` and `exponent`.
struct ExprNode {
    ExprOp op;
    double value = 0.0;     // Constant
    std::string name;       // Param
    int exponent = 0;       // PowInt
    ExprPtr a, b;
};

ExprPtr make_constant(double value);
ExprPtr make_var_u();
ExprPtr make_var_v();
ExprPtr make_param(const std::string& name);
ExprPtr make_unary(ExprOp op, ExprPtr a);
ExprPtr make_binary(ExprOp op, ExprPtr a, ExprPtr b);
ExprPtr make_pow_int(ExprPtr base, int exponent);

/// Replace parameter references by constants; throws on unknown parameters
/// if `require_all` is set.
ExprPtr substitute_params(const ExprPtr& e, const std::map<std::string, double>& values,
                          bool require_all = true);

/// Symbolic partial derivative with respect to u (var = 'u') or v.
ExprPtr differentiate(const ExprPtr& e, char var);

/// Canonical text form; re-parses to an identical tree.
std::string to_string(const ExprPtr& e);

/// True when the expression references the given chart variable.
bool depends_on(const ExprPtr& e, char var);

inline double pow_int_dispatch(double x, int n) {
    if (n < 0 && x == 0.0) throw FunctionDomainError("zero base with negative exponent");
    return std::pow(x, n);
}
inline Jet pow_int_dispatch(const Jet& x, int n) { return pow_int(x, n); }

/// Evaluate over double or Jet scalars.  Parameters must have been
/// substituted out beforehand.
template <class T>
T eval_expr(const ExprPtr& e, const T& u, const T& v) {
    switch (e->op) {
        case ExprOp::Constant: return T{} + e->value;
        case ExprOp::VarU: return u;
        case ExprOp::VarV: return v;
        case ExprOp::Param:
            throw Error("unsubstituted parameter '" + e->name + "' in expression");
        case ExprOp::Neg: return -eval_expr(e->a, u, v);
        case ExprOp::Sin: { using std::sin; return sin(eval_expr(e->a, u, v)); }
        case ExprOp::Cos: { using std::cos; return cos(eval_expr(e->a, u, v)); }
        case ExprOp::Sinh: { using std::sinh; return sinh(eval_expr(e->a, u, v)); }
        case ExprOp::Cosh: { using std::cosh; return cosh(eval_expr(e->a, u, v)); }
        case ExprOp::Exp: { using std::exp; return exp(eval_expr(e->a, u, v)); }
        case ExprOp::Log: { using std::log; return log(eval_expr(e->a, u, v)); }
        case ExprOp::Sqrt: { using std::sqrt; return sqrt(eval_expr(e->a, u, v)); }
        case ExprOp::Add: return eval_expr(e->a, u, v) + eval_expr(e->b, u, v);
        case ExprOp::Sub: return eval_expr(e->a, u, v) - eval_expr(e->b, u, v);
        case ExprOp::Mul: return eval_expr(e->a, u, v) * eval_expr(e->b, u, v);
        case ExprOp::Div: return eval_expr(e->a, u, v) / eval_expr(e->b, u, v);
        case ExprOp::PowInt: return pow_int_dispatch(eval_expr(e->a, u, v), e->exponent);
    }
    throw Error("corrupt expression node");
}

}  // namespace psgauss
