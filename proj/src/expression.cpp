#include "psgauss/expression.hpp"

#include <cmath>
#include <cstdio>

namespace psgauss {

namespace {

ExprPtr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

bool is_const(const ExprPtr& e, double v) {
    return e->op == ExprOp::Constant && e->value == v;
}

}  // namespace

ExprPtr make_constant(double value) {
    ExprNode n;
    n.op = ExprOp::Constant;
    n.value = value;
    return node(std::move(n));
}

ExprPtr make_var_u() {
    ExprNode n;
    n.op = ExprOp::VarU;
    return node(std::move(n));
}

ExprPtr make_var_v() {
    ExprNode n;
    n.op = ExprOp::VarV;
    return node(std::move(n));
}

ExprPtr make_param(const std::string& name) {
    ExprNode n;
    n.op = ExprOp::Param;
    n.name = name;
    return node(std::move(n));
}

ExprPtr make_unary(ExprOp op, ExprPtr a) {
    // fold unary minus of a literal, so printed negative constants
    // re-parse to the identical tree
    if (op == ExprOp::Neg && a->op == ExprOp::Constant) return make_constant(-a->value);
    ExprNode n;
    n.op = op;
    n.a = std::move(a);
    return node(std::move(n));
}

ExprPtr make_binary(ExprOp op, ExprPtr a, ExprPtr b) {
    ExprNode n;
    n.op = op;
    n.a = std::move(a);
    n.b = std::move(b);
    return node(std::move(n));
}

ExprPtr make_pow_int(ExprPtr base, int exponent) {
    ExprNode n;
    n.op = ExprOp::PowInt;
    n.a = std::move(base);
    n.exponent = exponent;
    return node(std::move(n));
}

ExprPtr substitute_params(const ExprPtr& e, const std::map<std::string, double>& values,
                          bool require_all) {
    switch (e->op) {
        case ExprOp::Param: {
            auto it = values.find(e->name);
            if (it == values.end()) {
                if (require_all) throw Error("undefined parameter '" + e->name + "'");
                return e;
            }
            return make_constant(it->second);
        }
        case ExprOp::Constant:
        case ExprOp::VarU:
        case ExprOp::VarV:
            return e;
        case ExprOp::PowInt:
            return make_pow_int(substitute_params(e->a, values, require_all), e->exponent);
        default:
            if (e->b)
                return make_binary(e->op, substitute_params(e->a, values, require_all),
                                   substitute_params(e->b, values, require_all));
            return make_unary(e->op, substitute_params(e->a, values, require_all));
    }
}

bool depends_on(const ExprPtr& e, char var) {
    switch (e->op) {
        case ExprOp::VarU: return var == 'u';
        case ExprOp::VarV: return var == 'v';
        case ExprOp::Constant:
        case ExprOp::Param: return false;
        default:
            if (depends_on(e->a, var)) return true;
            return e->b && depends_on(e->b, var);
    }
}

namespace {

// light folding keeps derivative trees readable in exported files

ExprPtr add(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (a->op == ExprOp::Constant && b->op == ExprOp::Constant)
        return make_constant(a->value + b->value);
    return make_binary(ExprOp::Add, std::move(a), std::move(b));
}

ExprPtr neg(ExprPtr a) {
    if (is_const(a, 0.0)) return a;
    return make_unary(ExprOp::Neg, std::move(a));
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return neg(std::move(b));
    if (a->op == ExprOp::Constant && b->op == ExprOp::Constant)
        return make_constant(a->value - b->value);
    return make_binary(ExprOp::Sub, std::move(a), std::move(b));
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a->op == ExprOp::Constant && b->op == ExprOp::Constant)
        return make_constant(a->value * b->value);
    return make_binary(ExprOp::Mul, std::move(a), std::move(b));
}

ExprPtr divide(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0)) return a;
    if (is_const(b, 1.0)) return a;
    return make_binary(ExprOp::Div, std::move(a), std::move(b));
}

}  // namespace

ExprPtr differentiate(const ExprPtr& e, char var) {
    switch (e->op) {
        case ExprOp::Constant:
        case ExprOp::Param:
            return make_constant(0.0);
        case ExprOp::VarU: return make_constant(var == 'u' ? 1.0 : 0.0);
        case ExprOp::VarV: return make_constant(var == 'v' ? 1.0 : 0.0);
        case ExprOp::Neg: return neg(differentiate(e->a, var));
        case ExprOp::Sin:
            return mul(make_unary(ExprOp::Cos, e->a), differentiate(e->a, var));
        case ExprOp::Cos:
            return neg(mul(make_unary(ExprOp::Sin, e->a), differentiate(e->a, var)));
        case ExprOp::Sinh:
            return mul(make_unary(ExprOp::Cosh, e->a), differentiate(e->a, var));
        case ExprOp::Cosh:
            return mul(make_unary(ExprOp::Sinh, e->a), differentiate(e->a, var));
        case ExprOp::Exp:
            return mul(make_unary(ExprOp::Exp, e->a), differentiate(e->a, var));
        case ExprOp::Log:
            return divide(differentiate(e->a, var), e->a);
        case ExprOp::Sqrt:
            return divide(differentiate(e->a, var),
                          mul(make_constant(2.0), make_unary(ExprOp::Sqrt, e->a)));
        case ExprOp::Add:
            return add(differentiate(e->a, var), differentiate(e->b, var));
        case ExprOp::Sub:
            return sub(differentiate(e->a, var), differentiate(e->b, var));
        case ExprOp::Mul:
            return add(mul(differentiate(e->a, var), e->b), mul(e->a, differentiate(e->b, var)));
        case ExprOp::Div:
            return divide(sub(mul(differentiate(e->a, var), e->b),
                              mul(e->a, differentiate(e->b, var))),
                          make_pow_int(e->b, 2));
        case ExprOp::PowInt: {
            if (e->exponent == 0) return make_constant(0.0);
            return mul(mul(make_constant(e->exponent), make_pow_int(e->a, e->exponent - 1)),
                       differentiate(e->a, var));
        }
    }
    throw Error("corrupt expression node");
}

namespace {

// precedence: add/sub 1, mul/div 2, unary minus 3, power 4, atoms 5
int precedence(const ExprPtr& e) {
    switch (e->op) {
        case ExprOp::Add:
        case ExprOp::Sub: return 1;
        case ExprOp::Mul:
        case ExprOp::Div: return 2;
        case ExprOp::Neg: return 3;
        case ExprOp::PowInt: return 4;
        case ExprOp::Constant:
            // a negative literal prints with a leading '-', so it binds
            // like a unary minus, not like an atom
            return std::signbit(e->value) ? 3 : 5;
        default: return 5;
    }
}

std::string fmt_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print(const ExprPtr& e, std::string& out);

void print_wrapped(const ExprPtr& e, int min_prec, std::string& out) {
    if (precedence(e) < min_prec) {
        out += '(';
        print(e, out);
        out += ')';
    } else {
        print(e, out);
    }
}

void print(const ExprPtr& e, std::string& out) {
    switch (e->op) {
        case ExprOp::Constant: out += fmt_number(e->value); return;
        case ExprOp::VarU: out += 'u'; return;
        case ExprOp::VarV: out += 'v'; return;
        case ExprOp::Param: out += e->name; return;
        case ExprOp::Neg:
            out += '-';
            print_wrapped(e->a, 4, out);
            return;
        case ExprOp::Sin: out += "sin("; break;
        case ExprOp::Cos: out += "cos("; break;
        case ExprOp::Sinh: out += "sinh("; break;
        case ExprOp::Cosh: out += "cosh("; break;
        case ExprOp::Exp: out += "exp("; break;
        case ExprOp::Log: out += "ln("; break;
        case ExprOp::Sqrt: out += "sqrt("; break;
        case ExprOp::Add:
            print_wrapped(e->a, 1, out);
            out += " + ";
            print_wrapped(e->b, 2, out);
            return;
        case ExprOp::Sub:
            print_wrapped(e->a, 1, out);
            out += " - ";
            print_wrapped(e->b, 2, out);
            return;
        case ExprOp::Mul:
            print_wrapped(e->a, 2, out);
            out += "*";
            print_wrapped(e->b, 3, out);
            return;
        case ExprOp::Div:
            print_wrapped(e->a, 2, out);
            out += "/";
            print_wrapped(e->b, 3, out);
            return;
        case ExprOp::PowInt:
            print_wrapped(e->a, 5, out);
            out += '^';
            out += std::to_string(e->exponent);
            return;
    }
    print(e->a, out);
    out += ')';
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    std::string out;
    print(e, out);
    return out;
}

}  // namespace psgauss
