#include "psgauss/immersion.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

namespace psgauss {

namespace {

// ---------------------------------------------------------------------------
// tokenizer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    double number = 0.0;
    std::string text;
    int column = 0;  // 1-based within the source line
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Number: return "number";
        case Tok::Ident: return "identifier";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        default: return "end of input";
    }
}

class Lexer {
public:
    Lexer(const std::string& src, int line, int col_offset)
        : src_(src), line_(line), col_offset_(col_offset) {
        advance();
    }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(line_, cur_.column, expected,
                         "line " + std::to_string(line_) + ", column " +
                             std::to_string(cur_.column) + ": expected " + expected + ", got " +
                             tok_name(cur_.kind));
    }

    int line() const { return line_; }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        cur_ = Token{};
        cur_.column = col_offset_ + static_cast<int>(pos_) + 1;
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::End;
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.c_str() + pos_;
            char* end = nullptr;
            cur_.number = std::strtod(begin, &end);
            if (end == begin)
                throw ParseError(line_, cur_.column, "number",
                                 "line " + std::to_string(line_) + ", column " +
                                     std::to_string(cur_.column) + ": malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            cur_.kind = Tok::Number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            cur_.kind = Tok::Ident;
            cur_.text = src_.substr(start, pos_ - start);
            return;
        }
        ++pos_;
        switch (c) {
            case '+': cur_.kind = Tok::Plus; return;
            case '-': cur_.kind = Tok::Minus; return;
            case '*': cur_.kind = Tok::Star; return;
            case '/': cur_.kind = Tok::Slash; return;
            case '^': cur_.kind = Tok::Caret; return;
            case '(': cur_.kind = Tok::LParen; return;
            case ')': cur_.kind = Tok::RParen; return;
            case ',': cur_.kind = Tok::Comma; return;
            default:
                throw ParseError(line_, cur_.column, "token",
                                 "line " + std::to_string(line_) + ", column " +
                                     std::to_string(cur_.column) + ": unexpected character '" +
                                     std::string(1, c) + "'");
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token cur_;
    int line_;
    int col_offset_;
};

// ---------------------------------------------------------------------------
// recursive descent parser
//
// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := '-' factor | power
// power  := atom ('^' ['-'] integer)?
// atom   := number | ident | ident '(' expr ')' | '(' expr ')'

struct ParamSet {
    const std::map<std::string, double>* names = nullptr;  // declared parameters
};

ExprPtr parse_expr(Lexer& lx, const ParamSet& params);

ExprPtr parse_atom(Lexer& lx, const ParamSet& params) {
    const Token t = lx.peek();
    switch (t.kind) {
        case Tok::Number:
            lx.take();
            return make_constant(t.number);
        case Tok::LParen: {
            lx.take();
            ExprPtr e = parse_expr(lx, params);
            if (lx.peek().kind != Tok::RParen) lx.fail("')'");
            lx.take();
            return e;
        }
        case Tok::Ident: {
            lx.take();
            static const std::map<std::string, ExprOp> functions = {
                {"sin", ExprOp::Sin},   {"cos", ExprOp::Cos},  {"sinh", ExprOp::Sinh},
                {"cosh", ExprOp::Cosh}, {"exp", ExprOp::Exp},  {"ln", ExprOp::Log},
                {"sqrt", ExprOp::Sqrt},
            };
            auto fn = functions.find(t.text);
            if (fn != functions.end()) {
                if (lx.peek().kind != Tok::LParen) lx.fail("'(' after function name");
                lx.take();
                ExprPtr arg = parse_expr(lx, params);
                if (lx.peek().kind == Tok::Comma)
                    throw ParseError(lx.line(), lx.peek().column, "')'",
                                     "line " + std::to_string(lx.line()) + ", column " +
                                         std::to_string(lx.peek().column) + ": '" + t.text +
                                         "' takes exactly one argument");
                if (lx.peek().kind != Tok::RParen) lx.fail("')'");
                lx.take();
                return make_unary(fn->second, std::move(arg));
            }
            if (t.text == "u") return make_var_u();
            if (t.text == "v") return make_var_v();
            if (t.text == "pi") return make_constant(M_PI);
            if (params.names && params.names->count(t.text)) return make_param(t.text);
            throw ParseError(lx.line(), t.column, "identifier",
                             "line " + std::to_string(lx.line()) + ", column " +
                                 std::to_string(t.column) + ": unknown identifier '" + t.text +
                                 "'");
        }
        default:
            lx.fail("number, identifier or '('");
    }
}

ExprPtr parse_power(Lexer& lx, const ParamSet& params) {
    ExprPtr base = parse_atom(lx, params);
    if (lx.peek().kind != Tok::Caret) return base;
    lx.take();
    int sign = 1;
    if (lx.peek().kind == Tok::Minus) {
        lx.take();
        sign = -1;
    }
    if (lx.peek().kind != Tok::Number) lx.fail("integer exponent");
    const Token t = lx.take();
    const double n = t.number;
    if (n != std::floor(n) || std::abs(n) > 64)
        throw ParseError(lx.line(), t.column, "integer exponent",
                         "line " + std::to_string(lx.line()) + ", column " +
                             std::to_string(t.column) + ": exponents must be small integers");
    return make_pow_int(std::move(base), sign * static_cast<int>(n));
}

ExprPtr parse_factor(Lexer& lx, const ParamSet& params) {
    if (lx.peek().kind == Tok::Minus) {
        lx.take();
        return make_unary(ExprOp::Neg, parse_factor(lx, params));
    }
    return parse_power(lx, params);
}

ExprPtr parse_term(Lexer& lx, const ParamSet& params) {
    ExprPtr e = parse_factor(lx, params);
    while (lx.peek().kind == Tok::Star || lx.peek().kind == Tok::Slash) {
        const Tok op = lx.take().kind;
        ExprPtr rhs = parse_factor(lx, params);
        e = make_binary(op == Tok::Star ? ExprOp::Mul : ExprOp::Div, std::move(e),
                        std::move(rhs));
    }
    return e;
}

ExprPtr parse_expr(Lexer& lx, const ParamSet& params) {
    ExprPtr e = parse_term(lx, params);
    while (lx.peek().kind == Tok::Plus || lx.peek().kind == Tok::Minus) {
        const Tok op = lx.take().kind;
        ExprPtr rhs = parse_term(lx, params);
        e = make_binary(op == Tok::Plus ? ExprOp::Add : ExprOp::Sub, std::move(e),
                        std::move(rhs));
    }
    return e;
}

ExprPtr parse_full_expression(const std::string& text, int line, int col_offset,
                              const ParamSet& params) {
    Lexer lx(text, line, col_offset);
    ExprPtr e = parse_expr(lx, params);
    if (lx.peek().kind != Tok::End) lx.fail("end of expression");
    return e;
}

// ---------------------------------------------------------------------------
// file format

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct HeaderLine {
    int line_no;
    std::string key;    // up to the first '='
    std::string value;  // after the first '='
    int value_col;      // 1-based column where the value begins
};

std::vector<HeaderLine> split_lines(const std::string& source) {
    std::vector<HeaderLine> out;
    std::istringstream in(source);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        std::string text = hash == std::string::npos ? raw : raw.substr(0, hash);
        if (strip(text).empty()) continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, 1, "'key = value'",
                             "line " + std::to_string(line_no) + ": expected 'key = value'");
        HeaderLine h;
        h.line_no = line_no;
        h.key = strip(text.substr(0, eq));
        h.value = text.substr(eq + 1);
        h.value_col = static_cast<int>(eq) + 1;
        out.push_back(std::move(h));
    }
    return out;
}

double parse_bound(const std::string& text, int line, int col_offset) {
    // constant expression: numbers, pi, arithmetic; no chart variables
    ParamSet none;
    ExprPtr e = parse_full_expression(text, line, col_offset, none);
    if (depends_on(e, 'u') || depends_on(e, 'v'))
        throw ParseError(line, col_offset + 1, "constant",
                         "line " + std::to_string(line) + ": domain bounds must be constant");
    return eval_expr<double>(e, 0.0, 0.0);
}

// "u in [a, b], v in [c, d]"
void parse_domain(const std::string& value, int line_no, int col, ChartDomain& dom) {
    const std::string text = value;
    auto find_interval = [&](char var, double& lo, double& hi) {
        const std::string prefix(1, var);
        std::size_t p = text.find(prefix + " in");
        if (p == std::string::npos)
            throw ParseError(line_no, col, "'u in [a,b], v in [c,d]'",
                             "line " + std::to_string(line_no) + ": malformed domain");
        std::size_t lb = text.find('[', p);
        std::size_t comma = text.find(',', lb);
        std::size_t rb = text.find(']', comma);
        if (lb == std::string::npos || comma == std::string::npos || rb == std::string::npos)
            throw ParseError(line_no, col, "'[a, b]'",
                             "line " + std::to_string(line_no) + ": malformed interval");
        lo = parse_bound(text.substr(lb + 1, comma - lb - 1), line_no,
                         col + static_cast<int>(lb));
        hi = parse_bound(text.substr(comma + 1, rb - comma - 1), line_no,
                         col + static_cast<int>(comma));
    };
    find_interval('u', dom.u0, dom.u1);
    find_interval('v', dom.v0, dom.v1);
    if (!(dom.u0 < dom.u1) || !(dom.v0 < dom.v1))
        throw ParseError(line_no, col, "non-empty intervals",
                         "line " + std::to_string(line_no) + ": empty chart domain");
}

// "lhs = rhs" as the zero set of lhs - rhs
ExprPtr parse_excluded(const std::string& value, int line_no, int col) {
    ParamSet none;
    const std::size_t eq = value.find('=');
    if (eq == std::string::npos)
        return parse_full_expression(value, line_no, col, none);
    ExprPtr lhs = parse_full_expression(value.substr(0, eq), line_no, col, none);
    ExprPtr rhs = parse_full_expression(value.substr(eq + 1), line_no,
                                        col + static_cast<int>(eq) + 1, none);
    return make_binary(ExprOp::Sub, std::move(lhs), std::move(rhs));
}

int parse_int_value(const HeaderLine& h) {
    const double d = parse_bound(h.value, h.line_no, h.value_col);
    if (d != std::floor(d))
        throw ParseError(h.line_no, h.value_col, "integer",
                         "line " + std::to_string(h.line_no) + ": expected an integer");
    return static_cast<int>(d);
}

}  // namespace

bool ChartDomain::contains(double u, double v) const {
    const double slack_u = 1e-12 * (1.0 + std::abs(u1 - u0));
    const double slack_v = 1e-12 * (1.0 + std::abs(v1 - v0));
    if (u < u0 - slack_u || u > u1 + slack_u) return false;
    if (v < v0 - slack_v || v > v1 + slack_v) return false;
    if (excluded) {
        const double g = eval_expr<double>(excluded, u, v);
        if (std::abs(g) <= 1e-9 * std::max({1.0, std::abs(u), std::abs(v)})) return false;
    }
    return true;
}

JetVector ImmersionSpec::evaluate(double u, double v) const {
    if (!domain.contains(u, v))
        throw DomainError("point (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") is outside the chart domain");
    const Jet ju = Jet::variable_u(u);
    const Jet jv = Jet::variable_v(v);
    std::vector<Jet> out;
    out.reserve(components.size());
    for (const auto& comp : components) out.push_back(eval_expr<Jet>(comp, ju, jv));
    return JetVector(sig, std::move(out));
}

AmbientVector ImmersionSpec::evaluate_point(double u, double v) const {
    if (!domain.contains(u, v))
        throw DomainError("point (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") is outside the chart domain");
    std::vector<double> out;
    out.reserve(components.size());
    for (const auto& comp : components) out.push_back(eval_expr<double>(comp, u, v));
    return AmbientVector(sig, std::move(out));
}

JetVector CurveSpec::evaluate(double u) const {
    const double slack = 1e-12 * (1.0 + std::abs(u1 - u0));
    if (u < u0 - slack || u > u1 + slack)
        throw DomainError("curve parameter " + std::to_string(u) + " outside [" +
                          std::to_string(u0) + ", " + std::to_string(u1) + "]");
    const Jet ju = Jet::variable_u(u);
    const Jet jv = Jet(0.0);
    std::vector<Jet> out;
    out.reserve(components.size());
    for (const auto& comp : components) out.push_back(eval_expr<Jet>(comp, ju, jv));
    return JetVector(sig, std::move(out));
}

ExprPtr parse_expression(const std::string& source) {
    ParamSet none;
    return parse_full_expression(source, 1, 0, none);
}

ImmersionSpec parse_surface(const std::string& source) {
    std::optional<int> dim, index, surface_index;
    ChartDomain dom;
    bool have_domain = false;
    std::map<std::string, double> params;
    std::vector<std::pair<std::string, double>> param_list;
    std::map<int, ExprPtr> comps;
    ExprPtr excluded;

    for (const auto& h : split_lines(source)) {
        if (h.key == "dim") {
            dim = parse_int_value(h);
        } else if (h.key == "index") {
            index = parse_int_value(h);
        } else if (h.key == "surface_index") {
            surface_index = parse_int_value(h);
            if (*surface_index != 0 && *surface_index != 1)
                throw ParseError(h.line_no, h.value_col, "0 or 1",
                                 "line " + std::to_string(h.line_no) +
                                     ": surface_index must be 0 or 1");
        } else if (h.key == "domain") {
            parse_domain(h.value, h.line_no, h.value_col, dom);
            have_domain = true;
        } else if (h.key == "exclude") {
            excluded = parse_excluded(h.value, h.line_no, h.value_col);
        } else if (h.key.rfind("param ", 0) == 0) {
            const std::string name = strip(h.key.substr(6));
            if (name.empty() || name == "u" || name == "v" || name == "pi")
                throw ParseError(h.line_no, 1, "parameter name",
                                 "line " + std::to_string(h.line_no) +
                                     ": invalid parameter name '" + name + "'");
            const double value = parse_bound(h.value, h.line_no, h.value_col);
            params[name] = value;
            param_list.emplace_back(name, value);
        } else if (h.key.size() >= 2 && h.key[0] == 'x') {
            char* end = nullptr;
            const long k = std::strtol(h.key.c_str() + 1, &end, 10);
            if (*end != '\0' || k < 1)
                throw ParseError(h.line_no, 1, "component key 'x<k>'",
                                 "line " + std::to_string(h.line_no) + ": unknown key '" +
                                     h.key + "'");
            ParamSet ps{&params};
            comps[static_cast<int>(k)] =
                parse_full_expression(h.value, h.line_no, h.value_col, ps);
        } else {
            throw ParseError(h.line_no, 1, "header key",
                             "line " + std::to_string(h.line_no) + ": unknown key '" + h.key +
                                 "'");
        }
    }

    if (!dim) throw ParseError(0, 0, "dim", "missing 'dim'");
    if (!index) throw ParseError(0, 0, "index", "missing 'index'");
    if (!have_domain) throw ParseError(0, 0, "domain", "missing 'domain'");

    ImmersionSpec spec;
    spec.sig = Signature(*dim, *index);
    spec.surface_index = surface_index.value_or(0);
    dom.excluded = excluded;
    spec.domain = dom;
    spec.params = param_list;
    spec.components.resize(*dim);
    for (int k = 1; k <= *dim; ++k) {
        auto it = comps.find(k);
        if (it == comps.end())
            throw ParseError(0, 0, "x" + std::to_string(k),
                             "missing component x" + std::to_string(k) + " (dim = " +
                                 std::to_string(*dim) + ")");
        spec.components[k - 1] = substitute_params(it->second, params);
    }
    if (static_cast<int>(comps.size()) != *dim)
        throw ParseError(0, 0, "components",
                         "component count does not match dim = " + std::to_string(*dim));
    return spec;
}

CurveSpec parse_curve(const std::string& source) {
    std::optional<int> dim, index;
    double u0 = 0.0, u1 = 1.0;
    bool have_domain = false;
    std::map<int, ExprPtr> comps;
    std::map<std::string, double> params;

    for (const auto& h : split_lines(source)) {
        if (h.key == "dim") {
            dim = parse_int_value(h);
        } else if (h.key == "index") {
            index = parse_int_value(h);
        } else if (h.key == "domain") {
            const std::string text = h.value;
            std::size_t lb = text.find('[');
            std::size_t comma = text.find(',', lb);
            std::size_t rb = text.find(']', comma);
            if (text.find("u in") == std::string::npos || lb == std::string::npos ||
                comma == std::string::npos || rb == std::string::npos)
                throw ParseError(h.line_no, h.value_col, "'u in [a,b]'",
                                 "line " + std::to_string(h.line_no) + ": malformed domain");
            u0 = parse_bound(text.substr(lb + 1, comma - lb - 1), h.line_no, h.value_col);
            u1 = parse_bound(text.substr(comma + 1, rb - comma - 1), h.line_no, h.value_col);
            have_domain = true;
        } else if (h.key.rfind("param ", 0) == 0) {
            params[strip(h.key.substr(6))] = parse_bound(h.value, h.line_no, h.value_col);
        } else if (h.key.size() >= 2 && h.key[0] == 'z') {
            char* end = nullptr;
            const long k = std::strtol(h.key.c_str() + 1, &end, 10);
            if (*end != '\0' || k < 1)
                throw ParseError(h.line_no, 1, "component key 'z<k>'",
                                 "line " + std::to_string(h.line_no) + ": unknown key '" +
                                     h.key + "'");
            ParamSet ps{&params};
            ExprPtr e = parse_full_expression(h.value, h.line_no, h.value_col, ps);
            if (depends_on(e, 'v'))
                throw ParseError(h.line_no, h.value_col, "function of u",
                                 "line " + std::to_string(h.line_no) +
                                     ": curve components must depend on u only");
            comps[static_cast<int>(k)] = std::move(e);
        } else {
            throw ParseError(h.line_no, 1, "header key",
                             "line " + std::to_string(h.line_no) + ": unknown key '" + h.key +
                                 "'");
        }
    }
    if (!dim) throw ParseError(0, 0, "dim", "missing 'dim'");
    if (!index) throw ParseError(0, 0, "index", "missing 'index'");
    if (!have_domain) throw ParseError(0, 0, "domain", "missing 'domain'");
    if (!(u0 < u1)) throw ParseError(0, 0, "domain", "empty curve domain");

    CurveSpec curve;
    curve.sig = Signature(*dim, *index);
    curve.u0 = u0;
    curve.u1 = u1;
    curve.components.resize(*dim);
    for (int k = 1; k <= *dim; ++k) {
        auto it = comps.find(k);
        if (it == comps.end())
            throw ParseError(0, 0, "z" + std::to_string(k),
                             "missing component z" + std::to_string(k));
        curve.components[k - 1] = substitute_params(it->second, params);
    }
    return curve;
}

std::string render_surface(const ImmersionSpec& spec) {
    char buf[128];
    std::string out;
    out += "dim = " + std::to_string(spec.sig.dimension) + "\n";
    out += "index = " + std::to_string(spec.sig.index) + "\n";
    out += "surface_index = " + std::to_string(spec.surface_index) + "\n";
    std::snprintf(buf, sizeof buf, "domain = u in [%.17g, %.17g], v in [%.17g, %.17g]\n",
                  spec.domain.u0, spec.domain.u1, spec.domain.v0, spec.domain.v1);
    out += buf;
    if (spec.domain.excluded) out += "exclude = " + to_string(spec.domain.excluded) + " = 0\n";
    for (std::size_t i = 0; i < spec.components.size(); ++i)
        out += "x" + std::to_string(i + 1) + " = " + to_string(spec.components[i]) + "\n";
    return out;
}

SurfaceSampler make_sampler(const ImmersionSpec& spec, const std::string& name) {
    SurfaceSampler s;
    s.sig = spec.sig;
    s.surface_index = spec.surface_index;
    s.name = name;
    s.jets = [spec](double u, double v) { return spec.evaluate(u, v); };
    return s;
}

std::vector<std::pair<double, double>> grid_points(const ChartDomain& d, int nu, int nv) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(nu) * nv);
    for (int i = 0; i < nu; ++i) {
        const double u = nu == 1 ? d.u0 : d.u0 + (d.u1 - d.u0) * i / (nu - 1);
        for (int j = 0; j < nv; ++j) {
            const double v = nv == 1 ? d.v0 : d.v0 + (d.v1 - d.v0) * j / (nv - 1);
            pts.emplace_back(u, v);
        }
    }
    return pts;
}

double validate_on_sphere(const ImmersionSpec& spec, int nu, int nv) {
    double worst = 0.0;
    for (const auto& [u, v] : grid_points(spec.domain, nu, nv)) {
        const AmbientVector x = spec.evaluate_point(u, v);
        worst = std::max(worst, std::abs(inner(x, x) - 1.0));
    }
    return worst;
}

}  // namespace psgauss
