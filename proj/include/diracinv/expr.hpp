#pragma once

/**
 * @file expr.hpp
 * @brief Closed-form complex scalar expressions of (x0, x1, x2, x3).
 *
 * Grammar (precedence low to high):
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := unary (('*' | '/') unary)*
 *     unary   := ('-' | '+') unary | power
 *     power   := primary ('^' exponent)?          right associative
 *     exponent:= ('-' | '+')? power               must fold to an integer constant
 *     primary := number | number 'i' | name | func '(' expr ')' | '(' expr ')'
 *
 * Names: x0..x3 are the coordinates, `i`, `pi`, `e` are builtin constants,
 * anything else is a user parameter bound at evaluation time. Functions:
 * sin cos tan exp log sqrt sinh cosh conj. log and sqrt use the principal
 * branch. Any non-finite intermediate value raises ErrorCode::NonFinite.
 *
 * Nodes are immutable and shared; differentiation is exact and the builders
 * fold constants and drop trivial identities (x+0, x*1, x*0, ...), nothing more.
 */

#include "diracinv/errors.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace diracinv {

using cplx = std::complex<double>;

/// Spacetime point; x[0] = ct, x[1..3] spatial. Dimensionless.
struct Point {
    std::array<double, 4> x{};

    [[nodiscard]] double operator[](int k) const { return x[static_cast<std::size_t>(k)]; }
    [[nodiscard]] double& operator[](int k) { return x[static_cast<std::size_t>(k)]; }
    friend bool operator==(const Point&, const Point&) = default;

    [[nodiscard]] bool finite() const
    {
        for (double v : x)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Parameter bindings shared by the expressions of one field.
using Params = std::map<std::string, cplx, std::less<>>;

enum class Op { Const, Param, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Conj };

[[nodiscard]] inline const char* fn_name(Fn f) noexcept
{
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Tan: return "tan";
        case Fn::Exp: return "exp";
        case Fn::Log: return "log";
        case Fn::Sqrt: return "sqrt";
        case Fn::Sinh: return "sinh";
        case Fn::Cosh: return "cosh";
        case Fn::Conj: return "conj";
    }
    return "?";
}

inline constexpr std::array<Fn, 9> kAllFunctions{Fn::Sin, Fn::Cos,  Fn::Tan,  Fn::Exp, Fn::Log,
                                                 Fn::Sqrt, Fn::Sinh, Fn::Cosh, Fn::Conj};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Op op = Op::Const;
    cplx value{};        // Const
    std::string name;    // Param
    int axis = 0;        // Var
    int exponent = 0;    // Pow
    Fn fn = Fn::Sin;     // Call
    NodePtr lhs, rhs;    // operands (lhs only for unary / Pow / Call)
};

class Expr {
public:
    Expr() : Expr(cplx{}) {}
    Expr(cplx c) : node_(make_const(c)) {}  // NOLINT(google-explicit-constructor)
    Expr(double c) : Expr(cplx{c, 0.0}) {}  // NOLINT(google-explicit-constructor)
    explicit Expr(NodePtr n) : node_(std::move(n)) {}

    [[nodiscard]] static Expr var(int axis)
    {
        if (axis < 0 || axis > 3)
            throw Error(ErrorCode::InvalidIndex, "coordinate axis must be in 0..3, got " + std::to_string(axis));
        auto n = std::make_shared<Node>();
        n->op = Op::Var;
        n->axis = axis;
        return Expr(std::move(n));
    }

    [[nodiscard]] static Expr param(std::string name)
    {
        auto n = std::make_shared<Node>();
        n->op = Op::Param;
        n->name = std::move(name);
        return Expr(std::move(n));
    }

    [[nodiscard]] const Node& node() const noexcept { return *node_; }
    [[nodiscard]] const NodePtr& ptr() const noexcept { return node_; }
    [[nodiscard]] Op op() const noexcept { return node_->op; }

    [[nodiscard]] bool is_const() const noexcept { return node_->op == Op::Const; }
    [[nodiscard]] bool is_const(cplx c) const noexcept { return is_const() && node_->value == c; }
    [[nodiscard]] bool is_zero() const noexcept { return is_const(cplx{}); }
    [[nodiscard]] cplx const_value() const noexcept { return node_->value; }

private:
    static NodePtr make_const(cplx c)
    {
        auto n = std::make_shared<Node>();
        n->op = Op::Const;
        n->value = c;
        return n;
    }

    NodePtr node_;
};

namespace detail {

[[nodiscard]] inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Exact repeated squaring so that i^2 == -1 bit for bit.
[[nodiscard]] inline cplx int_pow(cplx base, int n)
{
    const bool invert = n < 0;
    unsigned m = invert ? static_cast<unsigned>(-static_cast<long>(n)) : static_cast<unsigned>(n);
    cplx result{1.0, 0.0};
    while (m) {
        if (m & 1u) result *= base;
        base *= base;
        m >>= 1u;
    }
    return invert ? cplx{1.0, 0.0} / result : result;
}

[[nodiscard]] inline cplx apply_fn(Fn f, cplx z)
{
    switch (f) {
        case Fn::Sin: return std::sin(z);
        case Fn::Cos: return std::cos(z);
        case Fn::Tan: return std::tan(z);
        case Fn::Exp: return std::exp(z);
        case Fn::Log: return std::log(z);
        case Fn::Sqrt: return std::sqrt(z);
        case Fn::Sinh: return std::sinh(z);
        case Fn::Cosh: return std::cosh(z);
        case Fn::Conj: return std::conj(z);
    }
    return z;
}

[[nodiscard]] inline Expr make_binary(Op op, const Expr& a, const Expr& b)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = a.ptr();
    n->rhs = b.ptr();
    return Expr(std::move(n));
}

}  // namespace detail

// Builders. Each folds constants when the folded value is finite.

[[nodiscard]] inline Expr operator-(const Expr& a)
{
    if (a.is_const()) return Expr(-a.const_value());
    if (a.op() == Op::Neg) return Expr(a.node().lhs);
    auto n = std::make_shared<Node>();
    n->op = Op::Neg;
    n->lhs = a.ptr();
    return Expr(std::move(n));
}

[[nodiscard]] inline Expr operator+(const Expr& a, const Expr& b)
{
    if (a.is_const() && b.is_const()) return Expr(a.const_value() + b.const_value());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return detail::make_binary(Op::Add, a, b);
}

[[nodiscard]] inline Expr operator-(const Expr& a, const Expr& b)
{
    if (a.is_const() && b.is_const()) return Expr(a.const_value() - b.const_value());
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return detail::make_binary(Op::Sub, a, b);
}

[[nodiscard]] inline Expr operator*(const Expr& a, const Expr& b)
{
    if (a.is_const() && b.is_const()) return Expr(a.const_value() * b.const_value());
    if (a.is_zero() || b.is_zero()) return Expr(0.0);
    if (a.is_const(1.0)) return b;
    if (b.is_const(1.0)) return a;
    if (a.is_const(-1.0)) return -b;
    if (b.is_const(-1.0)) return -a;
    return detail::make_binary(Op::Mul, a, b);
}

[[nodiscard]] inline Expr operator/(const Expr& a, const Expr& b)
{
    if (a.is_const() && b.is_const() && b.const_value() != cplx{}) {
        const cplx q = a.const_value() / b.const_value();
        if (detail::finite(q)) return Expr(q);
    }
    if (b.is_const(1.0)) return a;
    if (a.is_zero() && !b.is_zero()) return Expr(0.0);
    return detail::make_binary(Op::Div, a, b);
}

[[nodiscard]] inline Expr pow(const Expr& base, int n)
{
    if (n == 0) return Expr(1.0);
    if (n == 1) return base;
    if (base.is_const()) {
        const cplx v = detail::int_pow(base.const_value(), n);
        if (detail::finite(v)) return Expr(v);
    }
    auto node = std::make_shared<Node>();
    node->op = Op::Pow;
    node->lhs = base.ptr();
    node->exponent = n;
    return Expr(std::move(node));
}

[[nodiscard]] inline Expr call(Fn f, const Expr& arg)
{
    if (arg.is_const()) {
        const cplx v = detail::apply_fn(f, arg.const_value());
        if (detail::finite(v)) return Expr(v);
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Call;
    n->fn = f;
    n->lhs = arg.ptr();
    return Expr(std::move(n));
}

[[nodiscard]] inline Expr sin(const Expr& a) { return call(Fn::Sin, a); }
[[nodiscard]] inline Expr cos(const Expr& a) { return call(Fn::Cos, a); }
[[nodiscard]] inline Expr tan(const Expr& a) { return call(Fn::Tan, a); }
[[nodiscard]] inline Expr exp(const Expr& a) { return call(Fn::Exp, a); }
[[nodiscard]] inline Expr log(const Expr& a) { return call(Fn::Log, a); }
[[nodiscard]] inline Expr sqrt(const Expr& a) { return call(Fn::Sqrt, a); }
[[nodiscard]] inline Expr sinh(const Expr& a) { return call(Fn::Sinh, a); }
[[nodiscard]] inline Expr cosh(const Expr& a) { return call(Fn::Cosh, a); }
[[nodiscard]] inline Expr conj(const Expr& a) { return call(Fn::Conj, a); }

// ---------------------------------------------------------------------------
// Differentiation

[[nodiscard]] inline Expr differentiate(const Expr& e, int axis)
{
    if (axis < 0 || axis > 3)
        throw Error(ErrorCode::InvalidIndex, "coordinate axis must be in 0..3, got " + std::to_string(axis));
    const Node& n = e.node();
    switch (n.op) {
        case Op::Const:
        case Op::Param: return Expr(0.0);
        case Op::Var: return Expr(n.axis == axis ? 1.0 : 0.0);
        case Op::Neg: return -differentiate(Expr(n.lhs), axis);
        case Op::Add: return differentiate(Expr(n.lhs), axis) + differentiate(Expr(n.rhs), axis);
        case Op::Sub: return differentiate(Expr(n.lhs), axis) - differentiate(Expr(n.rhs), axis);
        case Op::Mul: {
            const Expr a(n.lhs), b(n.rhs);
            return differentiate(a, axis) * b + a * differentiate(b, axis);
        }
        case Op::Div: {
            const Expr a(n.lhs), b(n.rhs);
            const Expr da = differentiate(a, axis), db = differentiate(b, axis);
            if (db.is_zero()) return da / b;
            return (da * b - a * db) / pow(b, 2);
        }
        case Op::Pow: {
            const Expr b(n.lhs);
            return Expr(static_cast<double>(n.exponent)) * pow(b, n.exponent - 1) * differentiate(b, axis);
        }
        case Op::Call: {
            const Expr u(n.lhs);
            const Expr du = differentiate(u, axis);
            if (du.is_zero()) return Expr(0.0);
            switch (n.fn) {
                case Fn::Sin: return cos(u) * du;
                case Fn::Cos: return -(sin(u) * du);
                case Fn::Tan: return du / pow(cos(u), 2);
                case Fn::Exp: return e * du;
                case Fn::Log: return du / u;
                case Fn::Sqrt: return du / (Expr(2.0) * e);
                case Fn::Sinh: return cosh(u) * du;
                case Fn::Cosh: return sinh(u) * du;
                case Fn::Conj: return conj(du);
            }
        }
    }
    return Expr(0.0);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

[[nodiscard]] inline cplx checked(cplx v, const char* what)
{
    if (!finite(v)) throw Error(ErrorCode::NonFinite, std::string(what) + " produced non-finite value");
    return v;
}

[[nodiscard]] inline cplx eval_node(const Node& n, const Point& p, const Params& params)
{
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return p[n.axis];
        case Op::Param: {
            const auto it = params.find(n.name);
            if (it == params.end()) throw Error(ErrorCode::UnboundName, "unbound name '" + n.name + "'");
            return it->second;
        }
        case Op::Neg: return -eval_node(*n.lhs, p, params);
        case Op::Add: return checked(eval_node(*n.lhs, p, params) + eval_node(*n.rhs, p, params), "addition");
        case Op::Sub: return checked(eval_node(*n.lhs, p, params) - eval_node(*n.rhs, p, params), "subtraction");
        case Op::Mul: return checked(eval_node(*n.lhs, p, params) * eval_node(*n.rhs, p, params), "multiplication");
        case Op::Div: {
            const cplx num = eval_node(*n.lhs, p, params);
            const cplx den = eval_node(*n.rhs, p, params);
            if (den == cplx{}) throw Error(ErrorCode::NonFinite, "division produced non-finite value");
            return checked(num / den, "division");
        }
        case Op::Pow: {
            const cplx b = eval_node(*n.lhs, p, params);
            if (n.exponent < 0 && b == cplx{}) throw Error(ErrorCode::NonFinite, "power produced non-finite value");
            return checked(int_pow(b, n.exponent), "power");
        }
        case Op::Call: {
            const cplx z = eval_node(*n.lhs, p, params);
            if (n.fn == Fn::Log && z == cplx{})
                throw Error(ErrorCode::NonFinite, "log produced non-finite value");
            return checked(apply_fn(n.fn, z), fn_name(n.fn));
        }
    }
    return {};
}

}  // namespace detail

[[nodiscard]] inline cplx evaluate(const Expr& e, const Point& p, const Params& params = {})
{
    return detail::eval_node(e.node(), p, params);
}

/// Names of user parameters referenced by the expression.
inline void collect_params(const Expr& e, std::set<std::string>& out)
{
    const Node& n = e.node();
    if (n.op == Op::Param) out.insert(n.name);
    if (n.lhs) collect_params(Expr(n.lhs), out);
    if (n.rhs) collect_params(Expr(n.rhs), out);
}

[[nodiscard]] inline std::size_t node_count(const Expr& e)
{
    const Node& n = e.node();
    return 1 + (n.lhs ? node_count(Expr(n.lhs)) : 0) + (n.rhs ? node_count(Expr(n.rhs)) : 0);
}

// ---------------------------------------------------------------------------
// Printing: fully parenthesised, constants at round-trip precision.

namespace detail {

[[nodiscard]] inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void print_node(const Node& n, std::string& out)
{
    switch (n.op) {
        case Op::Const: {
            const double re = n.value.real(), im = n.value.imag();
            if (im == 0.0) {
                if (re < 0 || std::signbit(re)) out += "(" + format_double(re) + ")";
                else out += format_double(re);
            } else {
                out += "(" + format_double(re) + "+(" + format_double(im) + ")*i)";
            }
            return;
        }
        case Op::Param: out += n.name; return;
        case Op::Var: out += "x" + std::to_string(n.axis); return;
        case Op::Neg:
            out += "(-";
            print_node(*n.lhs, out);
            out += ")";
            return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            const char sym = n.op == Op::Add ? '+' : n.op == Op::Sub ? '-' : n.op == Op::Mul ? '*' : '/';
            out += "(";
            print_node(*n.lhs, out);
            out += sym;
            print_node(*n.rhs, out);
            out += ")";
            return;
        }
        case Op::Pow:
            out += "(";
            print_node(*n.lhs, out);
            out += "^" + (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent));
            out += ")";
            return;
        case Op::Call:
            out += fn_name(n.fn);
            out += "(";
            print_node(*n.lhs, out);
            out += ")";
            return;
    }
}

}  // namespace detail

[[nodiscard]] inline std::string to_string(const Expr& e)
{
    std::string out;
    detail::print_node(e.node(), out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all()
    {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"operator", "end of input"});
        return e;
    }

private:
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[nodiscard]] bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c)
    {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(std::vector<std::string> expected)
    {
        skip_ws();
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        throw ParseError(pos_, std::move(expected), found);
    }

    Expr parse_expr()
    {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = lhs + parse_term();
            else if (accept('-')) lhs = lhs - parse_term();
            else return lhs;
        }
    }

    Expr parse_term()
    {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = lhs * parse_unary();
            else if (accept('/')) lhs = lhs / parse_unary();
            else return lhs;
        }
    }

    Expr parse_unary()
    {
        if (accept('-')) return -parse_unary();
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        if (!accept('^')) return base;
        const std::size_t at = pos_;
        return pow(base, parse_exponent(at));
    }

    int parse_exponent(std::size_t at)
    {
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        const Expr e = parse_power();
        if (!e.is_const()) throw ParseError(at, {"integer exponent"}, "non-constant exponent");
        const cplx v = neg ? -e.const_value() : e.const_value();
        if (v.imag() != 0.0 || v.real() != std::round(v.real()) || std::abs(v.real()) > 1024.0)
            throw ParseError(at, {"integer exponent"}, "'" + to_string(e) + "'");
        return static_cast<int>(v.real());
    }

    Expr parse_primary()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail({"number", "name", "'('"});
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) fail({"')'"});
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        fail({"number", "name", "'('"});
    }

    Expr parse_number()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        const std::string lexeme(text_.substr(start, pos_ - start));
        char* end = nullptr;
        const double v = std::strtod(lexeme.c_str(), &end);
        if (end != lexeme.c_str() + lexeme.size() || lexeme == ".") {
            pos_ = start;
            fail({"number"});
        }
        // Imaginary literal: digits immediately followed by a lone 'i'.
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 >= text_.size() ||
             !(std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '_'))) {
            ++pos_;
            return Expr(cplx{0.0, v});
        }
        return Expr(v);
    }

    Expr parse_name()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        for (Fn f : kAllFunctions) {
            if (name == fn_name(f)) {
                if (!accept('(')) fail({"'('"});
                Expr arg = parse_expr();
                if (!accept(')')) fail({"')'"});
                return call(f, arg);
            }
        }
        if (name.size() == 2 && name[0] == 'x' && name[1] >= '0' && name[1] <= '3') return Expr::var(name[1] - '0');
        if (name == "i") return Expr(cplx{0.0, 1.0});
        if (name == "pi") return Expr(std::numbers::pi);
        if (name == "e") return Expr(std::numbers::e);
        return Expr::param(name);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

[[nodiscard]] inline Expr parse(std::string_view text) { return detail::Parser(text).parse_all(); }

inline namespace literals {
[[nodiscard]] inline Expr operator""_ex(const char* s, std::size_t n) { return parse(std::string_view(s, n)); }
}  // namespace literals

}  // namespace diracinv
