#include "sbc/expr.hpp"

#include <fmt/format.h>

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace sbc::expr {

namespace {

struct FnInfo {
    std::string_view name;
    Fn fn;
    int arity;
};

constexpr std::array<FnInfo, 18> kFunctions{{
    {"sin", Fn::Sin, 1},   {"cos", Fn::Cos, 1},     {"tan", Fn::Tan, 1},     {"asin", Fn::Asin, 1},
    {"acos", Fn::Acos, 1}, {"atan", Fn::Atan, 1},   {"atan2", Fn::Atan2, 2}, {"sinh", Fn::Sinh, 1},
    {"cosh", Fn::Cosh, 1}, {"tanh", Fn::Tanh, 1},   {"exp", Fn::Exp, 1},     {"ln", Fn::Ln, 1},
    {"log10", Fn::Log10, 1}, {"sqrt", Fn::Sqrt, 1}, {"abs", Fn::Abs, 1},     {"pow", Fn::Pow, 2},
    {"min", Fn::Min, 2},   {"max", Fn::Max, 2},
}};

const FnInfo& info(Fn fn) { return kFunctions[static_cast<std::size_t>(fn)]; }

constexpr std::array<std::string_view, 3> kVarNames{"x", "y", "t"};
constexpr std::array<std::string_view, 2> kConstNames{"pi", "e"};
constexpr std::array<double, 2> kConstValues{std::numbers::pi, std::numbers::e};

}  // namespace

ParseError::ParseError(const std::string& msg, std::size_t offset)
    : std::invalid_argument(fmt::format("{} at offset {}", msg, offset)), offset_(offset) {}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr run() {
        out_.source_ = std::string(src_);
        out_.root_ = parse_sum();
        skip_ws();
        if (pos_ < src_.size()) fail(fmt::format("unexpected '{}'", src_[pos_]));
        return std::move(out_);
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    Expr out_;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(fmt::format("expected '{}' but input ended", c));
            fail(fmt::format("expected '{}'", c));
        }
    }

    int push(Node n) {
        out_.nodes_.push_back(n);
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    int binary(Op op, int l, int r) {
        Node n;
        n.op = op;
        n.lhs = l;
        n.rhs = r;
        return push(n);
    }

    int parse_sum() {
        int lhs = parse_product();
        for (;;) {
            if (accept('+')) lhs = binary(Op::Add, lhs, parse_product());
            else if (accept('-')) lhs = binary(Op::Sub, lhs, parse_product());
            else return lhs;
        }
    }

    int parse_product() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = binary(Op::Mul, lhs, parse_unary());
            else if (accept('/')) lhs = binary(Op::Div, lhs, parse_unary());
            else return lhs;
        }
    }

    // Unary minus sits below '^': -x^2 == -(x^2).
    int parse_unary() {
        if (accept('-')) {
            Node n;
            n.op = Op::Neg;
            n.lhs = parse_unary();
            return push(n);
        }
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    int parse_power() {
        int base = parse_primary();
        if (accept('^')) return binary(Op::Pow, base, parse_unary());
        return base;
    }

    int parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("expected expression but input ended");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            int inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail(fmt::format("unexpected '{}'", c));
    }

    int parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t nd = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            nd += digits();
        }
        if (nd == 0) {
            pos_ = start;
            fail("malformed number");
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;  // 'e' belongs to whatever follows
        }
        const std::string text(src_.substr(start, pos_ - start));
        const double v = std::strtod(text.c_str(), nullptr);
        if (!std::isfinite(v)) {
            pos_ = start;
            fail("numeric literal out of range");
        }
        Node n;
        n.op = Op::Num;
        n.value = v;
        return push(n);
    }

    int parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < kVarNames.size(); ++i) {
            if (name == kVarNames[i]) {
                Node n;
                n.op = Op::Var;
                n.index = static_cast<std::uint8_t>(i);
                out_.free_vars_ |= 1u << i;
                return push(n);
            }
        }
        for (std::size_t i = 0; i < kConstNames.size(); ++i) {
            if (name == kConstNames[i]) {
                Node n;
                n.op = Op::Const;
                n.index = static_cast<std::uint8_t>(i);
                n.value = kConstValues[i];
                return push(n);
            }
        }
        for (const FnInfo& f : kFunctions) {
            if (name != f.name) continue;
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] != '(') fail(fmt::format("expected '(' after '{}'", name));
            ++pos_;
            Node n;
            n.op = Op::Call;
            n.fn = f.fn;
            n.lhs = parse_sum();
            int count = 1;
            while (accept(',')) {
                const int arg = parse_sum();
                if (count == 1) n.rhs = arg;
                ++count;
            }
            if (count != f.arity) {
                skip_ws();
                fail(fmt::format("function '{}' takes {} argument(s), got {}", name, f.arity, count));
            }
            expect(')');
            return push(n);
        }
        pos_ = start;
        fail(fmt::format("unknown identifier '{}'", name));
    }
};

Expr parse(std::string_view src) { return Parser(src).run(); }

namespace {

double call(Fn fn, double a, double b) {
    switch (fn) {
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
        case Fn::Tan: return std::tan(a);
        case Fn::Asin: return std::asin(a);
        case Fn::Acos: return std::acos(a);
        case Fn::Atan: return std::atan(a);
        case Fn::Atan2: return std::atan2(a, b);
        case Fn::Sinh: return std::sinh(a);
        case Fn::Cosh: return std::cosh(a);
        case Fn::Tanh: return std::tanh(a);
        case Fn::Exp: return std::exp(a);
        case Fn::Ln: return std::log(a);
        case Fn::Log10: return std::log10(a);
        case Fn::Sqrt: return std::sqrt(a);
        case Fn::Abs: return std::abs(a);
        case Fn::Pow: return std::pow(a, b);
        case Fn::Min: return std::min(a, b);
        case Fn::Max: return std::max(a, b);
    }
    return std::nan("");
}

double eval_node(const std::vector<Node>& nodes, int i, const double* vars) {
    const Node& n = nodes[i];
    switch (n.op) {
        case Op::Num:
        case Op::Const: return n.value;
        case Op::Var: return vars[n.index];
        case Op::Neg: return -eval_node(nodes, n.lhs, vars);
        case Op::Add: return eval_node(nodes, n.lhs, vars) + eval_node(nodes, n.rhs, vars);
        case Op::Sub: return eval_node(nodes, n.lhs, vars) - eval_node(nodes, n.rhs, vars);
        case Op::Mul: return eval_node(nodes, n.lhs, vars) * eval_node(nodes, n.rhs, vars);
        case Op::Div: return eval_node(nodes, n.lhs, vars) / eval_node(nodes, n.rhs, vars);
        case Op::Pow: return std::pow(eval_node(nodes, n.lhs, vars), eval_node(nodes, n.rhs, vars));
        case Op::Call: {
            const double a = eval_node(nodes, n.lhs, vars);
            const double b = n.rhs >= 0 ? eval_node(nodes, n.rhs, vars) : 0.0;
            return call(n.fn, a, b);
        }
    }
    return std::nan("");
}

Dual pow_dual(Dual a, Dual b) {
    const double v = std::pow(a.v, b.v);
    double d = 0.0;
    if (a.d != 0.0) d += b.v * std::pow(a.v, b.v - 1.0) * a.d;
    if (b.d != 0.0) d += v * std::log(a.v) * b.d;
    return {v, d};
}

Dual call_dual(Fn fn, Dual a, Dual b) {
    switch (fn) {
        case Fn::Sin: return {std::sin(a.v), std::cos(a.v) * a.d};
        case Fn::Cos: return {std::cos(a.v), -std::sin(a.v) * a.d};
        case Fn::Tan: {
            const double v = std::tan(a.v);
            return {v, (1.0 + v * v) * a.d};
        }
        case Fn::Asin: return {std::asin(a.v), a.d / std::sqrt(1.0 - a.v * a.v)};
        case Fn::Acos: return {std::acos(a.v), -a.d / std::sqrt(1.0 - a.v * a.v)};
        case Fn::Atan: return {std::atan(a.v), a.d / (1.0 + a.v * a.v)};
        case Fn::Atan2: return {std::atan2(a.v, b.v), (b.v * a.d - a.v * b.d) / (a.v * a.v + b.v * b.v)};
        case Fn::Sinh: return {std::sinh(a.v), std::cosh(a.v) * a.d};
        case Fn::Cosh: return {std::cosh(a.v), std::sinh(a.v) * a.d};
        case Fn::Tanh: {
            const double v = std::tanh(a.v);
            return {v, (1.0 - v * v) * a.d};
        }
        case Fn::Exp: {
            const double v = std::exp(a.v);
            return {v, v * a.d};
        }
        case Fn::Ln: return {std::log(a.v), a.d / a.v};
        case Fn::Log10: return {std::log10(a.v), a.d / (a.v * std::numbers::ln10)};
        case Fn::Sqrt: {
            const double v = std::sqrt(a.v);
            return {v, a.d == 0.0 ? 0.0 : a.d / (2.0 * v)};
        }
        case Fn::Abs: return {std::abs(a.v), a.v < 0.0 ? -a.d : a.d};
        case Fn::Pow: return pow_dual(a, b);
        case Fn::Min: return a.v <= b.v ? a : b;
        case Fn::Max: return a.v >= b.v ? a : b;
    }
    return {std::nan(""), std::nan("")};
}

Dual dual_node(const std::vector<Node>& nodes, int i, const double* vars, int wrt) {
    const Node& n = nodes[i];
    switch (n.op) {
        case Op::Num:
        case Op::Const: return {n.value, 0.0};
        case Op::Var: return {vars[n.index], n.index == wrt ? 1.0 : 0.0};
        case Op::Neg: {
            const Dual a = dual_node(nodes, n.lhs, vars, wrt);
            return {-a.v, -a.d};
        }
        default: break;
    }
    if (n.op == Op::Call) {
        const Dual a = dual_node(nodes, n.lhs, vars, wrt);
        const Dual b = n.rhs >= 0 ? dual_node(nodes, n.rhs, vars, wrt) : Dual{};
        return call_dual(n.fn, a, b);
    }
    const Dual a = dual_node(nodes, n.lhs, vars, wrt);
    const Dual b = dual_node(nodes, n.rhs, vars, wrt);
    switch (n.op) {
        case Op::Add: return {a.v + b.v, a.d + b.d};
        case Op::Sub: return {a.v - b.v, a.d - b.d};
        case Op::Mul: return {a.v * b.v, a.d * b.v + a.v * b.d};
        case Op::Div: return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
        case Op::Pow: return pow_dual(a, b);
        default: break;
    }
    return {std::nan(""), std::nan("")};
}

bool nodes_equal(const Expr& a, int i, const Expr& b, int j) {
    if ((i < 0) != (j < 0)) return false;
    if (i < 0) return true;
    const Node& p = a.nodes()[i];
    const Node& q = b.nodes()[j];
    if (p.op != q.op) return false;
    switch (p.op) {
        case Op::Num: return p.value == q.value;
        case Op::Const:
        case Op::Var: return p.index == q.index;
        case Op::Call:
            if (p.fn != q.fn) return false;
            break;
        default: break;
    }
    return nodes_equal(a, p.lhs, b, q.lhs) && nodes_equal(a, p.rhs, b, q.rhs);
}

int precedence(const Node& n) {
    switch (n.op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5;
    }
}

void render(const std::vector<Node>& nodes, int i, std::string& out);

void render_wrapped(const std::vector<Node>& nodes, int i, bool wrap, std::string& out) {
    if (wrap) out += '(';
    render(nodes, i, out);
    if (wrap) out += ')';
}

void render(const std::vector<Node>& nodes, int i, std::string& out) {
    const Node& n = nodes[i];
    switch (n.op) {
        case Op::Num: out += fmt::format("{}", n.value); return;
        case Op::Const: out += kConstNames[n.index]; return;
        case Op::Var: out += kVarNames[n.index]; return;
        case Op::Neg:
            out += '-';
            render_wrapped(nodes, n.lhs, precedence(nodes[n.lhs]) < 3, out);
            return;
        case Op::Call:
            out += info(n.fn).name;
            out += '(';
            render(nodes, n.lhs, out);
            if (n.rhs >= 0) {
                out += ", ";
                render(nodes, n.rhs, out);
            }
            out += ')';
            return;
        case Op::Pow:
            render_wrapped(nodes, n.lhs, precedence(nodes[n.lhs]) <= 4, out);
            out += '^';
            render_wrapped(nodes, n.rhs, precedence(nodes[n.rhs]) < 3, out);
            return;
        default: break;
    }
    const int p = precedence(n);
    const char* sym = n.op == Op::Add ? " + " : n.op == Op::Sub ? " - " : n.op == Op::Mul ? "*" : "/";
    render_wrapped(nodes, n.lhs, precedence(nodes[n.lhs]) < p, out);
    out += sym;
    render_wrapped(nodes, n.rhs, precedence(nodes[n.rhs]) <= p, out);
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) { return nodes_equal(a, a.root_, b, b.root_); }

double eval(const Expr& e, const Bindings& b) {
    const std::array<const std::optional<double>*, 3> slots{&b.x, &b.y, &b.t};
    double vars[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        if (!e.uses(static_cast<Var>(i))) continue;
        if (!slots[i]->has_value())
            throw std::invalid_argument(fmt::format("expression '{}' needs a value for '{}'", e.source(), kVarNames[i]));
        vars[i] = **slots[i];
    }
    return eval_node(e.nodes(), e.root(), vars);
}

Dual eval_dual(const Expr& e, double x, double y, double t, Var wrt) {
    const double vars[3] = {x, y, t};
    return dual_node(e.nodes(), e.root(), vars, wrt);
}

std::string to_string(const Expr& e) {
    std::string out;
    if (e.root() >= 0) render(e.nodes(), e.root(), out);
    return out;
}

}  // namespace sbc::expr
