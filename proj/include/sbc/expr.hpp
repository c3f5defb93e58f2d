#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sbc::expr {

enum class Op : std::uint8_t { Num, Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Fn : std::uint8_t {
    Sin, Cos, Tan, Asin, Acos, Atan, Atan2, Sinh, Cosh, Tanh,
    Exp, Ln, Log10, Sqrt, Abs, Pow, Min, Max
};

enum Var : std::uint8_t { X = 0, Y = 1, T = 2 };

struct Node {
    Op op = Op::Num;
    Fn fn = Fn::Sin;
    std::uint8_t index = 0;  // variable (Var) or constant (0 = pi, 1 = e)
    double value = 0.0;      // literal value
    int lhs = -1;            // first operand / argument
    int rhs = -1;            // second operand / argument
};

/// Parsed expression. Immutable; evaluation is reentrant.
class Expr {
public:
    Expr() = default;

    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return root_; }
    /// Bit i set when variable i (x, y, t) occurs.
    unsigned free_vars() const { return free_vars_; }
    bool uses(Var v) const { return (free_vars_ >> v) & 1u; }
    const std::string& source() const { return source_; }

    /// Structural equality of the syntax trees.
    friend bool operator==(const Expr& a, const Expr& b);

private:
    friend class Parser;
    std::vector<Node> nodes_;
    int root_ = -1;
    unsigned free_vars_ = 0;
    std::string source_;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& msg, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct Bindings {
    std::optional<double> x, y, t;
};

/// Value and derivative with respect to one variable.
struct Dual {
    double v = 0.0;
    double d = 0.0;
};

Expr parse(std::string_view src);

/// Missing binding for a free variable -> std::invalid_argument.
double eval(const Expr& e, const Bindings& b);

/// Forward-mode derivative with respect to `wrt`; all three variables bound.
Dual eval_dual(const Expr& e, double x, double y, double t, Var wrt);

/// Minimal-parenthesis rendering; parse(to_string(e)) == e.
std::string to_string(const Expr& e);

}  // namespace sbc::expr
