#pragma once

// Expression language for test functionals:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | x<k> | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Functions: abs/1, sgn/1, pos/1, pow/2, max/>=2, min/>=2. pow(a, b) and
// a ^ b build the same node.

#include "sublin/error.hpp"
#include "sublin/sequence.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sublin {

enum class ExprKind { Number, Coord, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Builtin { Abs, Sgn, Pos, Max, Min };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind = ExprKind::Number;
    double number = 0.0;
    std::size_t coord = 0; // zero-based
    Builtin fn = Builtin::Abs;
    std::vector<ExprPtr> args;
    std::size_t offset = 0; // byte offset in the source, for messages
};

ExprPtr make_number(double v);
ExprPtr make_coord(std::size_t zero_based);
ExprPtr make_unary(ExprKind kind, ExprPtr a);
ExprPtr make_binary(ExprKind kind, ExprPtr a, ExprPtr b);
ExprPtr make_call(Builtin fn, std::vector<ExprPtr> args);

class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t offset, const std::string& what)
        : Error(code, "at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Throws ParseError with SyntaxError, UnknownIdentifier or ArityError.
ExprPtr parse(std::string_view text, std::size_t arity);

// Fully parenthesized; parse(print(e)) is structurally equal to e for every
// tree whose number literals are finite and nonnegative.
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// EvalError on division by zero, a negative base with a non-integer
// exponent, or any non-finite intermediate.
double eval_ast(const Expr& e, std::span<const double> point);

// One more than the largest coordinate index used (0 for constants).
std::size_t max_coordinate(const Expr& e);

Functional to_functional(ExprPtr e, std::size_t arity);

std::string_view to_string(Builtin fn);

} // namespace sublin
