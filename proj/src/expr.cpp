#include "sublin/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace sublin {

std::string_view to_string(Builtin fn) {
    switch (fn) {
    case Builtin::Abs: return "abs";
    case Builtin::Sgn: return "sgn";
    case Builtin::Pos: return "pos";
    case Builtin::Max: return "max";
    case Builtin::Min: return "min";
    }
    return "?";
}

ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Number;
    e->number = v;
    return e;
}

ExprPtr make_coord(std::size_t zero_based) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Coord;
    e->coord = zero_based;
    return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args.push_back(std::move(a));
    return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = {std::move(a), std::move(b)};
    return e;
}

ExprPtr make_call(Builtin fn, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Call;
    e->fn = fn;
    e->args = std::move(args);
    return e;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t arity) : s_(text), arity_(arity) {}

    ExprPtr run() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) fail("end of input");
        return e;
    }

private:
    [[noreturn]] void fail(std::string_view expected) const {
        std::string got = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
        throw ParseError(ErrorCode::SyntaxError, pos_, "expected " + std::string(expected) + ", got " + got);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr at(ExprPtr e, std::size_t offset) {
        auto copy = std::make_shared<Expr>(*e);
        copy->offset = offset;
        return copy;
    }

    ExprPtr expr() {
        auto lhs = term();
        while (true) {
            skip();
            const std::size_t at_op = pos_;
            if (accept('+')) {
                lhs = at(make_binary(ExprKind::Add, lhs, term()), at_op);
            } else if (accept('-')) {
                lhs = at(make_binary(ExprKind::Sub, lhs, term()), at_op);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term() {
        auto lhs = unary();
        while (true) {
            skip();
            const std::size_t at_op = pos_;
            if (accept('*')) {
                lhs = at(make_binary(ExprKind::Mul, lhs, unary()), at_op);
            } else if (accept('/')) {
                lhs = at(make_binary(ExprKind::Div, lhs, unary()), at_op);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary() {
        skip();
        const std::size_t at_op = pos_;
        if (accept('-')) return at(make_unary(ExprKind::Neg, unary()), at_op);
        return power();
    }

    ExprPtr power() {
        auto base = primary();
        skip();
        const std::size_t at_op = pos_;
        if (accept('^')) return at(make_binary(ExprKind::Pow, base, unary()), at_op);
        return base;
    }

    ExprPtr primary() {
        skip();
        const std::size_t start = pos_;
        if (pos_ >= s_.size()) fail("expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (accept('(')) {
            auto e = expr();
            if (!accept(')')) fail("')'");
            return e;
        }
        (void)start;
        fail("number, coordinate, function call or '('");
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t b = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return pos_ > b;
        };
        bool any = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            any = digits() || any;
        }
        if (!any) fail("digits");
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (!digits()) fail("exponent digits");
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc() || ptr != s_.data() + pos_ || !std::isfinite(v)) {
            throw ParseError(ErrorCode::SyntaxError, start, "number out of range");
        }
        return at(make_number(v), start);
    }

    ExprPtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string_view name = s_.substr(start, pos_ - start);

        if (name.size() >= 2 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            std::size_t k = 0;
            const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
            if (ec != std::errc() || k == 0 || k > arity_) {
                throw ParseError(ErrorCode::ArityError, start,
                                 "coordinate " + std::string(name) + " outside x1..x" + std::to_string(arity_));
            }
            return at(make_coord(k - 1), start);
        }

        struct Known {
            std::string_view name;
            std::size_t min_args, max_args;
        };
        static constexpr Known known[] = {{"abs", 1, 1}, {"sgn", 1, 1}, {"pos", 1, 1},
                                          {"pow", 2, 2}, {"max", 2, SIZE_MAX}, {"min", 2, SIZE_MAX}};
        const auto it = std::find_if(std::begin(known), std::end(known), [&](const Known& k) { return k.name == name; });
        if (it == std::end(known)) {
            throw ParseError(ErrorCode::UnknownIdentifier, start, "unknown identifier '" + std::string(name) + "'");
        }
        if (!accept('(')) fail("'(' after " + std::string(name));
        std::vector<ExprPtr> args;
        args.push_back(expr());
        while (accept(',')) args.push_back(expr());
        if (!accept(')')) fail("',' or ')'");
        if (args.size() < it->min_args || args.size() > it->max_args) {
            throw ParseError(ErrorCode::ArityError, start,
                             std::string(name) + " does not take " + std::to_string(args.size()) + " arguments");
        }
        if (name == "pow") return at(make_binary(ExprKind::Pow, args[0], args[1]), start);
        Builtin fn = Builtin::Abs;
        if (name == "sgn") fn = Builtin::Sgn;
        if (name == "pos") fn = Builtin::Pos;
        if (name == "max") fn = Builtin::Max;
        if (name == "min") fn = Builtin::Min;
        return at(make_call(fn, std::move(args)), start);
    }

    std::string_view s_;
    std::size_t arity_;
    std::size_t pos_ = 0;
};

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void eval_fail(const Expr& e, const std::string& reason) {
    throw Error(ErrorCode::EvalError, "node at byte " + std::to_string(e.offset) + ": " + reason);
}

double checked(const Expr& e, double v) {
    if (!std::isfinite(v)) eval_fail(e, "non-finite result");
    return v;
}

} // namespace

ExprPtr parse(std::string_view text, std::size_t arity) { return Parser(text, arity).run(); }

std::string print(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Number: return e.number < 0.0 ? "(-" + format_number(-e.number) + ")" : format_number(e.number);
    case ExprKind::Coord: return "x" + std::to_string(e.coord + 1);
    case ExprKind::Neg: return "(-" + print(*e.args[0]) + ")";
    case ExprKind::Add: return "(" + print(*e.args[0]) + " + " + print(*e.args[1]) + ")";
    case ExprKind::Sub: return "(" + print(*e.args[0]) + " - " + print(*e.args[1]) + ")";
    case ExprKind::Mul: return "(" + print(*e.args[0]) + " * " + print(*e.args[1]) + ")";
    case ExprKind::Div: return "(" + print(*e.args[0]) + " / " + print(*e.args[1]) + ")";
    case ExprKind::Pow: return "(" + print(*e.args[0]) + " ^ " + print(*e.args[1]) + ")";
    case ExprKind::Call: {
        std::string s(to_string(e.fn));
        s += "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + print(*e.args[i]);
        return s + ")";
    }
    }
    return "?";
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
    case ExprKind::Number:
        if (a.number != b.number) return false;
        break;
    case ExprKind::Coord:
        if (a.coord != b.coord) return false;
        break;
    case ExprKind::Call:
        if (a.fn != b.fn) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!structurally_equal(*a.args[i], *b.args[i])) return false;
    }
    return true;
}

double eval_ast(const Expr& e, std::span<const double> point) {
    switch (e.kind) {
    case ExprKind::Number: return e.number;
    case ExprKind::Coord:
        if (e.coord >= point.size()) eval_fail(e, "point has too few coordinates");
        return point[e.coord];
    case ExprKind::Neg: return -eval_ast(*e.args[0], point);
    case ExprKind::Add: return checked(e, eval_ast(*e.args[0], point) + eval_ast(*e.args[1], point));
    case ExprKind::Sub: return checked(e, eval_ast(*e.args[0], point) - eval_ast(*e.args[1], point));
    case ExprKind::Mul: return checked(e, eval_ast(*e.args[0], point) * eval_ast(*e.args[1], point));
    case ExprKind::Div: {
        const double a = eval_ast(*e.args[0], point), b = eval_ast(*e.args[1], point);
        if (b == 0.0) eval_fail(e, "division by zero");
        return checked(e, a / b);
    }
    case ExprKind::Pow: {
        const double a = eval_ast(*e.args[0], point), b = eval_ast(*e.args[1], point);
        if (a < 0.0 && std::trunc(b) != b) eval_fail(e, "negative base with non-integer exponent");
        if (a == 0.0 && b < 0.0) eval_fail(e, "zero base with negative exponent");
        return checked(e, std::pow(a, b));
    }
    case ExprKind::Call: {
        const double first = eval_ast(*e.args[0], point);
        switch (e.fn) {
        case Builtin::Abs: return std::abs(first);
        case Builtin::Sgn: return static_cast<double>((first > 0.0) - (first < 0.0));
        case Builtin::Pos: return std::max(first, 0.0);
        case Builtin::Max:
        case Builtin::Min: {
            double acc = first;
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                const double v = eval_ast(*e.args[i], point);
                acc = e.fn == Builtin::Max ? std::max(acc, v) : std::min(acc, v);
            }
            return acc;
        }
        }
    }
    }
    eval_fail(e, "unknown node");
}

std::size_t max_coordinate(const Expr& e) {
    std::size_t m = e.kind == ExprKind::Coord ? e.coord + 1 : 0;
    for (const auto& a : e.args) m = std::max(m, max_coordinate(*a));
    return m;
}

Functional to_functional(ExprPtr e, std::size_t arity) {
    if (max_coordinate(*e) > arity) throw Error(ErrorCode::ArityError, "expression uses more coordinates than arity");
    std::string label = print(*e);
    return Functional::custom(
        arity, [e = std::move(e)](std::span<const double> x) { return eval_ast(*e, x); }, std::move(label));
}

} // namespace sublin
