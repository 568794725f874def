#include "common.hpp"

#include "sublin/expr.hpp"
#include "sublin/random.hpp"

#include <json.hpp>
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>

using namespace sublin;

namespace {

ParseError parse_error(std::string_view text, std::size_t arity) {
    try {
        parse(text, arity);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("parsed without error: " << text);
    return ParseError(ErrorCode::SyntaxError, 0, "");
}

double eval_text(std::string_view text, std::vector<double> pt) { return eval_ast(*parse(text, pt.size()), pt); }

ExprPtr random_tree(Rng& rng, int depth) {
    const auto leaf = [&]() -> ExprPtr {
        if (rng.coin()) return make_coord(rng.uniform_int(0, 2));
        switch (rng.uniform_int(0, 3)) {
        case 0: return make_number(static_cast<double>(rng.uniform_int(0, 100)));
        case 1: return make_number(rng.uniform(0.0, 10.0));
        case 2: return make_number(std::ldexp(rng.uniform(), static_cast<int>(rng.uniform_int(0, 1600)) - 800));
        default: return make_number(0.0);
        }
    };
    if (depth == 0 || rng.coin(0.25)) return leaf();
    switch (rng.uniform_int(0, 7)) {
    case 0: return make_unary(ExprKind::Neg, random_tree(rng, depth - 1));
    case 1: return make_binary(ExprKind::Add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 2: return make_binary(ExprKind::Sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 3: return make_binary(ExprKind::Mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4: return make_binary(ExprKind::Div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5: return make_binary(ExprKind::Pow, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6: {
        const Builtin unary[] = {Builtin::Abs, Builtin::Sgn, Builtin::Pos};
        return make_call(unary[rng.uniform_int(0, 2)], {random_tree(rng, depth - 1)});
    }
    default: {
        std::vector<ExprPtr> args(rng.uniform_int(2, 4));
        for (auto& a : args) a = random_tree(rng, depth - 1);
        return make_call(rng.coin() ? Builtin::Max : Builtin::Min, std::move(args));
    }
    }
}

} // namespace

TEST_CASE("precedence and structure") {
    const auto a = parse("max(x1, x1+x2)^2", 2);
    const auto expect = make_binary(
        ExprKind::Pow,
        make_call(Builtin::Max, {make_coord(0), make_binary(ExprKind::Add, make_coord(0), make_coord(1))}),
        make_number(2));
    CHECK(structurally_equal(*a, *expect));
    CHECK(structurally_equal(*parse("x1+x2*x3", 3),
                             *make_binary(ExprKind::Add, make_coord(0),
                                          make_binary(ExprKind::Mul, make_coord(1), make_coord(2)))));
    CHECK(structurally_equal(*parse("pow(x1, 2)", 1), *parse("x1^2", 1)));
    CHECK(print(*parse("2^3^2", 0)) == "(2 ^ (3 ^ 2))");
    CHECK(print(*parse("x1-x2-x3", 3)) == "((x1 - x2) - x3)");
}

TEST_CASE("builtins") {
    CHECK(eval_text("pow(abs(-2), 1.5)", {}) == doctest::Approx(2.8284271247461903).epsilon(1e-15));
    CHECK(eval_text("pos(x1)", {-3.0}) == 0.0);
    CHECK(eval_text("sgn(0)", {}) == 0.0);
    CHECK(eval_text("sgn(x1)", {-0.5}) == -1.0);
    CHECK(eval_text("max(1, 5, 3)", {}) == 5.0);
    CHECK(eval_text("min(4, -2, 3, 0)", {}) == -2.0);
}

TEST_CASE("parse errors carry offsets and codes") {
    const auto e1 = parse_error("x4", 2);
    CHECK(e1.code() == ErrorCode::ArityError);
    CHECK(e1.offset() == 0);
    const auto e2 = parse_error("x1 + ", 1);
    CHECK(e2.code() == ErrorCode::SyntaxError);
    CHECK(e2.offset() == 5);
    const auto e3 = parse_error("1 + foo(x1)", 1);
    CHECK(e3.code() == ErrorCode::UnknownIdentifier);
    CHECK(e3.offset() == 4);
    CHECK(parse_error("max(x1)", 1).code() == ErrorCode::ArityError);
    CHECK(parse_error("abs(x1, x1)", 1).code() == ErrorCode::ArityError);
    CHECK(parse_error("pow(2)", 0).code() == ErrorCode::ArityError);
    CHECK(parse_error("x0", 3).code() == ErrorCode::ArityError);
    CHECK(parse_error("(x1", 1).code() == ErrorCode::SyntaxError);
    CHECK(parse_error("x1 x2", 2).offset() == 3);
    CHECK(parse_error("1e400", 0).code() == ErrorCode::SyntaxError);
    CHECK(parse_error("", 0).code() == ErrorCode::SyntaxError);
    CHECK(parse_error("abs", 0).code() == ErrorCode::SyntaxError);
    CHECK(parse_error("2 $ 3", 0).offset() == 2);
}

TEST_CASE("evaluation errors") {
    for (const char* bad : {"1/0", "x1/(x1-x1)", "(-8)^(1/3)", "0^-1", "10^400", "pow(-2, 0.5)"}) {
        CAPTURE(bad);
        try {
            eval_text(bad, {1.0});
            FAIL("expected EvalError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EvalError);
        }
    }
    CHECK(eval_text("(-2)^3", {}) == -8.0);
}

TEST_CASE("golden corpus") {
    std::ifstream in(SUBLIN_DATA_DIR "/expr_golden.json");
    REQUIRE(in);
    const auto j = nlohmann::json::parse(in);
    std::size_t cases = 0;
    std::set<std::string> exprs;
    for (const auto& c : j.at("cases")) {
        const std::string text = c.at("expr");
        const auto pt = c.at("point").get<std::vector<double>>();
        const double want = c.at("value");
        CAPTURE(text);
        const double got = eval_text(text, pt);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        exprs.insert(text);
        ++cases;
    }
    CHECK(exprs.size() == 50);
    CHECK(cases >= 140);
}

TEST_CASE("print and parse round trip") {
    Rng rng(2024);
    for (int i = 0; i < 10'000; ++i) {
        const auto e = random_tree(rng, 5);
        const std::string text = print(*e);
        const auto back = parse(text, 3);
        CHECK_MESSAGE(structurally_equal(*e, *back), text);
        CHECK(print(*back) == text);
    }
}

TEST_CASE("expressions as functionals") {
    const testing::M0 m;
    const auto f = to_functional(parse("x1*x2", 2), 2);
    CHECK(eval_upper(m.seq(2, Semantics::PengForward), f) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(eval_upper(m.seq(2, Semantics::QwiseProduct), f) == doctest::Approx(0.04).epsilon(1e-13));
    CHECK(max_coordinate(*parse("x3 + x1", 3)) == 3);
    CHECK(max_coordinate(*parse("2", 0)) == 0);
    CHECK_THROWS_AS(to_functional(parse("x3", 3), 2), Error);
}
