#include "common.hpp"

#include "sublin/error.hpp"
#include "sublin/model_io.hpp"
#include "sublin/report.hpp"

#include <doctest.h>

#include <cmath>

using namespace sublin;

namespace {

ErrorCode parse_code(const std::string& text) {
    try {
        parse_model(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("parsed: " << text);
    return ErrorCode::FormatError;
}

} // namespace

TEST_CASE("model documents") {
    const auto doc = load_model(SUBLIN_DATA_DIR "/m0.json");
    CHECK(doc.marginal.size() == 2);
    CHECK(doc.values[1] == 1.0);
    REQUIRE(doc.horizon.has_value());
    CHECK(*doc.horizon == 2);
    CHECK(!doc.semantics.has_value());
    const auto seq = doc.sequence(5, Semantics::QwiseProduct);
    CHECK(seq.horizon() == 2);
    CHECK(seq.semantics() == Semantics::QwiseProduct);

    const auto again = parse_model(dump_model(doc));
    CHECK(fingerprint(again.marginal) == fingerprint(doc.marginal));
    CHECK(dump_model(again) == dump_model(doc));
}

TEST_CASE("model validation") {
    const std::string ok = R"({"outcomes":["a","b"],"values":[1,2],"vertices":[[0.5,0.5]]})";
    CHECK_NOTHROW(parse_model(ok));
    CHECK(parse_code("{") == ErrorCode::FormatError);
    CHECK(parse_code(R"({"outcomes":["a","b"],"values":[1,2],"vertices":[[0.5,0.5]],"extra":1})") ==
          ErrorCode::FormatError);
    CHECK(parse_code(R"({"format_version":2,"outcomes":["a","b"],"values":[1,2],"vertices":[[0.5,0.5]]})") ==
          ErrorCode::FormatError);
    CHECK(parse_code(R"({"outcomes":["a","b"],"values":[1,2],"vertices":[[0.5,0.6]]})") == ErrorCode::NotNormalized);
    CHECK(parse_code(R"({"outcomes":["a","b"],"values":[1],"vertices":[[0.5,0.5]]})") == ErrorCode::LengthMismatch);
    CHECK(parse_code(R"({"outcomes":["a","b"],"values":[1,2],"vertices":[]})") == ErrorCode::EmptyCredalSet);
    CHECK(parse_code(R"({"outcomes":["a","b"],"values":[1,2],"vertices":[[1.5,-0.5]]})") == ErrorCode::NegativeWeight);
    CHECK(parse_code(R"({"outcomes":["a","b"],"values":[1,2],"vertices":[[0.5,0.5]],"semantics":"sideways"})") ==
          ErrorCode::FormatError);
    CHECK(parse_code(R"({"outcomes":"a","values":[1,2],"vertices":[[0.5,0.5]]})") == ErrorCode::FormatError);
    try {
        load_model("/nonexistent/model.json");
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}

TEST_CASE("report pass is derived from the sides") {
    const auto r = make_report("t", 1.0, 2.0, 3.0, "c", 0xabc, 5);
    CHECK(r.pass);
    CHECK(r.slack == 1.0);
    CHECK(!make_report("t", 2.0 + 1e-6, 2.0, 1.0, "", 0).pass);
    CHECK(make_report("t", 2.0 + 1e-10, 2.0, 1.0, "", 0).pass);
    CHECK(make_report("big", 1e6 + 1e-4, 1e6, 1.0, "", 0).pass);
    CHECK(!make_report("nan", std::nan(""), 1.0, 1.0, "", 0).pass);
    CHECK(!make_report("inf", 0.0, INFINITY, 1.0, "", 0).pass);
}

TEST_CASE("report lines round trip") {
    const auto r = make_report("rosenthal", 0.1, 0.30000000000000004, 64.0, "closure", 0xdeadbeefcafef00dULL,
                               18446744073709551615ULL);
    const std::string line = to_jsonl(r);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line.rfind(R"({"format_version":1,"name":"rosenthal")", 0) == 0);
    const auto back = report_from_json(line);
    CHECK(back.name == r.name);
    CHECK(back.lhs == r.lhs);
    CHECK(back.rhs == r.rhs);
    CHECK(back.fingerprint == r.fingerprint);
    CHECK(back.seed == r.seed);
    CHECK(back.pass == r.pass);
    CHECK(to_jsonl(back) == line);
    CHECK_THROWS_AS(report_from_json("{}"), Error);
    CHECK_THROWS_AS(report_from_json("not json"), Error);
}

TEST_CASE("report ordering") {
    std::vector<InequalityReport> rs{make_report("b", 0, 1, 1, "", 2, 1), make_report("a", 0, 1, 1, "", 9, 1),
                                     make_report("b", 0, 1, 1, "", 1, 7), make_report("b", 0, 1, 1, "", 1, 3)};
    sort_reports(rs);
    CHECK(rs[0].name == "a");
    CHECK(rs[1].fingerprint == 1);
    CHECK(rs[1].seed == 3);
    CHECK(rs[2].seed == 7);
    CHECK(rs[3].fingerprint == 2);
}
