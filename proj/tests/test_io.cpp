#include <doctest.h>

#include "fusion/io.hpp"
#include "fusion/tlj_analysis.hpp"

using namespace fusion;

TEST_CASE("ring specs parse and validate") {
    auto tlj = parse_ring_spec_text(R"({"kind":"tlj_ainf","lambda_inv":5})");
    CHECK(tlj.ring->name() == "tlj_ainf(lambda_inv=5)");

    auto fc = parse_ring_spec_text(
        R"({"kind":"free_product","factors":[
             {"kind":"tlj_ainf","lambda_inv":5},
             {"kind":"tlj_ainf","lambda_inv":4}]})");
    CHECK(fc.ring->label_from_string("[1:H1][2:H1]").code.size() > 0);

    CHECK_THROWS_AS(parse_ring_spec_text(R"({"kind":"tlj_ainf","lambda_inv":3})"),
                    ParamError);
    CHECK_THROWS_AS(parse_ring_spec_text(R"({"kind":"nope"})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_ring_spec_text("not json"), ValidationError);

    // Rational index via string.
    auto r = parse_ring_spec_text(R"({"kind":"tlj_ainf","lambda_inv":"9/2"})");
    CHECK(*tlj_lambda_inv(*r.ring) == Rat(9, 2));
}

TEST_CASE("ring spec round trip on a corpus") {
    const std::vector<std::string> corpus = {
        R"({"kind":"tlj_ainf","lambda_inv":4})",
        R"({"kind":"tlj_ainf","lambda_inv":5})",
        R"({"kind":"tlj_ainf","lambda_inv":"9/2"})",
        R"({"kind":"tlj_ainf","lambda_inv":6.25})",
        R"({"kind":"tlj_finite","m":3})",
        R"({"kind":"tlj_finite","m":4})",
        R"({"kind":"tlj_finite","m":6})",
        R"({"kind":"tlj_finite","m":7})",
        R"({"kind":"tlj_finite","m":12})",
        R"({"kind":"group","family":"Z"})",
        R"({"kind":"group","family":"Zn","n":2})",
        R"({"kind":"group","family":"Zn","n":5})",
        R"({"kind":"group","family":"Zd","d":2})",
        R"({"kind":"group","family":"free","generators":2})",
        R"({"kind":"group","family":"free","generators":3})",
        R"({"kind":"su_n","n":2,"q":1.0})",
        R"({"kind":"su_n","n":3,"q":1.0})",
        R"({"kind":"su_n","n":3,"q":0.9})",
        R"({"kind":"product","factors":[{"kind":"tlj_ainf","lambda_inv":5},
             {"kind":"group","family":"Zn","n":2}]})",
        R"({"kind":"free_product","factors":[{"kind":"tlj_ainf","lambda_inv":5},
             {"kind":"tlj_ainf","lambda_inv":4}]})",
    };
    for (const auto& text : corpus) {
        ParsedRing first = parse_ring_spec_text(text);
        ParsedRing second = parse_ring_spec(first.spec);
        CHECK(first.spec == second.spec);
    }
}

TEST_CASE("multiplier specs") {
    auto tlj = parse_ring_spec_text(R"({"kind":"tlj_ainf","lambda_inv":5})");
    auto pt = parse_multiplier_spec_text(R"({"kind":"point","t":3})", tlj.ring);
    CHECK(*pt.eval_exact(Label{{1}}) == CRat(Rat(1, 2)));

    auto meas = parse_multiplier_spec_text(
        R"({"kind":"measure","atoms":[[0,"1/2"],[5,"1/2"]]})", tlj.ring);
    CHECK(*meas.eval_exact(Label{{1}}) == CRat(Rat(3, 8)));

    auto reg = parse_multiplier_spec_text(R"({"kind":"regular"})", tlj.ring);
    CHECK(*reg.eval_exact(Label{{2}}) == CRat(0));

    auto table = parse_multiplier_spec_text(
        R"({"kind":"table","values":[["H0",1],["H1","1/2","0"]]})", tlj.ring);
    CHECK(*table.eval_exact(Label{{1}}) == CRat(Rat(1, 2)));
    CHECK(*table.eval_exact(Label{{7}}) == CRat(0));

    auto bad = R"({"kind":"point"})";
    CHECK_THROWS_AS(parse_multiplier_spec_text(bad, tlj.ring),
                    ValidationError);
}

TEST_CASE("multiplier spec for extension across a grading kernel") {
    auto z = parse_ring_spec_text(R"({"kind":"group","family":"Z"})");
    auto psi = parse_multiplier_spec_text(
        R"({"kind":"extend_zero",
            "subring":{"kind":"grading_kernel","modulus":2},
            "inner":{"kind":"trivial"}})",
        z.ring);
    CHECK(*psi.eval_exact(z.ring->label_from_string("4")) == CRat(1));
    CHECK(*psi.eval_exact(z.ring->label_from_string("3")) == CRat(0));
}

TEST_CASE("element grammar") {
    auto tlj = parse_ring_spec_text(R"({"kind":"tlj_ainf","lambda_inv":5})");
    FusionElement x = parse_element(tlj.ring, "X");
    CHECK(x.coeff(Label{{0}}) == CRat(1));
    CHECK(x.coeff(Label{{1}}) == CRat(1));

    FusionElement e = parse_element(tlj.ring, "2*H1 - 1/2*H0 + H3");
    CHECK(e.coeff(Label{{1}}) == CRat(2));
    CHECK(e.coeff(Label{{0}}) == CRat(Rat(-1, 2)));
    CHECK(e.coeff(Label{{3}}) == CRat(1));

    auto z = parse_ring_spec_text(R"({"kind":"group","family":"Z"})");
    FusionElement g = parse_element(z.ring, "3");
    CHECK(g.coeff(z.ring->label_from_string("3")) == CRat(1));
    FusionElement neg = parse_element(z.ring, "-3");
    CHECK(neg.coeff(z.ring->label_from_string("-3")) == CRat(1));
    FusionElement kesten = parse_element(z.ring, "1 + -1");
    CHECK(kesten.coeff(z.ring->label_from_string("1")) == CRat(1));
    CHECK(kesten.coeff(z.ring->label_from_string("-1")) == CRat(1));

    CHECK_THROWS(parse_element(z.ring, "X"));
    CHECK_THROWS(parse_element(tlj.ring, ""));
}

TEST_CASE("envelope shape and float formatting") {
    Json env = make_envelope("tlj admissible", Json{{"t", 3}},
                             Json{{"verdict", "Admissible"}});
    CHECK(env.contains("command"));
    CHECK(env.contains("inputs"));
    CHECK(env.contains("result"));
    CHECK(env.contains("witnesses"));
    CHECK(env.contains("tolerances"));
    CHECK(env["versions"]["schema"] == "1");

    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(4.0) == "4");
}
