#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coprime/expr.hpp"

#include <cmath>
#include <string>

using namespace coprime;

namespace {

double mid(const HardyExpr& f, uint64_t n) { return eval_at(f, n, 96).mid_double(); }

}  // namespace

TEST_CASE("parse and format round-trip") {
    CHECK_EQ(format(parse("t^1.5")), "t^1.5");
    CHECK_EQ(format(parse("sqrt2*t")), "sqrt2*t");
    CHECK_EQ(format(parse("t^1.2*log(t)^3 + 2*t")), "t^1.2*log(t)^3 + 2*t");
    CHECK_EQ(format(parse("log2(t)")), "log2(t)");
    // log(log(t)) normalizes to the iterated-log spelling
    CHECK_EQ(format(parse("log(log(t))")), "log2(t)");
    CHECK(parse("log(log(t))") == parse("log2(t)"));
    // exponents may be negative, parenthesized, or named constants
    CHECK_EQ(format(parse("t^-0.5")), format(parse("t^(0 - 0.5)")));
    CHECK(parse("t^(1/2)") == parse("t^0.5"));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("t +"), ParseError);
    CHECK_THROWS_AS(parse("(t"), ParseError);
    CHECK_THROWS_AS(parse("t^t"), ParseError);       // exponent must be constant
    CHECK_THROWS_AS(parse("sqrt(2)*t"), ParseError); // sqrt2 is a named constant, not a call
    CHECK_THROWS_AS(parse("frobnicate"), ParseError);
    try {
        parse("t + @");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK_EQ(e.position, 4);
    }
}

TEST_CASE("evaluation encloses known values") {
    // 1000^1.5 = 31622.77660168379331998...
    auto v = eval_at(parse("t^1.5"), 1000, 96);
    CHECK(v.precision_bits() >= 53);
    CHECK_EQ(v.mid_double(), doctest::Approx(31622.776601683793).epsilon(1e-14));

    CHECK_EQ(mid(parse("sqrt2*t"), 10), doctest::Approx(14.142135623730950).epsilon(1e-14));
    CHECK_EQ(mid(parse("log(t)"), 100), doctest::Approx(std::log(100.0)).epsilon(1e-14));
    CHECK_EQ(mid(parse("2*t + 1"), 7), doctest::Approx(15.0));

    // log arguments must stay in range below the threshold
    auto h = parse("log2(t)");
    CHECK_THROWS_AS(eval_at(h, 1, 96), DomainError);
}

TEST_CASE("evaluation thresholds") {
    CHECK_EQ(parse("t").t0(), 1);
    CHECK_EQ(parse("log(t)").t0(), 4);       // needs log arg > e
    CHECK_EQ(parse("log(log(t))").t0(), 16); // needs log(t) > e
    CHECK_EQ(parse("log3(t)").t0(), uint64_t(1) << 22);  // t > e^(e^e)
    CHECK_FALSE(parse("log3(t)").threshold_capped());
    CHECK(parse("log4(t)").threshold_capped());  // t > e^(e^(e^e)) overflows u64
}

TEST_CASE("differentiation") {
    // d/dt t^1.5 = 1.5 t^0.5 -> 4.5 at t = 9
    auto d1 = differentiate(parse("t^1.5"));
    CHECK_EQ(mid(d1, 9), doctest::Approx(4.5).epsilon(1e-14));
    // second derivative 0.75 t^-0.5 -> 0.075 at t = 100
    auto d2 = differentiate(parse("t^1.5"), 2);
    CHECK_EQ(mid(d2, 100), doctest::Approx(0.075).epsilon(1e-14));
    // d/dt log2(t) = 1/(t log t)
    auto dl = differentiate(parse("log2(t)"));
    CHECK_EQ(mid(dl, 16), doctest::Approx(1.0 / (16.0 * std::log(16.0))).epsilon(1e-14));
    // linear functions lose their slope to a constant
    auto dc = differentiate(parse("sqrt2*t"));
    CHECK_EQ(mid(dc, 5), doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("normal form and growth vectors") {
    auto nf = normalize(parse("t^1.2*log(t)^3 + 2*t"));
    REQUIRE(nf.has_value());
    CHECK_EQ(nf->terms.size(), 2);

    auto gv = growth_vector(parse("t^1.2*log(t)^3"));
    REQUIRE(gv.has_value());
    REQUIRE_EQ(gv->exponents.size(), 2);
    CHECK(gv->exponents[0] == ExactReal::from_decimal("1.2"));
    CHECK(gv->exponents[1] == ExactReal(3));

    // cancellation: (t + log t) - log t has the same normal form as t
    auto nt = normalize(parse("(t + log(t)) - log(t)"));
    REQUIRE(nt.has_value());
    CHECK_EQ(nt->terms.size(), 1);
}

TEST_CASE("growth comparison verdicts") {
    auto c1 = growth_compare(parse("t^1.2"), parse("t^1.9"));
    CHECK_EQ(c1.order, Ordering::Precedes);
    CHECK_EQ(c1.method, Method::Symbolic);

    auto c2 = growth_compare(parse("log(t)*log4(t)"), parse("t^0.5"));
    CHECK_EQ(c2.order, Ordering::Precedes);

    auto c3 = growth_compare(parse("t^1.9"), parse("t^1.2"));
    CHECK_EQ(c3.order, Ordering::Dominates);

    auto c4 = growth_compare(parse("2*t"), parse("t"));
    CHECK_EQ(c4.order, Ordering::Comparable);
}

TEST_CASE("condition A: log * log4 precedes f") {
    auto v = check_condition({parse("sqrt2*t")}, Condition::A);
    REQUIRE_EQ(v.size(), 1);
    CHECK(v[0].holds);
    CHECK_EQ(v[0].method, Method::Symbolic);

    auto w = check_condition({parse("log(t)")}, Condition::A);
    CHECK_FALSE(w[0].holds);
}

TEST_CASE("condition B: wedged between consecutive powers") {
    auto v = check_condition({parse("t^1.5")}, Condition::B);
    REQUIRE_EQ(v.size(), 1);
    CHECK(v[0].holds);
    CHECK_EQ(v[0].witness.value_or(-1), 2);

    auto v12 = check_condition({parse("t^1.2"), parse("t^1.9"), parse("t^2.7")}, Condition::B);
    REQUIRE_EQ(v12.size(), 3);
    CHECK_EQ(v12[0].witness.value_or(-1), 2);
    CHECK_EQ(v12[1].witness.value_or(-1), 2);
    CHECK_EQ(v12[2].witness.value_or(-1), 3);

    // t log^2 t sits strictly between t and t^2
    auto vl = check_condition({parse("t*log2(t)")}, Condition::B);
    CHECK(vl[0].holds);
    CHECK_EQ(vl[0].witness.value_or(-1), 2);

    // multiples of integer powers are honestly rejected
    auto vs = check_condition({parse("sqrt2*t")}, Condition::B);
    CHECK_FALSE(vs[0].holds);
    CHECK(vs[0].note.find("comparable to an integer power") != std::string::npos);
    auto vt = check_condition({parse("t")}, Condition::B);
    CHECK_FALSE(vt[0].holds);
}

TEST_CASE("condition C: adjacent ratios dominate log2^4") {
    auto v = check_condition({parse("t^1.2"), parse("t^1.9"), parse("t^2.7")}, Condition::C);
    REQUIRE_EQ(v.size(), 2);
    CHECK(v[0].holds);
    CHECK(v[1].holds);

    // ratio log t dominates log2(t)^4 (lexicographic on iterated-log exponents)
    auto w = check_condition({parse("t"), parse("t*log(t)")}, Condition::C);
    REQUIRE_EQ(w.size(), 1);
    CHECK(w[0].holds);
    auto x = check_condition({parse("t"), parse("2*t")}, Condition::C);
    CHECK_FALSE(x[0].holds);
}

TEST_CASE("polynomial gap variant for radical multiples") {
    // log t precedes |sqrt2 t - p(t)| for p = t (and any rational line)
    auto g = polynomial_gap_vs_log(parse("sqrt2*t"), {mpq_class(0), mpq_class(1)});
    CHECK_EQ(g.order, Ordering::Precedes);
    CHECK_EQ(g.method, Method::Symbolic);
    auto g2 = polynomial_gap_vs_log(parse("sqrt2*t"), {mpq_class(7), mpq_class(3, 2)});
    CHECK_EQ(g2.order, Ordering::Precedes);
    // the gap of t against p(t) = t is identically zero: no verdict possible
    auto z = polynomial_gap_vs_log(parse("t"), {mpq_class(0), mpq_class(1)});
    CHECK_EQ(z.order, Ordering::Inconclusive);
    CHECK(z.note.find("zero") != std::string::npos);
}

TEST_CASE("exact constants") {
    CHECK_EQ(ExactReal::named("sqrt2").to_double(), doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_EQ(ExactReal::named("sqrt3").to_double(), doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK_THROWS(ExactReal::named("sqrt5"));
    auto two = ExactReal::named("sqrt2").try_mul(ExactReal::named("sqrt2"));
    REQUIRE(two.has_value());
    CHECK(*two == ExactReal(2));
    CHECK_EQ(ExactReal::from_decimal("1e-4").to_double(), doctest::Approx(1e-4).epsilon(1e-15));
    CHECK(ExactReal::from_decimal("-0.25") == ExactReal(mpq_class(-1, 4)));
    // digit strings with leading zeros must still read as decimal
    CHECK(ExactReal::from_decimal("0.25") == ExactReal(mpq_class(1, 4)));
    CHECK(ExactReal::from_decimal("0.8") == ExactReal(mpq_class(4, 5)));
    CHECK(ExactReal::from_decimal("0.09") == ExactReal(mpq_class(9, 100)));
    CHECK_EQ(eval_at(parse("0.8*t"), 10, 96).mid_double(), doctest::Approx(8.0).epsilon(1e-14));
    CHECK_EQ(ExactReal::named("sqrt2").compare(ExactReal(mpq_class(141421, 100000))),
             std::strong_ordering::greater);
}
