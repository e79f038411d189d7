#include <doctest.h>

#include <map>
#include <random>

#include "capax/graph_map.hpp"
#include "capax/polynomial.hpp"
#include "fixtures.hpp"

using namespace capax;
using capax::testing::random_poly4;

namespace {

// Dense bivariate product in z, independent of Polynomial::operator*.
using Dense = std::map<std::pair<int, int>, long>;
Dense dense_mul(const Dense& a, const Dense& b)
{
    Dense r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) r[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

Dense to_dense(const ExactPoly& p)
{
    Dense r;
    for (const auto& [m, c] : p.terms()) r[{m.e[2], m.e[3]}] = c.re.get_num().get_si();
    return r;
}

std::strong_ordering cmp(const MonomialOrder& o, const Monomial& a, const Monomial& b) { return compare_monomials(o, a, b); }

}  // namespace

TEST_CASE("parse_poly literal examples")
{
    ExactPoly p = parse_exact("z1^2 + z2");
    CHECK(p.size() == 2);
    CHECK(p.coeff(Monomial::z(2, 0)) == GaussRational(1));
    CHECK(p.coeff(Monomial::z(0, 1)) == GaussRational(1));

    ExactPoly q = parse_exact("(1/2 + i)*w1*z2 - 3");
    CHECK(q.size() == 2);
    CHECK(q.coeff(Monomial(1, 0, 0, 1)) == GaussRational(mpq_class(1, 2), 1));
    CHECK(q.coeff(Monomial()) == GaussRational(-3));

    ExactPoly h = parse_exact("z1^2 + z1*z2 + z2^2");
    CHECK(h.is_homogeneous());
    CHECK(h.degree() == 2);
    CHECK(h.size() == 3);
}

TEST_CASE("parse_poly errors")
{
    auto kind_of = [](const char* s) {
        try {
            parse_exact(s);
        } catch (const ParseError& e) {
            return e.kind();
        }
        FAIL("no error for " << s);
        return ParseError::Kind::Syntax;
    };
    CHECK(kind_of("z1 + x3") == ParseError::Kind::UnknownVariable);
    CHECK(kind_of("z1^-2") == ParseError::Kind::BadExponent);
    CHECK(kind_of("z1^1.5") == ParseError::Kind::BadExponent);
    CHECK(kind_of("z1 +* z2") == ParseError::Kind::Syntax);
    CHECK(kind_of("0.5*z1") == ParseError::Kind::DecimalInExact);
    CHECK(kind_of("1/0") == ParseError::Kind::DivisionByZero);
    try {
        parse_exact("z1 + (z2");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 8);
    }
    CHECK(parse_float("0.5*z1").coeff(Monomial::z(1, 0)) == cplx(0.5, 0));
}

TEST_CASE("compare_monomials examples")
{
    auto g4 = MonomialOrder::grevlex4();
    CHECK(cmp(g4, Monomial::var(0), Monomial::var(3)) < 0);
    CHECK(cmp(g4, Monomial::var(0), Monomial::var(1)) < 0);
    CHECK(cmp(g4, Monomial::var(1), Monomial::var(2)) < 0);
    CHECK(cmp(g4, Monomial::var(2), Monomial::var(3)) < 0);
    auto gw = MonomialOrder::graph_weighted(2);
    CHECK(cmp(gw, Monomial::z(2, 0), Monomial::w(1, 0)) < 0);
    for (const auto& o : {g4, gw, MonomialOrder::grevlex_z(), MonomialOrder::grevlex_w()}) {
        Monomial m(1, 2, 0, 3);
        CHECK(cmp(o, m, m) == 0);
    }
}

TEST_CASE("orders are total and multiplicative")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> e(0, 4);
    auto rnd = [&](bool w, bool z) { return Monomial(w ? e(rng) : 0, w ? e(rng) : 0, z ? e(rng) : 0, z ? e(rng) : 0); };
    struct Case {
        MonomialOrder o;
        bool w, z;
    };
    for (const auto& c : {Case{MonomialOrder::grevlex4(), true, true}, Case{MonomialOrder::graph_weighted(2), true, true},
                          Case{MonomialOrder::graph_weighted(3), true, true}, Case{MonomialOrder::grevlex_z(), false, true},
                          Case{MonomialOrder::grevlex_w(), true, false}}) {
        for (int t = 0; t < 1000; ++t) {
            Monomial a = rnd(c.w, c.z), b = rnd(c.w, c.z), m = rnd(c.w, c.z);
            auto ab = cmp(c.o, a, b);
            CHECK((ab == 0) == (a == b));
            CHECK(cmp(c.o, b, a) == (0 <=> ab));
            if (ab < 0) CHECK(cmp(c.o, a * m, b * m) < 0);
        }
    }
}

TEST_CASE("graded order lists degree-2 z monomials as z1^2 < z1 z2 < z2^2")
{
    auto oz = MonomialOrder::grevlex_z();
    CHECK(cmp(oz, Monomial::z(2, 0), Monomial::z(1, 1)) < 0);
    CHECK(cmp(oz, Monomial::z(1, 1), Monomial::z(0, 2)) < 0);
}

TEST_CASE("leading_homogeneous_part")
{
    CHECK(leading_homogeneous_part(parse_exact("z1^2 + z2"), 2) == parse_exact("z1^2"));
    CHECK(leading_homogeneous_part(parse_exact("z2^2 + 1"), 2) == parse_exact("z2^2"));
    ExactPoly h = parse_exact("z1^2 - 3*z1*z2");
    CHECK(leading_homogeneous_part(h, 2) == h);
    CHECK_THROWS_AS(leading_homogeneous_part(parse_exact("w1 + z1"), 2), std::invalid_argument);
    CHECK_THROWS_AS(leading_homogeneous_part(parse_exact("z1^3"), 2), std::invalid_argument);
}

TEST_CASE("substitute_graph examples")
{
    GraphMap f = GraphMap::parse("z1^2 + z2", "z2^2 + 1", Precision::Exact);
    CHECK(substitute_graph(parse_exact("w1"), f) == parse_exact("z1^2 + z2"));
    ExactPoly prod = substitute_graph(parse_exact("w1*w2"), f);
    Dense oracle = dense_mul({{{2, 0}, 1}, {{0, 1}, 1}}, {{{0, 2}, 1}, {{0, 0}, 1}});
    CHECK(to_dense(prod) == oracle);
    CHECK(prod == parse_exact("z1^2*z2^2 + z2^3 + z1^2 + z2"));
    ExactPoly pz = parse_exact("3*z1*z2^2 - i");
    CHECK(substitute_graph(pz, f) == pz);
    CHECK(substitute_graph(parse_exact("w1"), f, true) == parse_exact("z1^2"));
}

TEST_CASE("evaluate examples")
{
    CHECK(evaluate(parse_float("w1*z2"), 2.0, 0.0, 0.0, 3.0) == cplx(6, 0));
    CHECK(evaluate(parse_float("(2 + 3*i)"), 5.0, 1.0, -1.0, 7.0) == cplx(2, 3));
    CHECK(std::abs(evaluate(parse_float("z1^2 + z2^2"), 0.0, 0.0, cplx(0, 1), 1.0)) == 0.0);
    CHECK_THROWS_AS(evaluate(parse_float("z1^200"), 0.0, 0.0, 1e10, 0.0), EvaluationOverflow);
}

TEST_CASE("ring axioms, substitution morphism, print round trip")
{
    std::mt19937_64 rng(7);
    GraphMap f = GraphMap::parse("z1^2 + 3*z1*z2 - z2 + 1/2", "(1 + i)*z2^2 - z1", Precision::Exact);
    for (int t = 0; t < 40; ++t) {
        ExactPoly p = random_poly4(rng, 12, 6), q = random_poly4(rng, 12, 6), r = random_poly4(rng, 12, 6);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(substitute_graph(p * q, f) == substitute_graph(p, f) * substitute_graph(q, f));
        CHECK(parse_exact(print(p)) == p);
        FloatPoly pf = to_float(p);
        CHECK(parse_float(print(pf)) == pf);
    }
}

TEST_CASE("float evaluation agrees with exact evaluation")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        ExactPoly p = random_poly4(rng, 12, 10);
        std::array<GaussRational, 4> pt;
        std::array<cplx, 4> ptf;
        for (int s = 0; s < 4; ++s) {
            pt[s] = capax::testing::random_rational(rng, 5, 4, true);
            ptf[s] = pt[s].to_complex();
        }
        cplx exact = evaluate(p, pt).to_complex();
        cplx approx = evaluate(to_float(p), ptf);
        double scale = 0.0;
        for (const auto& [m, c] : p.terms()) {
            double t2 = std::abs(c.to_complex());
            for (int s = 0; s < 4; ++s) t2 *= std::pow(std::abs(ptf[s]), m.e[s]);
            scale += t2;
        }
        CHECK(std::abs(exact - approx) <= 1e-10 * std::max(scale, 1e-300));
    }
}
