#include <doctest.h>

#include <random>

#include "capax/resultant.hpp"
#include "fixtures.hpp"

using namespace capax;
using namespace capax::testing;

namespace {

ExactMatrix rows(std::initializer_list<std::initializer_list<int>> r)
{
    ExactMatrix M(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : r) {
        Eigen::Index j = 0;
        for (int v : row) M(i, j++) = GaussRational(v);
        ++i;
    }
    return M;
}

ExactPoly H(const char* s) { return parse_exact(s); }
FloatPoly Hf(const char* s) { return parse_float(s); }

ExactPoly random_form(std::mt19937_64& rng, int d)
{
    ExactPoly h;
    for (int a = 0; a <= d; ++a) h.add_term(Monomial::z(a, d - a), random_rational(rng, 6, 3, true));
    if (h.is_zero() || h.degree() != d) h.add_term(Monomial::z(d, 0), GaussRational(1));
    return h;
}

}  // namespace

TEST_CASE("sylvester_matrix layout")
{
    CHECK(sylvester_matrix(H("z1^2"), H("z2^2")) == rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    CHECK(sylvester_matrix(H("z1^2 + z2^2"), H("z1*z2")) == rows({{1, 0, 1, 0}, {0, 1, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}}));
    CHECK(sylvester_matrix(H("z1 + z2"), H("z1 - z2")) == rows({{1, 1}, {1, -1}}));
    CHECK_THROWS_AS(sylvester_matrix(H("z1^2 + z2"), H("z2^2")), std::invalid_argument);
    CHECK_THROWS_AS(sylvester_matrix(H("z1^2"), H("z2^3")), std::invalid_argument);
}

TEST_CASE("resultant examples")
{
    CHECK(resultant(H("z1^2"), H("z2^2")) == GaussRational(1));
    CHECK(resultant(H("2*z1^2"), H("z2^2")) == GaussRational(4));
    CHECK(resultant(H("z1^2 + z2^2"), H("z1*z2")) == GaussRational(1));
    CHECK(resultant(H("z1 + z2"), H("z1 - z2")) == GaussRational(-2));
    CHECK(std::abs(resultant(Hf("z1^2"), Hf("z2^2")) - cplx(1)) < 1e-14);
}

TEST_CASE("root-product oracle examples")
{
    CHECK(std::abs(resultant_root_oracle(Hf("z1^2 - z2^2"), Hf("z1^2 - 4*z2^2")) - cplx(9)) < 1e-12);
    CHECK(resultant(H("z1^2 - z2^2"), H("z1^2 - 4*z2^2")) == GaussRational(9));
    CHECK(std::abs(resultant_root_oracle(Hf("z1^2"), Hf("z1^2 + z2^2")) - cplx(1)) < 1e-12);
    CHECK(resultant(H("z1^2"), H("z1^2 + z2^2")) == GaussRational(1));
    CHECK(std::abs(resultant_root_oracle(Hf("z1 + z2"), Hf("z1 - z2")) - cplx(-2)) < 1e-14);
    CHECK(std::abs(resultant_root_oracle(Hf("z1*z2"), Hf("z1^2"))) < 1e-14);
    // Vanishing z1^d coefficients.
    CHECK(std::abs(resultant_root_oracle(Hf("z1^2 + z2^2"), Hf("z1*z2")) - cplx(1)) < 1e-12);
    CHECK(std::abs(resultant_root_oracle(Hf("2*z1^2"), Hf("2*z2^2")) - cplx(16)) < 1e-12);
    CHECK(std::abs(resultant_root_oracle(Hf("z1*z2 + z2^2"), Hf("3*z1*z2 - z2^2")) - resultant(Hf("z1*z2 + z2^2"), Hf("3*z1*z2 - z2^2"))) < 1e-12);
    CHECK(std::abs(resultant_root_oracle(Hf("z1^2*z2"), Hf("z2^3 + z1*z2^2")) - resultant(Hf("z1^2*z2"), Hf("z2^3 + z1*z2^2"))) < 1e-12);
}

TEST_CASE("is_regular examples")
{
    CHECK(is_regular(GraphMap::parse("z1^2", "z2^2", Precision::Exact)));
    CHECK_FALSE(is_regular(GraphMap::parse("z1*z2", "z1*(z1 + z2)", Precision::Exact)));
    CHECK(is_regular(GraphMap::parse("z1^2 + z2^2", "z1*z2", Precision::Exact)));
    CHECK_FALSE(is_regular(GraphMap::parse("z1*z2 + 1", "z1*(z1 + z2)", Precision::Float)));
    CHECK(is_regular(GraphMap::parse("z1^2 + 0.5", "z2^2", Precision::Float)));
    CHECK_THROWS_AS(is_regular(GraphMap::parse("z1^3", "z2^2", Precision::Exact)), std::invalid_argument);
}

TEST_CASE("scaling multiplicativity")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        int d = 2 + t % 2;
        ExactPoly h1 = random_form(rng, d), h2 = random_form(rng, d);
        GaussRational c1 = random_nonzero(rng), c2 = random_nonzero(rng);
        CHECK(resultant(h1 * c1, h2 * c2) == pow(c1, d) * pow(c2, d) * resultant(h1, h2));
    }
}

TEST_CASE("block factorization examples")
{
    ExactPoly h1 = H("z1^2 + 2*z1*z2 - z2^2"), h2 = H("3*z1^2 - z1*z2 + 2*z2^2");
    GaussRational res = resultant(h1, h2);
    REQUIRE(!res.is_zero());
    struct Row {
        int k, copies;
        bool modified;
    };
    for (const auto& row : {Row{3, 1, false}, Row{5, 1, true}, Row{7, 6, false}, Row{9, 6, true}}) {
        BlockReport rep = block_factorization(h1, h2, row.k);
        CHECK(rep.copies == row.copies);
        CHECK(rep.modified == row.modified);
        CHECK(rep.identity_holds);
        CHECK((rep.det == pow(res, row.copies) || rep.det == -pow(res, row.copies)));
    }
    BlockReport r3 = block_factorization(h1, h2, 3);
    CHECK(r3.rows == std::vector<Monomial>{Monomial(1, 0, 1, 0), Monomial(1, 0, 0, 1), Monomial(0, 1, 1, 0), Monomial(0, 1, 0, 1)});
    CHECK(r3.size == 4);
    CHECK_THROWS_AS(block_factorization(h1, h2, 2), std::invalid_argument);
    CHECK_THROWS_AS(block_factorization(H("z1*z2"), H("z1^2 + z1*z2"), 5), std::domain_error);
}

TEST_CASE("block factorization for d = 3")
{
    ExactPoly h1 = H("z1^3 + z1*z2^2 - 2*z2^3"), h2 = H("z1^2*z2 + 3*z2^3 - z1^3");
    GaussRational res = resultant(h1, h2);
    REQUIRE(!res.is_zero());
    for (int k = 5; k <= 13; ++k) {
        BlockReport rep = block_factorization(h1, h2, k);
        CHECK_MESSAGE(rep.identity_holds, "k = " << k);
    }
}

TEST_CASE("resultant copies grow like d n^3 / 6")
{
    const int d = 2, n = 8;
    long total = 0;
    for (int k = 2 * d - 1; k <= d * n; ++k) total += block_copies(d, k);
    double target = d * n * n * n / 6.0;
    CHECK(std::abs(total - target) <= 0.25 * target);
}

TEST_CASE("rotation covariance")
{
    std::mt19937_64 rng(9);
    auto random_matrix = [&] {
        for (;;) {
            Rational2x2 R;
            for (auto& row : R)
                for (auto& c : row) c = random_rational(rng, 4, 3, true);
            GaussRational det = R[0][0] * R[1][1] - R[0][1] * R[1][0];
            if (!det.is_zero()) return std::make_pair(R, det);
        }
    };
    for (int t = 0; t < 10; ++t) {
        int d = 2 + t % 2;
        GraphMap f = GraphMap::from_exact(random_form(rng, d), random_form(rng, d));
        auto [R1, det1] = random_matrix();
        auto [R2, det2] = random_matrix();
        GraphMap g = f.rotated(R1, R2);
        CHECK(resultant(g.fhat1(), g.fhat2()) == pow(det2, d) * pow(det1, d * d) * resultant(f.fhat1(), f.fhat2()));
    }
    // Swapping z1 and z2 multiplies by (-1)^(d^2); swapping f1 and f2 by (-1)^d.
    Rational2x2 I{{{GaussRational(1), GaussRational(0)}, {GaussRational(0), GaussRational(1)}}};
    Rational2x2 S{{{GaussRational(0), GaussRational(1)}, {GaussRational(1), GaussRational(0)}}};
    GraphMap f = GraphMap::parse("z1^2 + 2*z1*z2 - z2^2", "3*z1^2 - z1*z2 + 2*z2^2", Precision::Exact);
    GaussRational r = resultant(f.fhat1(), f.fhat2());
    GraphMap a = f.rotated(S, I), b = f.rotated(I, S);
    CHECK(resultant(a.fhat1(), a.fhat2()) == r);
    CHECK(resultant(b.fhat1(), b.fhat2()) == r);
}
