#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "capax/set_models.hpp"
#include "fixtures.hpp"

using namespace capax;
using namespace capax::testing;

namespace {

GraphMap F(const char* f1, const char* f2) { return GraphMap::parse(f1, f2, Precision::Float); }

bool has_root(const Fiber& fb, cplx z1, cplx z2, double tol = 1e-9)
{
    return std::any_of(fb.roots.begin(), fb.roots.end(),
                       [&](const Point2& r) { return std::abs(r[0] - z1) < tol && std::abs(r[1] - z2) < tol; });
}

}  // namespace

TEST_CASE("build_mesh examples")
{
    SampledSet T = build_mesh(parse_set_spec("torus:1,1", 4));
    REQUIRE(T.size() == 16);
    CHECK(T.points[0][0] == cplx(1, 0));
    CHECK(T.points[0][1] == cplx(1, 0));
    for (const auto& p : T.points) CHECK(std::abs(std::abs(p[0]) - 1.0) < 1e-15);

    SampledSet B = build_mesh(parse_set_spec("box:-2,2,0,0", 9));
    REQUIRE(B.size() == 9);
    for (int j = 0; j < 9; ++j) {
        CHECK(B.points[static_cast<std::size_t>(j)][0] == cplx(-2.0 + 0.5 * j, 0));
        CHECK(B.points[static_cast<std::size_t>(j)][1] == cplx(0, 0));
    }

    const char* path = "capax_test_points.csv";
    {
        std::ofstream out(path);
        out << "re_w1,im_w1,re_w2,im_w2\n0.5,0,-1,2\n";
    }
    SampledSet P = build_mesh(parse_set_spec(std::string("points:") + path));
    REQUIRE(P.size() == 1);
    CHECK(P.points[0][1] == cplx(-1, 2));
    std::remove(path);

    SampledSet D = build_mesh(parse_set_spec("polydisc:2,3", 8));
    CHECK(D.size() == 64);
    CHECK(std::abs(std::abs(D.points[5][1]) - 3.0) < 1e-14);

    CHECK_THROWS_AS(parse_set_spec("torus:0,1", 8), std::invalid_argument);
    CHECK_THROWS_AS(parse_set_spec("torus:1,1", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_set_spec("box:2,1,0,1", 8), std::invalid_argument);
    CHECK_THROWS_AS(parse_set_spec("disc:1", 8), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh(parse_set_spec("points:/nonexistent/file.csv")), std::invalid_argument);
}

TEST_CASE("fiber examples")
{
    Fiber a = fiber(F("z1^2", "z2^2"), {1.0, 1.0});
    CHECK(a.roots.size() == 4);
    for (double s1 : {-1.0, 1.0})
        for (double s2 : {-1.0, 1.0}) CHECK(has_root(a, s1, s2));

    Fiber b = fiber(F("z1 + z2", "z1 - z2"), {2.0, 0.0});
    REQUIRE(b.roots.size() == 1);
    CHECK(has_root(b, 1.0, 1.0));

    // Oracle: z2^2 = -1 and z1^2 = -z2, solved one variable at a time.
    Fiber c = fiber(F("z1^2 + z2", "z2^2 + 1"), {0.0, 0.0});
    CHECK(c.roots.size() == 4);
    CHECK(c.residual < 1e-9);
    for (cplx z2 : {cplx(0, 1), cplx(0, -1)}) {
        cplx z1 = std::sqrt(-z2);
        CHECK(has_root(c, z1, z2));
        CHECK(has_root(c, -z1, z2));
    }

    CHECK_THROWS_AS(fiber(F("z1*z2", "z1^2"), {0.0, 0.0}), DegenerateFiber);
}

TEST_CASE("fibers of random regular d = 2 maps have four roots")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int flagged = 0, total = 0;
    for (int m = 0; m < 5; ++m) {
        GraphMap f = random_regular_map(rng, 2);
        FiberSolver solver(f);
        for (int t = 0; t < 100; ++t) {
            Fiber fb = solver.solve({cplx(u(rng), u(rng)), cplx(u(rng), u(rng))});
            ++total;
            if (fb.near_discriminant) ++flagged;
            CHECK(fb.roots.size() == 4);
            CHECK(fb.residual < 1e-9 * fb.scale);
            for (const auto& z : fb.roots) {
                auto v = f(z[0], z[1]);
                CHECK(std::abs(v[0] - fb.w[0]) < 1e-9 * fb.scale);
            }
        }
    }
    CHECK(flagged <= total / 50);
}

TEST_CASE("graph_lift examples")
{
    GraphMap sq = F("z1^2", "z2^2");
    SampledSet K = build_mesh(parse_set_spec("torus:1,1", 6));
    SampledSet L = graph_lift(sq, K);
    CHECK(L.size() == 4 * K.size());
    CHECK(L.on_graph());
    for (const auto& p : L.points) {
        CHECK(std::abs(std::abs(p[2]) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(p[3]) - 1.0) < 1e-12);
    }
    SampledSet Lz = preimage_projection(L);
    CHECK(Lz.size() == L.size());
    CHECK(Lz.provenance == Provenance::PreimageProjection);
    CHECK(w_projection(L).size() == K.size());

    CHECK(graph_lift(sq, point_set({{1.0, 1.0}})).size() == 4);
    CHECK(graph_lift(F("z1 + z2", "z1 - z2"), K).size() == K.size());
    CHECK_THROWS_AS(graph_lift(sq, L), std::invalid_argument);

    SampledSet Lt = graph_lift(sq, K, 3);
    CHECK(Lt.points == L.points);
}

TEST_CASE("graph lift lands in the preimage")
{
    std::mt19937_64 rng(23);
    GraphMap f = random_regular_map(rng, 2);
    SampledSet K = build_mesh(parse_set_spec("torus:1,1.5", 8));
    SampledSet L = graph_lift(f, K);
    CHECK(L.size() == 4 * K.size());
    for (const auto& p : L.points) {
        auto v = f(p[2], p[3]);
        CHECK(std::abs(v[0] - p[0]) < 1e-9 * std::max(1.0, std::abs(p[0])));
        CHECK(std::abs(v[1] - p[1]) < 1e-9 * std::max(1.0, std::abs(p[1])));
    }
}

TEST_CASE("fiber_average_poly examples")
{
    GraphMap sq = F("z1^2", "z2^2");
    auto close = [](const FloatPoly& a, const FloatPoly& b) {
        FloatPoly d = a - b;
        for (const auto& [m, c] : d.terms())
            if (std::abs(c) > 1e-9) return false;
        return true;
    };
    FiberAverage a = fiber_average_poly(parse_float("z1"), sq, 1);
    CHECK(a.poly.is_zero());
    FiberAverage b = fiber_average_poly(parse_float("z1^2"), sq, 2);
    CHECK(close(b.poly, parse_float("w1")));
    FiberAverage c = fiber_average_poly(parse_float("w1*z2 + w2"), sq, 2);
    CHECK(close(c.poly, parse_float("w2")));
    CHECK(c.residual < 1e-9);
    CHECK_THROWS_AS(fiber_average_poly(parse_float("z1"), F("z1*z2", "z1*(z1 + z2)"), 1), std::domain_error);
}

TEST_CASE("fiber averaging properties")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int t = 0; t < 4; ++t) {
        GraphMap f = random_regular_map(rng, 2);
        FiberSolver solver(f);
        ExactPoly pe = random_poly4(rng, 5, 3);
        if (pe.is_zero()) continue;
        FloatPoly p = to_float(pe);
        FiberAverage avg = fiber_average_poly(p, f, p.degree(), 100 + static_cast<std::uint64_t>(t));
        CHECK(avg.residual <= 1e-6);
        CHECK(avg.poly.is_pure_w());
        CHECK(avg.poly.degree() <= p.degree());
        // Held-out points.
        for (int k = 0; k < 50; ++k) {
            Fiber fb = solver.solve({cplx(u(rng), u(rng)), cplx(u(rng), u(rng))});
            if (fb.near_discriminant) continue;
            cplx raw = fiber_mean(p, fb);
            cplx fit = evaluate(avg.poly, fb.w[0], fb.w[1], 0.0, 0.0);
            CHECK(std::abs(raw - fit) <= 1e-6 * std::max(1.0, std::abs(raw)));
        }
        // Pure-w input is returned unchanged.
        FloatPoly pw = parse_float("3*w1^2 - (1 + 2*i)*w1*w2 + w2 - 1/2");
        FloatPoly back = fiber_average_poly(pw, f, 2).poly;
        for (const auto& [m, c] : (back - pw).terms()) CHECK(std::abs(c) < 1e-9);
    }
}

TEST_CASE("fiber averaging contracts the sup norm on a graph lift")
{
    std::mt19937_64 rng(5);
    GraphMap f = random_regular_map(rng, 2);
    SampledSet L = graph_lift(f, build_mesh(parse_set_spec("torus:1,1", 8)));
    FloatPoly p = parse_float("z1*z2 + w1*z1 - 2*z2^2 + w2");
    FloatPoly pa = fiber_average_poly(p, f, p.degree()).poly;
    double np = 0.0, na = 0.0;
    for (const auto& q : L.points) {
        np = std::max(np, std::abs(evaluate(p, q)));
        na = std::max(na, std::abs(evaluate(pa, q)));
    }
    CHECK(na <= np + 1e-9);
}
