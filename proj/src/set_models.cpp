#include "capax/set_models.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

namespace capax {

namespace {

double parse_number(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("set spec: not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("set spec: not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double dist(const Point4& a, const Point4& b)
{
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void dedupe(std::vector<Point4>& pts, double tol = 1e-12)
{
    std::vector<Point4> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& q : out)
            if (dist(p, q) <= tol) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    pts.swap(out);
}

std::vector<Point4> read_points(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("set spec: cannot open points file '" + path + "'");
    std::vector<Point4> pts;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = split(line, ',');
        if (first) {
            first = false;
            try {
                parse_number(cols[0]);
            } catch (const std::invalid_argument&) {
                continue;  // header
            }
        }
        if (cols.size() != 4 && cols.size() != 8)
            throw std::invalid_argument("points file: expected 4 or 8 columns in '" + path + "'");
        std::vector<double> v;
        for (const auto& c : cols) v.push_back(parse_number(c));
        Point4 p{cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[0], v[1]), cplx(v[2], v[3])};
        if (v.size() == 8) {
            p[2] = cplx(v[4], v[5]);
            p[3] = cplx(v[6], v[7]);
        }
        pts.push_back(p);
    }
    if (pts.empty()) throw std::invalid_argument("points file '" + path + "' has no points");
    return pts;
}

// Roots of c[0] + c[1] x + ... by companion eigenvalues; leading zeros trimmed.
std::vector<cplx> poly_roots(std::vector<cplx> c)
{
    double mx = 0.0;
    for (const auto& x : c) mx = std::max(mx, std::abs(x));
    while (!c.empty() && std::abs(c.back()) <= 1e-12 * mx) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return r;
}

cplx horner(const std::vector<cplx>& c, cplx x)
{
    cplx r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

FloatPoly derivative(const FloatPoly& p, int slot)
{
    FloatPoly r;
    for (const auto& [m, c] : p.terms()) {
        if (m.e[static_cast<std::size_t>(slot)] == 0) continue;
        Monomial q = m;
        q.e[static_cast<std::size_t>(slot)] -= 1;
        r.add_term(q, c * static_cast<double>(m.e[static_cast<std::size_t>(slot)]));
    }
    return r;
}

}  // namespace

void SetSpec::validate() const
{
    switch (shape) {
    case Shape::Torus:
    case Shape::Polydisc:
        if (!(params[0] > 0.0) || !(params[1] > 0.0)) throw std::invalid_argument("set spec: radii must be positive");
        if (mesh[0] < 4 || mesh[1] < 4) throw std::invalid_argument("set spec: mesh counts must be >= 4");
        break;
    case Shape::Box:
        for (int k = 0; k < 2; ++k) {
            double a = params[static_cast<std::size_t>(2 * k)], b = params[static_cast<std::size_t>(2 * k + 1)];
            if (a > b) throw std::invalid_argument("set spec: box bounds must be ordered");
            // A degenerate interval is sampled by a single point.
            if (a == b ? mesh[static_cast<std::size_t>(k)] < 1 : mesh[static_cast<std::size_t>(k)] < 4)
                throw std::invalid_argument("set spec: mesh counts must be >= 4");
        }
        break;
    case Shape::Points:
        if (path.empty()) throw std::invalid_argument("set spec: points needs a path");
        break;
    }
}

std::string SetSpec::to_string() const
{
    auto num = [](double x) { return format_double(x); };
    switch (shape) {
    case Shape::Torus: return "torus:" + num(params[0]) + "," + num(params[1]);
    case Shape::Polydisc: return "polydisc:" + num(params[0]) + "," + num(params[1]);
    case Shape::Box: return "box:" + num(params[0]) + "," + num(params[1]) + "," + num(params[2]) + "," + num(params[3]);
    case Shape::Points: return "points:" + path;
    }
    return {};
}

SetSpec parse_set_spec(const std::string& text, int mesh)
{
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("set spec: expected <shape>:<args>, got '" + text + "'");
    std::string shape = text.substr(0, colon), args = text.substr(colon + 1);
    SetSpec s;
    s.mesh = {mesh, mesh};
    if (shape == "points") {
        s.shape = SetSpec::Shape::Points;
        s.path = args;
        s.validate();
        return s;
    }
    auto parts = split(args, ',');
    std::vector<double> v;
    for (const auto& p : parts) v.push_back(parse_number(p));
    if (shape == "torus" || shape == "polydisc") {
        if (v.size() != 2) throw std::invalid_argument("set spec: " + shape + " takes two radii");
        s.shape = shape == "torus" ? SetSpec::Shape::Torus : SetSpec::Shape::Polydisc;
        s.params = {v[0], v[1], 0.0, 0.0};
    } else if (shape == "box") {
        if (v.size() != 4) throw std::invalid_argument("set spec: box takes a1,b1,a2,b2");
        s.shape = SetSpec::Shape::Box;
        s.params = {v[0], v[1], v[2], v[3]};
        for (int k = 0; k < 2; ++k)
            if (s.params[static_cast<std::size_t>(2 * k)] == s.params[static_cast<std::size_t>(2 * k + 1)]) s.mesh[static_cast<std::size_t>(k)] = 1;
    } else {
        throw std::invalid_argument("set spec: unknown shape '" + shape + "'");
    }
    s.validate();
    return s;
}

const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::Direct: return "direct";
    case Provenance::GraphLift: return "graph_lift";
    case Provenance::PreimageProjection: return "preimage_projection";
    }
    return "?";
}

std::string SampledSet::mesh_id() const
{
    std::string id = spec.to_string() + "@" + std::to_string(spec.mesh[0]) + "x" + std::to_string(spec.mesh[1]);
    if (provenance != Provenance::Direct) id += std::string("/") + to_string(provenance);
    return id + "#" + std::to_string(points.size());
}

SampledSet build_mesh(const SetSpec& spec)
{
    spec.validate();
    SampledSet K;
    K.spec = spec;
    const double two_pi = 2.0 * std::numbers::pi;
    switch (spec.shape) {
    case SetSpec::Shape::Torus:
    case SetSpec::Shape::Polydisc:
        // Polydiscs are sampled on their distinguished boundary.
        for (int j = 0; j < spec.mesh[0]; ++j)
            for (int k = 0; k < spec.mesh[1]; ++k) {
                cplx a = std::polar(spec.params[0], two_pi * j / spec.mesh[0]);
                cplx b = std::polar(spec.params[1], two_pi * k / spec.mesh[1]);
                K.points.push_back({a, b, a, b});
            }
        break;
    case SetSpec::Shape::Box: {
        auto grid = [&](int k, int j) {
            double a = spec.params[static_cast<std::size_t>(2 * k)], b = spec.params[static_cast<std::size_t>(2 * k + 1)];
            int m = spec.mesh[static_cast<std::size_t>(k)];
            return m == 1 ? a : a + (b - a) * j / (m - 1);
        };
        for (int j = 0; j < spec.mesh[0]; ++j)
            for (int k = 0; k < spec.mesh[1]; ++k) {
                cplx a = grid(0, j), b = grid(1, k);
                K.points.push_back({a, b, a, b});
            }
        break;
    }
    case SetSpec::Shape::Points:
        K.points = read_points(spec.path);
        break;
    }
    dedupe(K.points);
    return K;
}

SampledSet point_set(const std::vector<Point2>& pts)
{
    SampledSet K;
    K.spec.shape = SetSpec::Shape::Points;
    K.spec.path = "<inline>";
    for (const auto& p : pts) K.points.push_back({p[0], p[1], p[0], p[1]});
    dedupe(K.points);
    return K;
}

FiberSolver::FiberSolver(const GraphMap& f) : m_map(f), m_d1(f.d1()), m_d2(f.d2())
{
    const std::array<int, 2> deg{m_d1, m_d2};
    // A rotation that puts both u1^{d_i} coefficients away from zero.
    for (double angle : {0.6154797, 0.3183099, 1.1071487, 0.2449787, 1.3258177}) {
        m_c = std::cos(angle);
        m_s = std::sin(angle);
        FloatPoly Z1 = FloatPoly::var(2) * cplx(m_c) - FloatPoly::var(3) * cplx(m_s);
        FloatPoly Z2 = FloatPoly::var(2) * cplx(m_s) + FloatPoly::var(3) * cplx(m_c);
        bool ok = true;
        for (int i = 0; i < 2; ++i) {
            FloatPoly g = substitute_z(i == 0 ? f.f1f() : f.f2f(), Z1, Z2);
            auto& G = m_g[static_cast<std::size_t>(i)];
            G.assign(static_cast<std::size_t>(deg[static_cast<std::size_t>(i)] + 1),
                     std::vector<cplx>(static_cast<std::size_t>(deg[static_cast<std::size_t>(i)] + 1), 0.0));
            double norm = 0.0;
            for (const auto& [m, c] : g.terms()) {
                G[static_cast<std::size_t>(m.e[2])][static_cast<std::size_t>(m.e[3])] = c;
                norm = std::max(norm, std::abs(c));
            }
            if (std::abs(G[static_cast<std::size_t>(deg[static_cast<std::size_t>(i)])][0]) <= 1e-6 * norm) ok = false;
        }
        if (ok) break;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m_jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = derivative(i == 0 ? f.f1f() : f.f2f(), 2 + j);
}

Fiber FiberSolver::solve(const Point2& w) const
{
    Fiber F;
    F.w = w;
    F.scale = std::max({1.0, std::abs(w[0]), std::abs(w[1])});
    const int d1 = m_d1, d2 = m_d2, n = d1 + d2;

    // Coefficients in u1 of g_i(u1, u2) - w_i.
    auto univariate = [&](int i, cplx u2) {
        const auto& G = m_g[static_cast<std::size_t>(i)];
        std::vector<cplx> P(G.size(), 0.0);
        for (std::size_t a = 0; a < G.size(); ++a) P[a] = horner(G[a], u2);
        P[0] -= w[static_cast<std::size_t>(i)];
        return P;
    };

    // Eliminant Res_{u1}(g1 - w1, g2 - w2)(u2) by interpolation on a circle.
    const int N = d1 * d2 + 1;
    const double rho = std::max(1.0, std::pow(F.scale, 1.0 / std::min(d1, d2)));
    std::vector<cplx> vals(static_cast<std::size_t>(N));
    double bound = 0.0, vmax = 0.0;
    for (int j = 0; j < N; ++j) {
        cplx u2 = std::polar(rho, 2.0 * std::numbers::pi * j / N);
        auto P = univariate(0, u2), Q = univariate(1, u2);
        Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
        for (int r = 0; r < d2; ++r)
            for (int a = 0; a <= d1; ++a) S(r, r + a) = P[static_cast<std::size_t>(d1 - a)];
        for (int r = 0; r < d1; ++r)
            for (int a = 0; a <= d2; ++a) S(d2 + r, r + a) = Q[static_cast<std::size_t>(d2 - a)];
        vals[static_cast<std::size_t>(j)] = S.partialPivLu().determinant();
        double hb = 1.0;
        for (int r = 0; r < n; ++r) hb *= S.row(r).norm();
        bound = std::max(bound, hb);
        vmax = std::max(vmax, std::abs(vals[static_cast<std::size_t>(j)]));
    }
    if (vmax <= 1e-12 * bound) throw DegenerateFiber("fiber: eliminant vanishes identically (positive-dimensional fiber)");
    std::vector<cplx> coef(static_cast<std::size_t>(N), 0.0);
    for (int k = 0; k < N; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < N; ++j) s += vals[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / N);
        coef[static_cast<std::size_t>(k)] = s / (static_cast<double>(N) * std::pow(rho, k));
    }
    std::vector<cplx> u2roots = poly_roots(coef);

    // Back-substitution: clusters of nearby u2 roots take distinct u1 candidates.
    std::vector<int> cluster(u2roots.size(), -1);
    int nclusters = 0;
    for (std::size_t a = 0; a < u2roots.size(); ++a) {
        if (cluster[a] >= 0) continue;
        cluster[a] = nclusters;
        for (std::size_t b = a + 1; b < u2roots.size(); ++b)
            if (cluster[b] < 0 && std::abs(u2roots[a] - u2roots[b]) < 1e-5 * std::max(1.0, std::abs(u2roots[a]))) cluster[b] = nclusters;
        ++nclusters;
    }
    std::vector<Point2> starts;
    for (int c = 0; c < nclusters; ++c) {
        std::vector<cplx> members;
        for (std::size_t a = 0; a < u2roots.size(); ++a)
            if (cluster[a] == c) members.push_back(u2roots[a]);
        cplx u2 = 0.0;
        for (const auto& m : members) u2 += m;
        u2 /= static_cast<double>(members.size());
        auto P = univariate(0, u2), Q = univariate(1, u2);
        std::vector<cplx> cand = poly_roots(P);
        if (cand.empty()) cand = poly_roots(Q);
        if (cand.empty()) continue;
        std::sort(cand.begin(), cand.end(), [&](cplx x, cplx y) { return std::abs(horner(Q, x)) < std::abs(horner(Q, y)); });
        for (std::size_t i = 0; i < members.size(); ++i) {
            cplx u1 = cand[i % cand.size()];
            starts.push_back({m_c * u1 - m_s * members[i], m_s * u1 + m_c * members[i]});
        }
    }

    // Newton polish in the original coordinates.
    const double tol = 1e-9 * F.scale;
    for (auto z : starts) {
        auto resid = [&](const Point2& p) {
            auto v = m_map(p[0], p[1]);
            return Point2{v[0] - w[0], v[1] - w[1]};
        };
        Point2 r = resid(z);
        double best = std::max(std::abs(r[0]), std::abs(r[1]));
        Point2 zbest = z;
        for (int it = 0; it < 60 && best > 1e-15 * F.scale; ++it) {
            cplx J[2][2];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    J[i][j] = evaluate(m_jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 0.0, 0.0, z[0], z[1]);
            cplx det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
            if (std::abs(det) == 0.0) break;
            Point2 step{(J[1][1] * r[0] - J[0][1] * r[1]) / det, (J[0][0] * r[1] - J[1][0] * r[0]) / det};
            z = {z[0] - step[0], z[1] - step[1]};
            r = resid(z);
            double res = std::max(std::abs(r[0]), std::abs(r[1]));
            if (!std::isfinite(res)) break;
            if (res < best) {
                best = res;
                zbest = z;
            } else if (it > 8) {
                break;
            }
        }
        if (best <= tol) {
            F.roots.push_back(zbest);
            F.residual = std::max(F.residual, best);
        } else {
            ++F.dropped;
            std::cerr << "warning: fiber over (" << w[0] << ", " << w[1] << "): Newton did not converge, root dropped\n";
        }
    }

    F.multiple.assign(F.roots.size(), false);
    for (std::size_t a = 0; a < F.roots.size(); ++a)
        for (std::size_t b = a + 1; b < F.roots.size(); ++b)
            if (std::max(std::abs(F.roots[a][0] - F.roots[b][0]), std::abs(F.roots[a][1] - F.roots[b][1])) < 1e-6) {
                F.multiple[a] = F.multiple[b] = true;
                F.near_discriminant = true;
            }
    return F;
}

Fiber fiber(const GraphMap& f, const Point2& w) { return FiberSolver(f).solve(w); }

SampledSet graph_lift(const GraphMap& f, const SampledSet& K, int threads)
{
    if (K.provenance != Provenance::Direct) throw std::invalid_argument("graph_lift: K must be a direct sample");
    FiberSolver solver(f);
    std::vector<Fiber> fibers(K.size());
    std::vector<std::exception_ptr> errors(K.size());
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < K.size(); i += step) {
            try {
                fibers[i] = solver.solve({K.points[i][0], K.points[i][1]});
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t nt = static_cast<std::size_t>(std::max(1, threads));
    if (nt == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(work, t, nt);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    SampledSet L;
    L.provenance = Provenance::GraphLift;
    L.spec = K.spec;
    L.map = f;
    for (std::size_t i = 0; i < K.size(); ++i)
        for (const auto& z : fibers[i].roots) L.points.push_back({K.points[i][0], K.points[i][1], z[0], z[1]});
    dedupe(L.points);
    return L;
}

SampledSet preimage_projection(const SampledSet& L)
{
    if (!L.on_graph()) throw std::invalid_argument("preimage_projection: input must be a graph lift");
    SampledSet P;
    P.provenance = Provenance::PreimageProjection;
    P.spec = L.spec;
    P.map = L.map;
    for (const auto& p : L.points) P.points.push_back({p[2], p[3], p[2], p[3]});
    dedupe(P.points);
    return P;
}

SampledSet w_projection(const SampledSet& L)
{
    SampledSet P;
    P.spec = L.spec;
    for (const auto& p : L.points) P.points.push_back({p[0], p[1], p[0], p[1]});
    dedupe(P.points);
    return P;
}

cplx fiber_mean(const FloatPoly& p, const Fiber& F)
{
    if (F.roots.empty()) throw DegenerateFiber("fiber_mean: empty fiber");
    cplx s = 0.0;
    for (const auto& z : F.roots) s += evaluate(p, F.w[0], F.w[1], z[0], z[1]);
    return s / static_cast<double>(F.roots.size());
}

FiberAverage fiber_average_poly(const FloatPoly& p, const GraphMap& f, int deg_bound, std::uint64_t seed)
{
    if (f.regular() != Tristate::Yes) throw std::domain_error("fiber_average_poly: map is not regular");
    if (deg_bound < 0) throw std::invalid_argument("fiber_average_poly: negative degree bound");
    std::vector<Monomial> basis;
    for (int e = 0; e <= deg_bound; ++e)
        for (int a = e; a >= 0; --a) basis.push_back(Monomial::w(a, e - a));
    const int dim = static_cast<int>(basis.size());
    const int M = 2 * dim + 4;
    const std::size_t expected = static_cast<std::size_t>(f.d1() * f.d2());

    FiberSolver solver(f);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rad(0.5, 1.5), ang(0.0, 2.0 * std::numbers::pi);
    FiberAverage out;
    Eigen::MatrixXcd A(M, dim);
    Eigen::VectorXcd q(M);
    for (int i = 0; i < M; ++i) {
        Fiber F;
        for (int attempt = 0;; ++attempt) {
            Point2 w{std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng))};
            F = solver.solve(w);
            if (!F.near_discriminant && F.dropped == 0 && F.roots.size() == expected) break;
            if (attempt == 5) throw DegenerateFiber("fiber_average_poly: grid point stays near the branch locus");
            ++out.resamples;
        }
        for (int j = 0; j < dim; ++j) A(i, j) = evaluate(FloatPoly::monomial(basis[static_cast<std::size_t>(j)]), F.w[0], F.w[1], 0.0, 0.0);
        q(i) = fiber_mean(p, F);
    }
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(q);
    const double qscale = std::max(1.0, q.cwiseAbs().maxCoeff());
    out.residual = (A * c - q).cwiseAbs().maxCoeff() / qscale;
    out.samples = M;
    const double cmax = std::max(1.0, c.cwiseAbs().maxCoeff());
    for (int j = 0; j < dim; ++j)
        if (std::abs(c(j)) > 1e-10 * cmax) out.poly.add_term(basis[static_cast<std::size_t>(j)], c(j));
    return out;
}

}  // namespace capax
