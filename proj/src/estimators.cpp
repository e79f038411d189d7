#include "capax/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "capax/resultant.hpp"

namespace capax {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr double kLogFloor = -690.0;  // log(1e-300)

// argmin_c sum_i w_i |b_i + (E c)_i|^2 by normal equations.
VectorXcd weighted_ls(const MatrixXcd& E, const VectorXcd& b, const VectorXd& w)
{
    MatrixXcd Ew = E.array().colwise() * w.cast<cplx>().array();
    MatrixXcd G = E.adjoint() * Ew;
    VectorXcd rhs = -(Ew.adjoint() * b);
    Eigen::LDLT<MatrixXcd> ldlt(G);
    VectorXcd c = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success || !c.allFinite()) c = G.completeOrthogonalDecomposition().solve(rhs);
    return c;
}

double weighted_value(const MatrixXcd& E, const VectorXcd& b, const VectorXd& w, const VectorXcd& c)
{
    return std::sqrt(std::max(0.0, (w.array() * (b + E * c).cwiseAbs2().array()).sum()));
}

struct SocpResult {
    VectorXcd c;
    double t = 0.0;
    VectorXd omega;  // normalized 1 / s_i
};

// Barrier method for min t s.t. |b_i + (E c)_i| <= t, warm-started at c.
SocpResult socp_minimax(const MatrixXcd& E, const VectorXcd& b, VectorXcd c, double eps)
{
    const Index m = E.rows(), r = E.cols(), nv = 2 * r + 1;
    VectorXcd res = b + E * c;
    double t = 1.05 * res.cwiseAbs().maxCoeff() + 1e-12 * b.cwiseAbs().maxCoeff();
    double tau = 2.0 * static_cast<double>(m) / (0.1 * t);

    auto slack = [&](const VectorXcd& cc, double tt, VectorXd& s, VectorXcd& rr) {
        rr = b + E * cc;
        s = tt * tt - rr.cwiseAbs2().array();
        return tt > 0.0 && s.minCoeff() > 0.0;
    };
    auto barrier = [&](double tt, const VectorXd& s) { return tau * tt - s.array().log().sum(); };

    VectorXd s;
    slack(c, t, s, res);
    for (int outer = 0; outer < 40; ++outer) {
        for (int it = 0; it < 40; ++it) {
            VectorXd D = s.cwiseInverse();
            VectorXcd Gc = 2.0 * (E.adjoint() * (D.cast<cplx>().array() * res.array()).matrix());
            VectorXd g(nv);
            g.head(r) = Gc.real();
            g.segment(r, r) = Gc.imag();
            g(2 * r) = tau - 2.0 * t * D.sum();

            MatrixXd H = MatrixXd::Zero(nv, nv);
            MatrixXcd ED = E.array().colwise() * D.cast<cplx>().array();
            MatrixXcd P = 2.0 * (E.adjoint() * ED);
            H.topLeftCorner(r, r) = P.real();
            H.block(0, r, r, r) = -P.imag();
            H.block(r, 0, r, r) = P.imag();
            H.block(r, r, r, r) = P.real();
            H(2 * r, 2 * r) = -2.0 * D.sum();
            // Rows D_i q_i with q_i = (-grad |r_i|^2, 2 t).
            MatrixXcd gr = E.adjoint() * (res.array() * D.cast<cplx>().array()).matrix().asDiagonal();
            MatrixXd Q(m, nv);
            Q.leftCols(r) = -2.0 * gr.real().transpose();
            Q.middleCols(r, r) = -2.0 * gr.imag().transpose();
            Q.col(2 * r) = 2.0 * t * D;
            H.noalias() += Q.transpose() * Q;

            Eigen::LDLT<MatrixXd> ldlt(H);
            VectorXd step = -ldlt.solve(g);
            if (ldlt.info() != Eigen::Success || !step.allFinite()) break;
            double dec = -g.dot(step);
            if (dec < 1e-9) break;
            VectorXcd dc(r);
            dc.real() = step.head(r);
            dc.imag() = step.segment(r, r);
            const double f0 = barrier(t, s);
            double alpha = 1.0;
            VectorXd s1;
            VectorXcd r1;
            bool moved = false;
            for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
                VectorXcd c1 = c + alpha * dc;
                double t1 = t + alpha * step(2 * r);
                if (!slack(c1, t1, s1, r1)) continue;
                if (barrier(t1, s1) <= f0 - 0.25 * alpha * dec) {
                    c = c1;
                    t = t1;
                    s = s1;
                    res = r1;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
        if (2.0 * static_cast<double>(m) / tau <= eps * t) break;
        tau *= 10.0;
    }
    SocpResult out;
    out.c = c;
    out.t = t;
    out.omega = s.cwiseInverse();
    out.omega /= out.omega.sum();
    return out;
}

}  // namespace

Direction::Direction(double t_) : t(t_)
{
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("Direction: t must lie in (0, 1)");
}

Exp2 direction_index(const Direction& dir, int s)
{
    if (s < 0) throw std::invalid_argument("direction_index: negative degree");
    int a1 = static_cast<int>(std::floor(s * dir.t + 0.5));
    a1 = std::clamp(a1, 0, s);
    return {a1, s - a1};
}

MonomialBasisStream make_stream(BasisKind kind, const Variety* V, int s)
{
    if (kind == BasisKind::Z || kind == BasisKind::W) return MonomialBasisStream(kind, s);
    if (!V) throw std::invalid_argument("make_stream: basis B and C need the variety");
    return MonomialBasisStream(kind, *V, V->map().d() * s);
}

BasisEvaluation::BasisEvaluation(const SampledSet& K, const MonomialBasisStream& basis)
    : m_kind(basis.kind()), m_mons(basis.up_to(basis.n_max()))
{
    if ((m_kind == BasisKind::B || m_kind == BasisKind::C) && !K.on_graph())
        throw std::invalid_argument("basis " + std::string(to_string(m_kind)) + " needs a graph-lift sample");
    fill(K);
}

BasisEvaluation::BasisEvaluation(const SampledSet& K, std::vector<Monomial> monomials) : m_mons(std::move(monomials))
{
    bool z = false, w = false;
    for (const auto& m : m_mons) {
        z = z || m.beta_deg() > 0;
        w = w || m.alpha_deg() > 0;
    }
    m_kind = w && z ? BasisKind::B : (w ? BasisKind::W : BasisKind::Z);
    fill(K);
}

void BasisEvaluation::fill(const SampledSet& K)
{
    m_mesh_id = K.mesh_id();
    const Index N = static_cast<Index>(K.size()), M = static_cast<Index>(m_mons.size());
    int emax = 0;
    for (const auto& m : m_mons)
        for (int x : m.e) emax = std::max(emax, x);
    m_E.resize(N, M);
    std::vector<std::array<cplx, 4>> pw(static_cast<std::size_t>(emax + 1));
    for (Index i = 0; i < N; ++i) {
        const Point4& p = K.points[static_cast<std::size_t>(i)];
        pw[0] = {1.0, 1.0, 1.0, 1.0};
        for (int k = 1; k <= emax; ++k)
            for (int v = 0; v < 4; ++v) pw[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] = pw[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)] * p[static_cast<std::size_t>(v)];
        for (Index j = 0; j < M; ++j) {
            const auto& e = m_mons[static_cast<std::size_t>(j)].e;
            m_E(i, j) = pw[static_cast<std::size_t>(e[0])][0] * pw[static_cast<std::size_t>(e[1])][1] * pw[static_cast<std::size_t>(e[2])][2] * pw[static_cast<std::size_t>(e[3])][3];
        }
    }
}

Index BasisEvaluation::index_of(const Monomial& m) const
{
    auto it = std::find(m_mons.begin(), m_mons.end(), m);
    if (it == m_mons.end()) throw std::invalid_argument("monomial " + to_string(m) + " is not in the basis stream");
    return static_cast<Index>(it - m_mons.begin());
}

MinimaxResult complex_minimax(const MatrixXcd& E0, const VectorXcd& b, const ChebyshevOptions& opt)
{
    MinimaxResult out;
    const Index N = b.size();
    out.coef = VectorXcd::Zero(E0.cols());
    const double bmax = N ? b.cwiseAbs().maxCoeff() : 0.0;
    if (E0.cols() == 0 || N == 0 || bmax == 0.0) {
        out.value = out.lower = bmax;
        out.converged = true;
        return out;
    }

    // Column scaling, then drop columns that are dependent on this sample.
    VectorXd scale = E0.cwiseAbs().colwise().maxCoeff().transpose();
    std::vector<Index> nonzero;
    for (Index j = 0; j < E0.cols(); ++j)
        if (scale(j) > 0.0) nonzero.push_back(j);
    MatrixXcd Es(N, static_cast<Index>(nonzero.size()));
    for (Index j = 0; j < Es.cols(); ++j) Es.col(j) = E0.col(nonzero[static_cast<std::size_t>(j)]) / scale(nonzero[static_cast<std::size_t>(j)]);
    std::vector<Index> keep;
    if (Es.cols() > 0) {
        Eigen::ColPivHouseholderQR<MatrixXcd> qr(Es);
        qr.setThreshold(1e-10);
        for (Index j = 0; j < qr.rank(); ++j) keep.push_back(qr.colsPermutation().indices()(j));
        std::sort(keep.begin(), keep.end());
    }
    const Index r = static_cast<Index>(keep.size());
    MatrixXcd Ek(N, r);
    for (Index j = 0; j < r; ++j) Ek.col(j) = Es.col(keep[static_cast<std::size_t>(j)]);
    // Work in an orthonormal basis of the same span: E = Ek R^{-1}.
    Eigen::HouseholderQR<MatrixXcd> hqr(Ek);
    MatrixXcd E = hqr.householderQ() * MatrixXcd::Identity(N, r);
    MatrixXcd Rk = hqr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    auto expand = [&](const VectorXcd& c) {
        VectorXcd ck = Rk.triangularView<Eigen::Upper>().solve(c);
        VectorXcd full = VectorXcd::Zero(E0.cols());
        for (Index j = 0; j < r; ++j) {
            Index col = nonzero[static_cast<std::size_t>(keep[static_cast<std::size_t>(j)])];
            full(col) = ck(j) / scale(col);
        }
        return full;
    };
    if (r == 0) {
        out.value = out.lower = bmax;
        out.converged = true;
        return out;
    }

    VectorXcd best = VectorXcd::Zero(r);
    double U = bmax, L = 0.0;
    auto consider = [&](const VectorXcd& c) {
        double u = (b + E * c).cwiseAbs().maxCoeff();
        if (u < U) {
            U = u;
            best = c;
        }
    };
    auto done = [&] { return U <= 1e-13 * bmax || U - L <= opt.tol * U; };

    // Lawson: w <- w |r|; each weighted least-squares value is a lower bound.
    VectorXd w = VectorXd::Constant(N, 1.0 / static_cast<double>(N));
    const int lawson_cap = opt.exchange ? std::min(opt.lawson_warm, opt.max_iter) : opt.max_iter;
    int it = 0;
    for (; it < lawson_cap; ++it) {
        VectorXcd c = weighted_ls(E, b, w);
        VectorXd a = (b + E * c).cwiseAbs();
        L = std::max(L, std::sqrt((w.array() * a.array().square()).sum()));
        consider(c);
        if (done()) break;
        w = w.cwiseProduct(a);
        double sw = w.sum();
        if (!(sw > 0.0)) break;
        w /= sw;
    }
    out.iterations = it + 1;

    if (opt.exchange && !done()) {
        // Active set: a unisolvent subset plus the largest residuals and weights.
        std::vector<char> in(static_cast<std::size_t>(N), 0);
        std::vector<Index> S;
        auto add = [&](Index i) {
            if (!in[static_cast<std::size_t>(i)]) {
                in[static_cast<std::size_t>(i)] = 1;
                S.push_back(i);
            }
        };
        {
            Eigen::ColPivHouseholderQR<MatrixXcd> qr(E.adjoint());
            for (Index j = 0; j < r; ++j) add(qr.colsPermutation().indices()(j));
        }
        VectorXd a = (b + E * best).cwiseAbs();
        std::vector<Index> order(static_cast<std::size_t>(N));
        std::iota(order.begin(), order.end(), Index(0));
        const Index extra = std::min<Index>(N, r + 8);
        std::partial_sort(order.begin(), order.begin() + extra, order.end(), [&](Index x, Index y) { return a(x) > a(y); });
        for (Index k = 0; k < extra; ++k) add(order[static_cast<std::size_t>(k)]);
        std::partial_sort(order.begin(), order.begin() + extra, order.end(), [&](Index x, Index y) { return w(x) > w(y); });
        for (Index k = 0; k < extra; ++k) add(order[static_cast<std::size_t>(k)]);

        VectorXcd c = best;
        // Loose subproblem solves while the active set grows, then a precise one.
        bool precise = false;
        for (int round = 0; round < 60 && !done(); ++round) {
            const Index m = static_cast<Index>(S.size());
            MatrixXcd ES(m, r);
            VectorXcd bS(m);
            for (Index k = 0; k < m; ++k) {
                ES.row(k) = E.row(S[static_cast<std::size_t>(k)]);
                bS(k) = b(S[static_cast<std::size_t>(k)]);
            }
            SocpResult sr = socp_minimax(ES, bS, c, precise ? 1e-2 * opt.tol : 1e-4);
            ++out.iterations;
            VectorXcd cls = weighted_ls(ES, bS, sr.omega);
            L = std::max(L, weighted_value(ES, bS, sr.omega, cls));
            consider(sr.c);
            consider(cls);
            if (done()) break;
            VectorXd all = (b + E * sr.c).cwiseAbs();
            std::vector<Index> viol;
            for (Index i = 0; i < N; ++i)
                if (!in[static_cast<std::size_t>(i)] && all(i) > sr.t * (1.0 + 0.25 * opt.tol)) viol.push_back(i);
            c = sr.c;
            if (viol.empty()) {
                if (precise) break;
                precise = true;
                continue;
            }
            const std::size_t take = std::min(viol.size(), static_cast<std::size_t>(std::max<Index>({8, r / 2, m / 2})));
            std::partial_sort(viol.begin(), viol.begin() + static_cast<std::ptrdiff_t>(take), viol.end(),
                              [&](Index x, Index y) { return all(x) > all(y); });
            for (std::size_t k = 0; k < take; ++k) add(viol[k]);
        }
    }

    if (U <= 1e-13 * bmax) {
        // Target lies in the span of the lower monomials on this sample.
        U = 0.0;
        L = 0.0;
    }
    out.value = U;
    out.lower = std::min(L, U);
    out.coef = expand(best);
    out.converged = U == 0.0 || U - out.lower <= opt.tol * U;
    return out;
}

const char* to_string(EstimateKind k)
{
    switch (k) {
    case EstimateKind::Y: return "Y";
    case EstimateKind::Z: return "Z";
    case EstimateKind::YBeta: return "Y_beta";
    }
    return "?";
}

ChebyshevEstimate chebyshev_value(const BasisEvaluation& ev, const Monomial& target, const ChebyshevOptions& opt)
{
    const Index idx = ev.index_of(target);
    MinimaxResult mm = complex_minimax(ev.matrix().leftCols(idx), ev.matrix().col(idx), opt);
    ChebyshevEstimate est;
    est.target = target;
    if (ev.kind() == BasisKind::W)
        est.kind = EstimateKind::Z;
    else if ((ev.kind() == BasisKind::B || ev.kind() == BasisKind::C) && target.beta_deg() > 0)
        est.kind = EstimateKind::YBeta;
    else
        est.kind = EstimateKind::Y;
    est.value = mm.value;
    est.lower = mm.lower;
    est.residual = mm.value > 0.0 ? (mm.value - mm.lower) / mm.value : 0.0;
    est.iterations = mm.iterations;
    est.warning = !mm.converged;
    est.mesh_id = ev.mesh_id();
    return est;
}

ChebyshevEstimate chebyshev_value(const SampledSet& K, const MonomialBasisStream& basis, const Monomial& target,
                                  const ChebyshevOptions& opt)
{
    return chebyshev_value(BasisEvaluation(K, basis), target, opt);
}

Monomial directional_target(BasisKind kind, const Exp2& alpha)
{
    return kind == BasisKind::Z ? Monomial::z(alpha[0], alpha[1]) : Monomial::w(alpha[0], alpha[1]);
}

double chebyshev_transform(const BasisEvaluation& ev, const Direction& dir, int s, const ChebyshevOptions& opt)
{
    if (s < 1) throw std::invalid_argument("chebyshev_transform: degree must be positive");
    Monomial target = directional_target(ev.kind(), direction_index(dir, s));
    return std::pow(chebyshev_value(ev, target, opt).value, 1.0 / s);
}

ZaharjutaResult zaharjuta_integral(const BasisEvaluation& ev, int s, int grid, const ChebyshevOptions& opt)
{
    if (grid < 4) throw std::invalid_argument("zaharjuta_integral: grid must be >= 4");
    if (s < 1) throw std::invalid_argument("zaharjuta_integral: degree must be positive");
    ZaharjutaResult out;
    std::map<Exp2, double> cache;
    const double hstep = 1.0 / (grid + 1);
    double integral = 0.0;
    bool any = false;
    for (int k = 1; k <= grid; ++k) {
        Direction dir(k * hstep);
        Exp2 a = direction_index(dir, s);
        auto it = cache.find(a);
        if (it == cache.end()) it = cache.emplace(a, chebyshev_value(ev, directional_target(ev.kind(), a), opt).value).first;
        double T = std::pow(it->second, 1.0 / s);
        double lg = T > 0.0 ? std::log(T) : kLogFloor;
        if (lg <= kLogFloor) {
            lg = kLogFloor;
            ++out.clamped;
        } else {
            any = true;
        }
        out.t.push_back(dir.t);
        out.T.push_back(T);
        integral += (k == 1 || k == grid ? 1.5 : 1.0) * hstep * lg;
    }
    out.degenerate = !any;
    out.value = any ? std::exp(integral) : 0.0;
    return out;
}

double VandermondeLedger::log_van(std::size_t n) const
{
    if (n == 0) return 0.0;
    if (n > logdet.size()) return -std::numeric_limits<double>::infinity();
    return logdet[n - 1];
}

VandermondeLedger greedy_fekete(const BasisEvaluation& ev, std::size_t n)
{
    const MatrixXcd& E = ev.matrix();
    if (n > static_cast<std::size_t>(E.cols())) throw std::invalid_argument("greedy_fekete: basis has fewer than n monomials");
    VandermondeLedger led;
    led.kind = ev.kind();
    led.monomials.assign(ev.monomials().begin(), ev.monomials().begin() + static_cast<std::ptrdiff_t>(n));
    const Index N = E.rows();
    MatrixXcd R = E.leftCols(static_cast<Index>(n));
    std::vector<char> used(static_cast<std::size_t>(N), 0);
    double total = 0.0;
    for (Index j = 0; j < static_cast<Index>(n); ++j) {
        const double colscale = N ? E.col(j).cwiseAbs().maxCoeff() : 0.0;
        Index piv = -1;
        double best = -1.0;
        for (Index i = 0; i < N; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            double a = std::abs(R(i, j));
            if (a > best) {
                best = a;
                piv = i;
            }
        }
        if (piv < 0 || best <= 1e-13 * colscale) {
            led.truncated = true;
            break;
        }
        used[static_cast<std::size_t>(piv)] = 1;
        const cplx p = R(piv, j);
        for (Index l = j + 1; l < static_cast<Index>(n); ++l) {
            const cplx f = R(piv, l) / p;
            if (f != cplx(0.0)) R.col(l) -= f * R.col(j);
        }
        led.points.push_back(static_cast<std::size_t>(piv));
        led.step_log.push_back(std::log(best));
        total += std::log(best);
        led.logdet.push_back(total);
    }
    return led;
}

VandermondeLedger greedy_fekete(const SampledSet& K, const std::vector<Monomial>& monomials, std::size_t n)
{
    return greedy_fekete(BasisEvaluation(K, monomials), n);
}

TdiamResult transfinite_diameter(const SampledSet& K, const MonomialBasisStream& basis, int n_max)
{
    if (n_max < 1) throw std::invalid_argument("transfinite_diameter: n_max must be >= 1");
    const bool graded = basis.kind() == BasisKind::Z || basis.kind() == BasisKind::W;
    auto counts = [&](int n) { return graded ? graded_counts(n) : filtration_counts(basis.d(), n); };
    const long long m_top = counts(n_max).m;
    BasisEvaluation ev(K, basis);
    if (static_cast<long long>(ev.monomials().size()) < m_top)
        throw std::invalid_argument("transfinite_diameter: basis stream too short for n_max");
    TdiamResult out;
    out.ledger = greedy_fekete(ev, static_cast<std::size_t>(m_top));
    for (int n = 1; n <= n_max; ++n) {
        FiltrationCounts c = counts(n);
        TdiamRow row;
        row.n = n;
        row.m = c.m;
        row.l = c.l;
        row.log_van = out.ledger.log_van(static_cast<std::size_t>(c.m));
        row.estimate = std::isfinite(row.log_van) ? std::exp(row.log_van / static_cast<double>(c.l)) : 0.0;
        out.rows.push_back(row);
    }
    return out;
}

bool TelescopeReport::all_ok() const
{
    return std::all_of(steps.begin(), steps.end(), [](const TelescopeStep& s) { return s.lower_ok && s.upper_ok; });
}

TelescopeReport telescoping_check(const VandermondeLedger& ledger, const BasisEvaluation& ev, const ChebyshevOptions& opt)
{
    constexpr double slack = 1e-6;
    TelescopeReport rep;
    const std::size_t last = ledger.truncated ? ledger.size() + 1 : ledger.size();
    for (std::size_t n = 2; n <= last && n <= ev.monomials().size(); ++n) {
        TelescopeStep st;
        st.n = static_cast<int>(n);
        st.monomial = ev.monomials()[n - 1];
        ChebyshevEstimate y = chebyshev_value(ev, st.monomial, opt);
        st.y_value = y.value;
        st.y_lower = y.lower;
        if (n <= ledger.size()) {
            st.ratio = std::exp(ledger.step_log[n - 1]);
            st.lower_ok = y.value <= st.ratio * (1.0 + slack);
            st.upper_ok = st.ratio <= static_cast<double>(n) * y.lower * (1.0 + slack);
        } else {
            // Zero determinant: the bound forces Y = 0.
            const double colscale = ev.matrix().col(static_cast<Index>(n - 1)).cwiseAbs().maxCoeff();
            st.ratio = 0.0;
            st.lower_ok = y.value <= 1e-9 * std::max(colscale, 1e-300);
            st.upper_ok = true;
        }
        rep.steps.push_back(st);
    }
    return rep;
}

PullbackReport pullback_check(const GraphMap& f, const SetSpec& K_spec, const PullbackOptions& opt)
{
    if (!f.equal_degrees()) throw std::domain_error("pullback_check: components must have equal degree");
    if (f.regular() != Tristate::Yes) throw std::domain_error("pullback_check: map is not regular");
    if (opt.n_max < 1) throw std::invalid_argument("pullback_check: n_max must be >= 1");
    PullbackReport rep;
    rep.d = f.d();
    rep.n_max = opt.n_max;
    rep.mesh = opt.mesh;
    rep.grid = opt.grid;

    SetSpec spec = K_spec;
    if (spec.shape != SetSpec::Shape::Points) {
        for (int k = 0; k < 2; ++k)
            if (spec.mesh[static_cast<std::size_t>(k)] != 1) spec.mesh[static_cast<std::size_t>(k)] = opt.mesh;
    }
    SampledSet K = build_mesh(spec);
    SampledSet L = graph_lift(f, K, opt.threads);
    SampledSet Lz = preimage_projection(L);
    rep.lift_points = L.size();

    const int s = opt.n_max;
    MonomialBasisStream Zs = make_stream(BasisKind::Z, nullptr, s), Ws = make_stream(BasisKind::W, nullptr, s);
    BasisEvaluation evz(Lz, Zs), evw(L, Ws);
    rep.lhs = zaharjuta_integral(evz, s, opt.grid, opt.cheb).value;
    rep.d3 = zaharjuta_integral(evw, s, opt.grid, opt.cheb).value;

    double log_res;
    if (f.is_exact()) {
        GaussRational res = resultant(f.fhat1(), f.fhat2());
        log_res = 0.5 * std::log(res.norm().get_d());
    } else {
        log_res = resultant_logdet(f.fhat1f(), f.fhat2f()).log_abs;
    }
    rep.abs_res = std::exp(log_res);
    const double d = rep.d;
    rep.rhs = std::exp(-log_res / (2.0 * d * d)) * std::pow(rep.d3, 1.0 / d);
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : std::numeric_limits<double>::quiet_NaN();

    rep.van_lhs = transfinite_diameter(Lz, Zs, s).rows.back().estimate;
    rep.van_d3 = transfinite_diameter(L, Ws, s).rows.back().estimate;

    if (opt.cross_check && f.is_exact()) {
        Variety V(f);
        MonomialBasisStream Bs = make_stream(BasisKind::B, &V, s);
        BasisEvaluation evb(L, Bs);
        rep.d2_cross = zaharjuta_integral(evb, s, opt.grid, opt.cheb).value;
        rep.van_d2 = transfinite_diameter(L, Bs, s).rows.back().estimate;
    }
    return rep;
}

}  // namespace capax
