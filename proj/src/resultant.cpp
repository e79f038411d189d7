#include "capax/resultant.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace capax {

namespace {

template <class Scalar>
std::vector<Scalar> coefficients_impl(const Polynomial<Scalar>& h, int d)
{
    if (!h.is_pure_z()) throw std::invalid_argument("binary form contains a w-variable");
    if (h.is_zero() || !h.is_homogeneous()) throw std::invalid_argument("non-homogeneous binary form");
    if (h.degree() != d) throw std::invalid_argument("binary form degree mismatch");
    std::vector<Scalar> c(static_cast<std::size_t>(d + 1), Scalar(0));
    for (int j = d; j >= 0; --j) c[static_cast<std::size_t>(d - j)] = h.coeff(Monomial::z(j, d - j));
    return c;
}

template <class Scalar>
int common_degree(const Polynomial<Scalar>& h1, const Polynomial<Scalar>& h2)
{
    int d = h1.degree();
    if (d < 1) throw std::invalid_argument("binary form of degree < 1");
    if (h2.degree() != d) throw std::invalid_argument("binary form degree mismatch");
    return d;
}

template <class Matrix, class Scalar>
Matrix sylvester_impl(const Polynomial<Scalar>& h1, const Polynomial<Scalar>& h2)
{
    int d = common_degree(h1, h2);
    auto a = coefficients_impl(h1, d), b = coefficients_impl(h2, d);
    Matrix S(2 * d, 2 * d);
    S.setConstant(Scalar(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= d; ++j) {
            S(i, i + j) = a[static_cast<std::size_t>(j)];
            S(d + i, i + j) = b[static_cast<std::size_t>(j)];
        }
    return S;
}

// Roots of c_0 t^d + ... + c_d (highest first) via companion eigenvalues.
std::vector<cplx> poly_roots_desc(const std::vector<cplx>& c)
{
    int n = static_cast<int>(c.size()) - 1;
    std::vector<cplx> roots;
    if (n < 1) return roots;
    if (c[0] == cplx(0)) throw std::domain_error("leading coefficient zero");
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) C(0, j) = -c[static_cast<std::size_t>(j + 1)] / c[0];
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

}  // namespace

std::vector<GaussRational> form_coefficients(const ExactPoly& h, int d) { return coefficients_impl(h, d); }
std::vector<cplx> form_coefficients(const FloatPoly& h, int d) { return coefficients_impl(h, d); }

ExactMatrix sylvester_matrix(const ExactPoly& h1, const ExactPoly& h2) { return sylvester_impl<ExactMatrix>(h1, h2); }
ComplexMatrix sylvester_matrix(const FloatPoly& h1, const FloatPoly& h2) { return sylvester_impl<ComplexMatrix>(h1, h2); }

GaussRational resultant(const ExactPoly& h1, const ExactPoly& h2) { return exact_determinant(sylvester_matrix(h1, h2)); }
LogDet resultant_logdet(const FloatPoly& h1, const FloatPoly& h2) { return log_determinant(sylvester_matrix(h1, h2)); }
cplx resultant(const FloatPoly& h1, const FloatPoly& h2) { return resultant_logdet(h1, h2).value(); }

cplx resultant_root_oracle(const FloatPoly& h1, const FloatPoly& h2)
{
    int d = common_degree(h1, h2);
    auto a = form_coefficients(h1, d), b = form_coefficients(h2, d);
    // Res = a0^d prod G(t_i) over the roots of F(x, 1); swap roles when a0 = 0.
    auto side = [d](const std::vector<cplx>& F, const std::vector<cplx>& G) {
        cplx r = std::pow(F[0], d);
        for (const auto& t : poly_roots_desc(F)) {
            cplx g = 0.0;
            for (const auto& c : G) g = g * t + c;
            r *= g;
        }
        return r;
    };
    if (a[0] != cplx(0)) return side(a, b);
    if (b[0] != cplx(0)) return (d % 2 ? -1.0 : 1.0) * side(b, a);
    return 0.0;
}

Tristate regularity(const GraphMap& f)
{
    if (!f.equal_degrees()) return Tristate::Unknown;
    if (f.is_exact()) return resultant(f.fhat1(), f.fhat2()).is_zero() ? Tristate::No : Tristate::Yes;
    double scale = 0.0;
    for (const auto* h : {&f.fhat1f(), &f.fhat2f()})
        for (const auto& [m, c] : h->terms()) scale = std::max(scale, std::abs(c));
    LogDet ld = resultant_logdet(f.fhat1f(), f.fhat2f());
    if (ld.singular()) return Tristate::No;
    return ld.log_abs > std::log(1e-10) + 2.0 * f.d() * std::log(scale) ? Tristate::Yes : Tristate::No;
}

bool is_regular(const GraphMap& f)
{
    if (!f.equal_degrees()) throw std::invalid_argument("is_regular: d1 != d2");
    return regularity(f) == Tristate::Yes;
}

void decompose_level(int d, int k, int& ell, int& r)
{
    if (d < 1 || k < 2 * d - 1) throw std::invalid_argument("level k below 2d-1");
    ell = (k - (d - 1)) / d;
    r = (k - (d - 1)) % d;
}

int block_copies(int d, int k)
{
    int ell, r;
    decompose_level(d, k, ell, r);
    return (ell % 2 == 1) ? ell * (ell + 1) / 2 : (ell - 1) * ell / 2;
}

BlockReport block_factorization(const ExactPoly& h1, const ExactPoly& h2, int k)
{
    BlockReport rep;
    rep.d = common_degree(h1, h2);
    if (rep.d < 2) throw std::invalid_argument("block factorization requires d >= 2");
    const int d = rep.d;
    form_coefficients(h1, d);
    form_coefficients(h2, d);
    decompose_level(d, k, rep.ell, rep.r);
    rep.k = k;
    rep.res = resultant(h1, h2);
    if (rep.res.is_zero()) throw std::domain_error("block factorization: fhat is not regular");
    const int ell = rep.ell, r = rep.r;
    rep.modified = (ell % 2 == 0);
    rep.copies = block_copies(d, k);

    if (!rep.modified) {
        for (int s = 0; s <= ell; ++s)
            for (int j = 0; j < d; ++j) rep.rows.push_back(Monomial(ell - s, s, r + d - 1 - j, j));
    } else {
        for (int s = 0; s <= ell - 1; ++s)
            for (int j = 0; j < d; ++j) rep.rows.push_back(Monomial(ell - 1 - s, s, d + r + d - 1 - j, j));
        for (int j = 0; j < d; ++j) rep.rows.push_back(Monomial::z(r + j, k - r - j));
    }
    for (int a = k; a >= r; --a) rep.cols.push_back(Monomial::z(a, k - a));
    rep.size = static_cast<int>(rep.rows.size());
    if (rep.size != static_cast<int>(rep.cols.size())) throw std::logic_error("block factorization: non-square block");

    ExactMatrix R(rep.size, rep.size);
    for (int i = 0; i < rep.size; ++i) {
        ExactPoly img = substitute_w(ExactPoly::monomial(rep.rows[static_cast<std::size_t>(i)]), h1, h2);
        for (int j = 0; j < rep.size; ++j) R(i, j) = img.coeff(rep.cols[static_cast<std::size_t>(j)]);
    }
    rep.det = exact_determinant(R);
    rep.unit = rep.det / pow(rep.res, static_cast<unsigned>(rep.copies));
    rep.identity_holds = (rep.unit == GaussRational(1) || rep.unit == GaussRational(-1));
    return rep;
}

}  // namespace capax
