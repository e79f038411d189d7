#include "capax/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace capax {

BareissGauss::BareissGauss(const ExactMatrix& A) : m_rows(A.rows()), m_cols(A.cols())
{
    GaussIntMatrix M(m_rows, m_cols);
    for (Eigen::Index i = 0; i < m_rows; ++i) {
        mpz_class l = 1;
        for (Eigen::Index j = 0; j < m_cols; ++j) {
            mpz_class d = denominator_lcm(A(i, j));
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        m_row_scale *= l;
        for (Eigen::Index j = 0; j < m_cols; ++j) {
            mpq_class re = A(i, j).re * l, im = A(i, j).im * l;
            M(i, j) = GaussInt(re.get_num(), im.get_num());
        }
    }

    GaussInt prev(1);
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < m_cols && r < m_rows; ++c) {
        Eigen::Index p = r;
        while (p < m_rows && M(p, c).is_zero()) ++p;
        if (p == m_rows) continue;
        if (p != r) {
            M.row(p).swap(M.row(r));
            m_sign = -m_sign;
        }
        const GaussInt piv = M(r, c);
        for (Eigen::Index i = r + 1; i < m_rows; ++i) {
            for (Eigen::Index j = c + 1; j < m_cols; ++j) M(i, j) = divexact(M(i, j) * piv - M(i, c) * M(r, j), prev);
            M(i, c) = GaussInt(0);
        }
        prev = piv;
        ++r;
    }
    m_rank = r;
    m_last_pivot = prev;
    m_square_full = (m_rows == m_cols && r == m_rows);
}

GaussRational BareissGauss::determinant() const
{
    if (m_rows != m_cols) throw std::invalid_argument("determinant of non-square matrix");
    if (m_rows == 0) return GaussRational(1);
    if (!m_square_full) return GaussRational(0);
    GaussRational d(m_last_pivot);
    d = d / GaussRational(mpq_class(m_row_scale));
    return m_sign < 0 ? -d : d;
}

std::complex<double> LogDet::value() const { return phase * std::exp(log_abs); }

LogDet log_determinant(const ComplexMatrix& A)
{
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
    LogDet r;
    if (A.rows() == 0) return r;
    Eigen::PartialPivLU<ComplexMatrix> lu(A);
    const ComplexMatrix& LU = lu.matrixLU();
    std::complex<double> phase = lu.permutationP().determinant();
    double la = 0.0;
    for (Eigen::Index i = 0; i < LU.rows(); ++i) {
        double a = std::abs(LU(i, i));
        if (a == 0.0) {
            r.phase = 0.0;
            r.log_abs = -INFINITY;
            return r;
        }
        la += std::log(a);
        phase *= LU(i, i) / a;
    }
    r.phase = phase;
    r.log_abs = la;
    return r;
}

}  // namespace capax
