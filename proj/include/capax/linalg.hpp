#pragma once

#include <complex>

#include <Eigen/Dense>

#include "capax/rational.hpp"

namespace capax {

using ExactMatrix = Eigen::Matrix<GaussRational, Eigen::Dynamic, Eigen::Dynamic>;
using GaussIntMatrix = Eigen::Matrix<GaussInt, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexMatrix = Eigen::MatrixXcd;

// Fraction-free elimination over the Gaussian integers. Each row of the
// rational input is first scaled by the lcm of its denominators.
class BareissGauss {
public:
    explicit BareissGauss(const ExactMatrix& A);

    GaussRational determinant() const;  // square input only
    Eigen::Index rank() const { return m_rank; }

private:
    Eigen::Index m_rows, m_cols, m_rank = 0;
    GaussInt m_last_pivot;
    int m_sign = 1;
    mpz_class m_row_scale = 1;
    bool m_square_full = false;
};

inline GaussRational exact_determinant(const ExactMatrix& A) { return BareissGauss(A).determinant(); }
inline Eigen::Index exact_rank(const ExactMatrix& A) { return BareissGauss(A).rank(); }

// Determinant as (phase, log|det|); phase is 0 for a singular matrix.
struct LogDet {
    std::complex<double> phase{1.0, 0.0};
    double log_abs = 0.0;
    bool singular() const { return phase == std::complex<double>(0.0, 0.0); }
    std::complex<double> value() const;
};

LogDet log_determinant(const ComplexMatrix& A);

}  // namespace capax
