#pragma once

#include <vector>

#include "capax/graph_map.hpp"
#include "capax/linalg.hpp"

namespace capax {

// Coefficients (c_d, ..., c_0) of a binary form sum_j c_j z1^j z2^(d-j).
// Throws if h is not a homogeneous z-form of degree d.
std::vector<GaussRational> form_coefficients(const ExactPoly& h, int d);
std::vector<cplx> form_coefficients(const FloatPoly& h, int d);

// 2d x 2d: rows 0..d-1 hold shifted (a_d..a_0), rows d..2d-1 shifted (b_d..b_0).
ExactMatrix sylvester_matrix(const ExactPoly& h1, const ExactPoly& h2);
ComplexMatrix sylvester_matrix(const FloatPoly& h1, const FloatPoly& h2);

GaussRational resultant(const ExactPoly& h1, const ExactPoly& h2);
cplx resultant(const FloatPoly& h1, const FloatPoly& h2);
LogDet resultant_logdet(const FloatPoly& h1, const FloatPoly& h2);

// a_d^d prod G(t_i) over the roots t_i of the dehomogenized first form, the
// roles swapped when a_d = 0. Test oracle.
cplx resultant_root_oracle(const FloatPoly& h1, const FloatPoly& h2);

// Res(fhat) != 0 (exact), or |Res| > 1e-10 * scale^(2d) (float).
bool is_regular(const GraphMap& f);
Tristate regularity(const GraphMap& f);

struct BlockReport {
    int d = 0, k = 0, ell = 0, r = 0;
    int copies = 0;
    bool modified = false;        // even ell: w-degree lowered to ell - 1
    int size = 0;                 // rows = columns of R_k
    GaussRational det;            // det R_k
    GaussRational res;            // Res(fhat)
    GaussRational unit;           // det / Res^copies
    bool identity_holds = false;  // unit == +1 or -1
    std::vector<Monomial> rows;   // w z-monomials whose fhat-images fill R_k
    std::vector<Monomial> cols;   // z1^a z2^(k-a), a = k down to r
};

// Decompose k = (d-1) + ell*d + r with 0 <= r < d. Requires k >= 2d - 1.
void decompose_level(int d, int k, int& ell, int& r);
int block_copies(int d, int k);
BlockReport block_factorization(const ExactPoly& h1, const ExactPoly& h2, int k);

}  // namespace capax
