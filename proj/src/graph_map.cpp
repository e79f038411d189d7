#include "capax/graph_map.hpp"

#include <stdexcept>

#include "capax/resultant.hpp"

namespace capax {

namespace {

template <class Scalar>
void validate_component(const Polynomial<Scalar>& p, const char* name)
{
    if (!p.is_pure_z()) throw std::invalid_argument(std::string(name) + " must be a polynomial in z1, z2 only");
    if (p.degree() < 1) throw std::invalid_argument(std::string(name) + " must have degree >= 1");
}

}  // namespace

GraphMap GraphMap::from_exact(const ExactPoly& f1, const ExactPoly& f2)
{
    validate_component(f1, "f1");
    validate_component(f2, "f2");
    GraphMap g;
    g.m_exact = std::make_pair(f1, f2);
    g.m_float = {to_float(f1), to_float(f2)};
    g.finish();
    return g;
}

GraphMap GraphMap::from_float(const FloatPoly& f1, const FloatPoly& f2)
{
    validate_component(f1, "f1");
    validate_component(f2, "f2");
    GraphMap g;
    g.m_float = {f1, f2};
    g.finish();
    return g;
}

GraphMap GraphMap::parse(const std::string& f1, const std::string& f2, Precision prec)
{
    if (prec == Precision::Exact) return from_exact(parse_exact(f1), parse_exact(f2));
    return from_float(parse_float(f1), parse_float(f2));
}

void GraphMap::finish()
{
    m_d1 = m_float[0].degree();
    m_d2 = m_float[1].degree();
    if (m_d1 < m_d2) throw std::invalid_argument("GraphMap requires deg f1 >= deg f2");
    if (m_exact) {
        m_fhat_exact = std::array<ExactPoly, 2>{leading_homogeneous_part(m_exact->first, m_d1),
                                                leading_homogeneous_part(m_exact->second, m_d2)};
    }
    m_fhat_float = {leading_homogeneous_part(m_float[0], m_d1), leading_homogeneous_part(m_float[1], m_d2)};
    m_regular = regularity(*this);
}

int GraphMap::d() const
{
    if (m_d1 != m_d2) throw std::domain_error("map components have different degrees");
    return m_d1;
}

const std::pair<ExactPoly, ExactPoly>& GraphMap::exact() const
{
    if (!m_exact) throw std::domain_error("map has no exact form");
    return *m_exact;
}

GraphMap GraphMap::rotated(const Rational2x2& R1, const Rational2x2& R2) const
{
    auto det = [](const Rational2x2& R) { return R[0][0] * R[1][1] - R[0][1] * R[1][0]; };
    if (det(R1).is_zero() || det(R2).is_zero()) throw std::invalid_argument("rotation matrix is singular");
    const ExactPoly z1 = ExactPoly::var(2), z2 = ExactPoly::var(3);
    ExactPoly u1 = z1 * R1[0][0] + z2 * R1[0][1];
    ExactPoly u2 = z1 * R1[1][0] + z2 * R1[1][1];
    ExactPoly g1 = substitute_z(f1(), u1, u2), g2 = substitute_z(f2(), u1, u2);
    return from_exact(g1 * R2[0][0] + g2 * R2[0][1], g1 * R2[1][0] + g2 * R2[1][1]);
}

std::array<cplx, 2> GraphMap::operator()(cplx z1, cplx z2) const
{
    return {evaluate(m_float[0], 0.0, 0.0, z1, z2), evaluate(m_float[1], 0.0, 0.0, z1, z2)};
}

ExactPoly substitute_graph(const ExactPoly& p, const GraphMap& f, bool use_hat)
{
    return use_hat ? substitute_w(p, f.fhat1(), f.fhat2()) : substitute_w(p, f.f1(), f.f2());
}

FloatPoly substitute_graph(const FloatPoly& p, const GraphMap& f, bool use_hat)
{
    return use_hat ? substitute_w(p, f.fhat1f(), f.fhat2f()) : substitute_w(p, f.f1f(), f.f2f());
}

}  // namespace capax
