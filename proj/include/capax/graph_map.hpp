#pragma once

#include <array>
#include <optional>
#include <string>

#include "capax/polynomial.hpp"

namespace capax {

enum class Tristate { No, Yes, Unknown };

using Rational2x2 = std::array<std::array<GaussRational, 2>, 2>;

// f = (f1, f2) : C^2 -> C^2 with deg f1 = d1 >= deg f2 = d2 >= 1.
// Exact maps carry a float shadow; float maps have no exact form.
class GraphMap {
public:
    static GraphMap from_exact(const ExactPoly& f1, const ExactPoly& f2);
    static GraphMap from_float(const FloatPoly& f1, const FloatPoly& f2);
    static GraphMap parse(const std::string& f1, const std::string& f2, Precision prec);

    bool is_exact() const { return m_exact.has_value(); }
    Precision precision() const { return is_exact() ? Precision::Exact : Precision::Float; }
    const ExactPoly& f1() const { return exact().first; }
    const ExactPoly& f2() const { return exact().second; }
    const ExactPoly& fhat1() const { return m_fhat_exact.value()[0]; }
    const ExactPoly& fhat2() const { return m_fhat_exact.value()[1]; }
    const FloatPoly& f1f() const { return m_float[0]; }
    const FloatPoly& f2f() const { return m_float[1]; }
    const FloatPoly& fhat1f() const { return m_fhat_float[0]; }
    const FloatPoly& fhat2f() const { return m_fhat_float[1]; }
    int d1() const { return m_d1; }
    int d2() const { return m_d2; }
    bool equal_degrees() const { return m_d1 == m_d2; }
    // Common degree; throws unless d1 == d2.
    int d() const;
    Tristate regular() const { return m_regular; }

    // R2 o f o R1 for exact invertible 2x2 matrices. Exact maps only.
    GraphMap rotated(const Rational2x2& R1, const Rational2x2& R2) const;

    std::array<cplx, 2> operator()(cplx z1, cplx z2) const;

private:
    GraphMap() = default;
    const std::pair<ExactPoly, ExactPoly>& exact() const;
    void finish();

    std::optional<std::pair<ExactPoly, ExactPoly>> m_exact;
    std::optional<std::array<ExactPoly, 2>> m_fhat_exact;
    std::array<FloatPoly, 2> m_float;
    std::array<FloatPoly, 2> m_fhat_float;
    int m_d1 = 0, m_d2 = 0;
    Tristate m_regular = Tristate::Unknown;
};

// p(w, z) -> p(f(z), z), or p(fhat(z), z) with use_hat.
ExactPoly substitute_graph(const ExactPoly& p, const GraphMap& f, bool use_hat = false);
FloatPoly substitute_graph(const FloatPoly& p, const GraphMap& f, bool use_hat = false);

// Replace z1, z2 by z-polynomials g1, g2 (w untouched).
template <class Scalar>
Polynomial<Scalar> substitute_z(const Polynomial<Scalar>& p, const Polynomial<Scalar>& g1, const Polynomial<Scalar>& g2)
{
    Polynomial<Scalar> r;
    for (const auto& [m, c] : p.terms()) {
        Polynomial<Scalar> t = pow(g1, static_cast<unsigned>(m.e[2])) * pow(g2, static_cast<unsigned>(m.e[3]));
        r += t.times_term(Monomial::w(m.e[0], m.e[1]), c);
    }
    return r;
}

}  // namespace capax
