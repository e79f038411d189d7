#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capax/monomial.hpp"
#include "capax/rational.hpp"

namespace capax {

using cplx = std::complex<double>;

enum class Precision { Exact, Float };

template <class Scalar>
struct CoeffTraits;

template <>
struct CoeffTraits<GaussRational> {
    static constexpr Precision precision = Precision::Exact;
    static bool is_zero(const GaussRational& c) { return c.is_zero(); }
    static cplx to_complex(const GaussRational& c) { return c.to_complex(); }
};

template <>
struct CoeffTraits<cplx> {
    static constexpr Precision precision = Precision::Float;
    static bool is_zero(const cplx& c) { return c == cplx(0.0, 0.0); }
    static cplx to_complex(const cplx& c) { return c; }
};

// Sparse polynomial in w1, w2, z1, z2. Terms are kept in Grevlex4 order and
// zero coefficients are never stored.
template <class Scalar>
class Polynomial {
public:
    using Traits = CoeffTraits<Scalar>;
    using Terms = std::map<Monomial, Scalar, Grevlex4Less>;

    Polynomial() = default;
    Polynomial(const Scalar& c) { add_term(Monomial(), c); }

    static Polynomial monomial(const Monomial& m, const Scalar& c = Scalar(1))
    {
        Polynomial p;
        p.add_term(m, c);
        return p;
    }
    static Polynomial var(int slot) { return monomial(Monomial::var(slot)); }

    const Terms& terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }
    std::size_t size() const { return m_terms.size(); }

    Scalar coeff(const Monomial& m) const
    {
        auto it = m_terms.find(m);
        return it == m_terms.end() ? Scalar(0) : it->second;
    }

    void add_term(const Monomial& m, const Scalar& c)
    {
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = m_terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) m_terms.erase(it);
        }
    }

    // -1 for the zero polynomial.
    int degree() const { return m_terms.empty() ? -1 : m_terms.rbegin()->first.degree(); }
    int w_degree() const
    {
        int d = m_terms.empty() ? -1 : 0;
        for (const auto& [m, c] : m_terms) d = std::max(d, m.alpha_deg());
        return d;
    }
    int z_degree() const
    {
        int d = m_terms.empty() ? -1 : 0;
        for (const auto& [m, c] : m_terms) d = std::max(d, m.beta_deg());
        return d;
    }
    bool is_pure_z() const
    {
        for (const auto& [m, c] : m_terms)
            if (!m.is_pure_z()) return false;
        return true;
    }
    bool is_pure_w() const
    {
        for (const auto& [m, c] : m_terms)
            if (!m.is_pure_w()) return false;
        return true;
    }
    bool is_homogeneous() const
    {
        for (const auto& [m, c] : m_terms)
            if (m.degree() != degree()) return false;
        return true;
    }

    Polynomial homogeneous_part(int deg) const
    {
        Polynomial r;
        for (const auto& [m, c] : m_terms)
            if (m.degree() == deg) r.m_terms.emplace_hint(r.m_terms.end(), m, c);
        return r;
    }

    // Leading monomial and coefficient under `order`. Requires a nonzero polynomial.
    std::pair<Monomial, Scalar> leading(const MonomialOrder& order) const
    {
        if (m_terms.empty()) throw std::domain_error("leading term of zero polynomial");
        if (order.kind == MonomialOrder::Kind::Grevlex4) return *m_terms.rbegin();
        auto best = m_terms.begin();
        for (auto it = std::next(best); it != m_terms.end(); ++it)
            if (compare_monomials(order, best->first, it->first) < 0) best = it;
        return *best;
    }

    Polynomial& operator+=(const Polynomial& q)
    {
        for (const auto& [m, c] : q.m_terms) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& q)
    {
        for (const auto& [m, c] : q.m_terms) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Scalar& s)
    {
        if (Traits::is_zero(s)) {
            m_terms.clear();
            return *this;
        }
        for (auto it = m_terms.begin(); it != m_terms.end();) {
            it->second *= s;
            if (Traits::is_zero(it->second))
                it = m_terms.erase(it);
            else
                ++it;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) { return a * Scalar(-1); }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial r;
        for (const auto& [ma, ca] : a.m_terms)
            for (const auto& [mb, cb] : b.m_terms) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

    // Multiply by c * m in one pass.
    Polynomial times_term(const Monomial& m, const Scalar& c) const
    {
        Polynomial r;
        if (Traits::is_zero(c)) return r;
        for (const auto& [mm, cc] : m_terms) r.m_terms.emplace_hint(r.m_terms.end(), mm * m, cc * c);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.m_terms == b.m_terms; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    Terms m_terms;
};

using ExactPoly = Polynomial<GaussRational>;
using FloatPoly = Polynomial<cplx>;

template <class Scalar>
Polynomial<Scalar> pow(const Polynomial<Scalar>& p, unsigned e)
{
    Polynomial<Scalar> r(Scalar(1)), base = p;
    while (e) {
        if (e & 1u) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

FloatPoly to_float(const ExactPoly& p);

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, UnknownVariable, BadExponent, DecimalInExact, DivisionByZero };
    ParseError(Kind kind, std::size_t offset, const std::string& what);
    Kind kind() const { return m_kind; }
    std::size_t offset() const { return m_offset; }

private:
    Kind m_kind;
    std::size_t m_offset;
};

// Grammar: expr := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := base ('^' uint)? ; base := w1|w2|z1|z2|number|i|'(' expr ')' ;
// number := integer | integer '/' integer | decimal (optional exponent).
ExactPoly parse_exact(std::string_view text);
FloatPoly parse_float(std::string_view text);

// Canonical text; leading term first. parse(print(p)) == p.
std::string print(const ExactPoly& p);
std::string print(const FloatPoly& p);

std::string format_double(double x);

// Terms of p of total degree exactly d. p must be z-only with deg p <= d.
template <class Scalar>
Polynomial<Scalar> leading_homogeneous_part(const Polynomial<Scalar>& p, int d)
{
    if (!p.is_pure_z()) throw std::invalid_argument("leading_homogeneous_part: polynomial contains a w-variable");
    if (p.degree() > d) throw std::invalid_argument("leading_homogeneous_part: degree exceeds d");
    return p.homogeneous_part(d);
}

// Replace w1, w2 by g1, g2 (z-polynomials).
template <class Scalar>
Polynomial<Scalar> substitute_w(const Polynomial<Scalar>& p, const Polynomial<Scalar>& g1, const Polynomial<Scalar>& g2)
{
    std::vector<Polynomial<Scalar>> pw1{Polynomial<Scalar>(Scalar(1))}, pw2{Polynomial<Scalar>(Scalar(1))};
    auto power = [](std::vector<Polynomial<Scalar>>& cache, const Polynomial<Scalar>& g, int k) -> const Polynomial<Scalar>& {
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * g);
        return cache[static_cast<std::size_t>(k)];
    };
    Polynomial<Scalar> r;
    for (const auto& [m, c] : p.terms()) {
        Monomial zpart = Monomial::z(m.e[2], m.e[3]);
        Polynomial<Scalar> t = power(pw1, g1, m.e[0]) * power(pw2, g2, m.e[1]);
        r += t.times_term(zpart, c);
    }
    return r;
}

class EvaluationOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Sparse Horner evaluation at (w, z).
cplx evaluate(const FloatPoly& p, const std::array<cplx, 4>& point);
inline cplx evaluate(const FloatPoly& p, cplx w1, cplx w2, cplx z1, cplx z2)
{
    return evaluate(p, std::array<cplx, 4>{w1, w2, z1, z2});
}
GaussRational evaluate(const ExactPoly& p, const std::array<GaussRational, 4>& point);

}  // namespace capax
