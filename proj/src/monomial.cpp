#include "capax/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace capax {

namespace {

void check_degree(const Monomial& m)
{
    for (int x : m.e)
        if (x < 0) throw std::invalid_argument("negative exponent");
    if (m.degree() > kDegreeCap) throw std::overflow_error("monomial degree exceeds cap " + std::to_string(kDegreeCap));
}

// Equal total degree: the larger exponent in the earlier slot is the smaller monomial.
std::strong_ordering tie_break(const int* a, const int* b, int n)
{
    for (int i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::strong_ordering graded(const int* a, const int* b, int n)
{
    int da = 0, db = 0;
    for (int i = 0; i < n; ++i) { da += a[i]; db += b[i]; }
    if (da != db) return da <=> db;
    return tie_break(a, b, n);
}

}  // namespace

Monomial::Monomial(int w1, int w2, int z1, int z2) : e{w1, w2, z1, z2} { check_degree(*this); }

Monomial Monomial::var(int slot)
{
    Monomial m;
    m.e.at(static_cast<std::size_t>(slot)) = 1;
    return m;
}

bool Monomial::divides(const Monomial& m) const
{
    for (int i = 0; i < 4; ++i)
        if (e[i] > m.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const
{
    Monomial r;
    for (int i = 0; i < 4; ++i) r.e[i] = e[i] + m.e[i];
    check_degree(r);
    return r;
}

Monomial Monomial::quotient_of(const Monomial& m) const
{
    Monomial r;
    for (int i = 0; i < 4; ++i) r.e[i] = m.e[i] - e[i];
    check_degree(r);
    return r;
}

Monomial Monomial::lcm(const Monomial& m) const
{
    Monomial r;
    for (int i = 0; i < 4; ++i) r.e[i] = std::max(e[i], m.e[i]);
    check_degree(r);
    return r;
}

std::string to_string(const Monomial& m)
{
    static const char* names[4] = {"w1", "w2", "z1", "z2"};
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (m.e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s.empty() ? "1" : s;
}

std::string to_string(const MonomialOrder& o)
{
    switch (o.kind) {
    case MonomialOrder::Kind::Grevlex4: return "grevlex4";
    case MonomialOrder::Kind::GraphWeighted: return "graph_weighted(" + std::to_string(o.d) + ")";
    case MonomialOrder::Kind::GrevlexZ: return "grevlex_z";
    case MonomialOrder::Kind::GrevlexW: return "grevlex_w";
    }
    return "?";
}

std::strong_ordering compare_monomials(const MonomialOrder& order, const Monomial& a, const Monomial& b)
{
    switch (order.kind) {
    case MonomialOrder::Kind::Grevlex4:
        return graded(a.e.data(), b.e.data(), 4);
    case MonomialOrder::Kind::GrevlexW:
        return graded(a.e.data(), b.e.data(), 2);
    case MonomialOrder::Kind::GrevlexZ:
        return graded(a.e.data() + 2, b.e.data() + 2, 2);
    case MonomialOrder::Kind::GraphWeighted: {
        long wa = static_cast<long>(order.d) * a.alpha_deg() + a.beta_deg();
        long wb = static_cast<long>(order.d) * b.alpha_deg() + b.beta_deg();
        if (wa != wb) return wa <=> wb;
        auto c = graded(a.e.data(), b.e.data(), 2);
        if (c != 0) return c;
        return graded(a.e.data() + 2, b.e.data() + 2, 2);
    }
    }
    return std::strong_ordering::equal;
}

}  // namespace capax
