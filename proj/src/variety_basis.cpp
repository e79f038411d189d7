#include "capax/variety_basis.hpp"

#include <algorithm>

#include "capax/groebner.hpp"
#include "capax/linalg.hpp"

namespace capax {

namespace {

bool z_less(const Exp2& a, const Exp2& b)
{
    return compare_monomials(MonomialOrder::grevlex_z(), Monomial::z(a[0], a[1]), Monomial::z(b[0], b[1])) < 0;
}

void sort_by(std::vector<Monomial>& v, const MonomialOrder& o) { std::sort(v.begin(), v.end(), OrderLess{o}); }

std::vector<Exp2> exponents_of_degree(int n)
{
    std::vector<Exp2> out;
    for (int a = n; a >= 0; --a) out.push_back({a, n - a});
    return out;  // increasing in the graded tie rule
}

}  // namespace

bool StandardMonomialSet::contains(const Exp2& b) const
{
    return std::binary_search(exponents.begin(), exponents.end(), b, z_less);
}

StandardMonomialSet generic_staircase(int d)
{
    StandardMonomialSet s;
    for (int e = 0; e <= 2 * d - 2; ++e) {
        int bmax = std::min(e, 2 * d - 2 - e);
        for (int b = 0; b <= bmax; ++b) s.exponents.push_back({e - b, b});
    }
    std::sort(s.exponents.begin(), s.exponents.end(), z_less);
    return s;
}

Variety::Variety(const GraphMap& f) : m_map(f)
{
    if (!f.is_exact()) throw std::invalid_argument("staircase requires an exact map");
    m_gb_z = groebner_basis({f.f1(), f.f2()});
    int A = -1, B = -1;
    for (const auto& g : m_gb_z) {
        const Monomial& lm = g.terms().rbegin()->first;
        if (lm.e[3] == 0 && (A < 0 || lm.e[2] < A)) A = lm.e[2];
        if (lm.e[2] == 0 && (B < 0 || lm.e[3] < B)) B = lm.e[3];
    }
    if (A < 0 || B < 0) throw NonZeroDimensional("ideal <f1, f2> is not zero-dimensional: staircase is infinite");
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < B; ++b) {
            Monomial m = Monomial::z(a, b);
            bool standard = true;
            for (const auto& g : m_gb_z)
                if (g.terms().rbegin()->first.divides(m)) {
                    standard = false;
                    break;
                }
            if (standard) m_staircase.exponents.push_back({a, b});
        }
    std::sort(m_staircase.exponents.begin(), m_staircase.exponents.end(), z_less);

    const ExactPoly w1 = ExactPoly::var(0), w2 = ExactPoly::var(1);
    m_gb_graph = groebner_basis({f.f1() - w1, f.f2() - w2});
}

bool Variety::generic() const
{
    if (!m_map.equal_degrees()) return false;
    return m_staircase.exponents == generic_staircase(m_map.d()).exponents;
}

ExactPoly Variety::normal_form(const ExactPoly& p) const { return reduce(p, m_gb_graph); }

StandardMonomialSet staircase(const GraphMap& f) { return Variety(f).staircase(); }
ExactPoly normal_form(const ExactPoly& p, const GraphMap& f) { return Variety(f).normal_form(p); }

const char* to_string(BasisKind k)
{
    switch (k) {
    case BasisKind::Z: return "z";
    case BasisKind::W: return "w";
    case BasisKind::B: return "B";
    case BasisKind::C: return "C";
    }
    return "?";
}

BasisKind parse_basis_kind(const std::string& s)
{
    if (s == "z" || s == "Z") return BasisKind::Z;
    if (s == "w" || s == "W") return BasisKind::W;
    if (s == "B" || s == "b") return BasisKind::B;
    if (s == "C" || s == "c") return BasisKind::C;
    throw std::invalid_argument("unknown basis kind '" + s + "' (expected z, w, B or C)");
}

std::vector<std::vector<Monomial>> b_levels(int d, const StandardMonomialSet& I, int n_max)
{
    std::vector<std::vector<Monomial>> levels(static_cast<std::size_t>(n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
        auto& lv = levels[static_cast<std::size_t>(n)];
        for (int a = 0; d * a <= n; ++a)
            for (const auto& b : I.exponents)
                if (d * a + b[0] + b[1] == n)
                    for (int a1 = a; a1 >= 0; --a1) lv.push_back(Monomial(a1, a - a1, b[0], b[1]));
        sort_by(lv, MonomialOrder::graph_weighted(d));
    }
    return levels;
}

std::vector<std::vector<Monomial>> c_levels(int d, const StandardMonomialSet& low, int n_max)
{
    auto levels = b_levels(d, low, std::min(n_max, 2 * d - 2));
    levels.resize(static_cast<std::size_t>(n_max + 1));
    for (int n = 2 * d - 1; n <= n_max; ++n) {
        int k = (n - (d - 1)) / d, r = (n - (d - 1)) % d;
        std::vector<Monomial> wpart, zpart;
        for (int a1 = k; a1 >= 0; --a1)
            for (int j = 0; j < d; ++j) {
                if (r == 0)
                    wpart.push_back(Monomial(a1, k - a1, j, d - 1 - j));
                else
                    wpart.push_back(Monomial(a1, k - a1, d - 1 - j + r, j));
            }
        sort_by(wpart, MonomialOrder::graph_weighted(d));
        for (int j = 0; j < r; ++j) zpart.push_back(Monomial::z(j, n - j));
        sort_by(zpart, MonomialOrder::grevlex_z());
        auto& lv = levels[static_cast<std::size_t>(n)];
        lv = wpart;
        lv.insert(lv.end(), zpart.begin(), zpart.end());
    }
    return levels;
}

MonomialBasisStream::MonomialBasisStream(BasisKind kind, int n_max) : m_kind(kind)
{
    if (kind != BasisKind::Z && kind != BasisKind::W) throw std::invalid_argument("basis kinds B and C need a variety");
    if (n_max < 0 || n_max > kDegreeCap) throw std::invalid_argument("n_max out of range");
    m_order = kind == BasisKind::Z ? MonomialOrder::grevlex_z() : MonomialOrder::grevlex_w();
    for (int n = 0; n <= n_max; ++n) {
        std::vector<Monomial> lv;
        for (const auto& e : exponents_of_degree(n))
            lv.push_back(kind == BasisKind::Z ? Monomial::z(e[0], e[1]) : Monomial::w(e[0], e[1]));
        m_levels.push_back(std::move(lv));
    }
}

MonomialBasisStream::MonomialBasisStream(BasisKind kind, const Variety& V, int n_max) : m_kind(kind)
{
    const GraphMap& f = V.map();
    if (kind == BasisKind::Z || kind == BasisKind::W) {
        *this = MonomialBasisStream(kind, n_max);
        return;
    }
    if (!f.equal_degrees()) throw std::domain_error("bases B and C need d1 == d2");
    if (f.regular() != Tristate::Yes) throw std::domain_error("bases B and C need a regular map");
    m_d = f.d();
    if (n_max < 0 || n_max > kDegreeCap) throw std::invalid_argument("n_max out of range");
    m_order = MonomialOrder::graph_weighted(m_d);
    if (kind == BasisKind::B) {
        m_levels = b_levels(m_d, V.staircase(), n_max);
    } else {
        if (!V.generic()) throw std::domain_error("basis C requires the generic staircase (apply a rotation first)");
        m_levels = c_levels(m_d, V.staircase(), n_max);
    }
}

MonomialBasisStream MonomialBasisStream::c_stream_unchecked(int d, const StandardMonomialSet& low, int n_max)
{
    MonomialBasisStream s;
    s.m_kind = BasisKind::C;
    s.m_d = d;
    s.m_order = MonomialOrder::graph_weighted(d);
    s.m_levels = c_levels(d, low, n_max);
    return s;
}

const std::vector<Monomial>& MonomialBasisStream::level(int n) const
{
    if (n < 0 || n > n_max()) throw std::out_of_range("basis level out of range");
    return m_levels[static_cast<std::size_t>(n)];
}

std::vector<Monomial> MonomialBasisStream::up_to(int n) const
{
    if (n > n_max()) throw std::out_of_range("basis level out of range");
    std::vector<Monomial> out;
    for (int i = 0; i <= n; ++i) out.insert(out.end(), m_levels[static_cast<std::size_t>(i)].begin(), m_levels[static_cast<std::size_t>(i)].end());
    return out;
}

std::size_t MonomialBasisStream::count_up_to(int n) const
{
    if (n > n_max()) throw std::out_of_range("basis level out of range");
    std::size_t c = 0;
    for (int i = 0; i <= n; ++i) c += m_levels[static_cast<std::size_t>(i)].size();
    return c;
}

int MonomialBasisStream::filtration_degree(const Monomial& m) const
{
    if (m_kind == BasisKind::Z || m_kind == BasisKind::W) return m.degree();
    int weight = m_d * m.alpha_deg() + m.beta_deg();
    return (weight + m_d - 1) / m_d;
}

std::optional<Monomial> MonomialBasisStream::next()
{
    while (m_cursor_level < m_levels.size() && m_cursor_pos >= m_levels[m_cursor_level].size()) {
        ++m_cursor_level;
        m_cursor_pos = 0;
    }
    if (m_cursor_level >= m_levels.size()) return std::nullopt;
    return m_levels[m_cursor_level][m_cursor_pos++];
}

bool StarCertificate::complete() const
{
    return std::all_of(entries.begin(), entries.end(), [](const StarEntry& e) { return e.found; });
}

namespace {

bool try_partner(const Variety& V, const MonomialOrder& order, const Exp2& beta, const Exp2& bt, StarEntry& e)
{
    ExactPoly nf = V.normal_form(ExactPoly::monomial(Monomial::z(beta[0] + bt[0], beta[1] + bt[1])));
    if (nf.is_zero()) return false;
    auto [lm, lc] = nf.leading(order);
    if (!lm.is_pure_w()) return false;
    e.found = true;
    e.beta_tilde = bt;
    e.C = lc;
    e.gamma = lm.alpha();
    return true;
}

}  // namespace

StarCertificate check_star(const Variety& V, const MonomialOrder& order)
{
    if (order.kind != MonomialOrder::Kind::GraphWeighted) throw std::invalid_argument("check_star needs a GraphWeighted order");
    const int d = std::max(V.map().d1(), 1);
    StarCertificate cert;
    for (const auto& beta : V.staircase().exponents) {
        StarEntry e;
        e.beta = beta;
        for (int j = 0; j <= 4 * d && !e.found; ++j) try_partner(V, order, beta, {0, j}, e);
        for (int deg = 1; deg <= 4 * d && !e.found; ++deg)
            for (const auto& bt : exponents_of_degree(deg)) {
                if (bt[0] == 0) continue;
                if (try_partner(V, order, beta, bt, e)) break;
            }
        cert.entries.push_back(e);
    }
    return cert;
}

bool verify_star(const Variety& V, const StarEntry& e)
{
    if (!e.found) return false;
    ExactPoly nf = V.normal_form(ExactPoly::monomial(Monomial::z(e.beta[0] + e.beta_tilde[0], e.beta[1] + e.beta_tilde[1])));
    if (nf.is_zero()) return false;
    auto [lm, lc] = nf.leading(MonomialOrder::graph_weighted(std::max(V.map().d1(), 1)));
    return lm == Monomial::w(e.gamma[0], e.gamma[1]) && lc == e.C && !lc.is_zero();
}

FiltrationCounts filtration_counts(int d, int n)
{
    if (d < 2) throw std::invalid_argument("filtration_counts requires d >= 2");
    if (n < 0) throw std::invalid_argument("filtration_counts requires n >= 0");
    FiltrationCounts c;
    for (long long nu = 0; nu <= static_cast<long long>(n) * d; ++nu) c.m += nu + 1;
    for (long long nu = 1; nu <= n; ++nu) c.l += nu * (nu * d * d - static_cast<long long>(d) * (d - 3) / 2);
    return c;
}

FiltrationCounts graded_counts(int n)
{
    FiltrationCounts c;
    c.m = static_cast<long long>(n + 1) * (n + 2) / 2;
    c.l = static_cast<long long>(n) * (n + 1) * (n + 2) / 3;
    return c;
}

bool independence_check(const GraphMap& f, int n)
{
    if (!f.is_exact()) throw std::invalid_argument("independence_check requires an exact map");
    const int d = f.d();
    StandardMonomialSet low;
    try {
        low = Variety(f).staircase();
    } catch (const NonZeroDimensional&) {
        low = generic_staircase(d);
    }
    auto levels = c_levels(d, low, n);
    for (int nu = 0; nu <= n; ++nu) {
        const auto& lv = levels[static_cast<std::size_t>(nu)];
        if (lv.empty()) continue;
        ExactMatrix M(static_cast<Eigen::Index>(lv.size()), nu + 1);
        for (std::size_t i = 0; i < lv.size(); ++i) {
            ExactPoly img = substitute_w(ExactPoly::monomial(lv[i]), f.fhat1(), f.fhat2());
            for (int a = 0; a <= nu; ++a) M(static_cast<Eigen::Index>(i), a) = img.coeff(Monomial::z(a, nu - a));
        }
        if (exact_rank(M) != static_cast<Eigen::Index>(lv.size())) return false;
    }
    return true;
}

}  // namespace capax
