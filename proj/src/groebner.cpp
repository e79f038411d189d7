#include "capax/groebner.hpp"

#include <algorithm>
#include <set>

namespace capax {

namespace {

const Monomial& lead_monomial(const ExactPoly& p) { return p.terms().rbegin()->first; }

ExactPoly make_monic(const ExactPoly& p)
{
    GaussRational lc = p.terms().rbegin()->second;
    if (lc == GaussRational(1)) return p;
    return p * (GaussRational(1) / lc);
}

ExactPoly s_polynomial(const ExactPoly& f, const ExactPoly& g)
{
    const Monomial& a = lead_monomial(f);
    const Monomial& b = lead_monomial(g);
    Monomial l = a.lcm(b);
    return f.times_term(a.quotient_of(l), GaussRational(1)) - g.times_term(b.quotient_of(l), GaussRational(1));
}

bool coprime(const Monomial& a, const Monomial& b)
{
    for (int i = 0; i < 4; ++i)
        if (a.e[i] > 0 && b.e[i] > 0) return false;
    return true;
}

}  // namespace

ExactPoly reduce(const ExactPoly& p, const std::vector<ExactPoly>& G)
{
    ExactPoly rem = p, out;
    while (!rem.is_zero()) {
        auto [m, c] = *rem.terms().rbegin();
        const ExactPoly* div = nullptr;
        for (const auto& g : G)
            if (lead_monomial(g).divides(m)) {
                div = &g;
                break;
            }
        if (div) {
            rem -= div->times_term(lead_monomial(*div).quotient_of(m), c);
        } else {
            out.add_term(m, c);
            rem.add_term(m, -c);
        }
    }
    return out;
}

std::vector<ExactPoly> groebner_basis(const std::vector<ExactPoly>& generators, std::size_t max_pairs)
{
    std::vector<ExactPoly> G;
    for (const auto& g : generators)
        if (!g.is_zero()) G.push_back(make_monic(g));

    // Pairs keyed by (lcm, i, j) so the smallest lcm is processed first.
    struct Pair {
        Monomial lcm;
        std::size_t i, j;
        bool operator<(const Pair& o) const
        {
            auto c = compare_monomials(MonomialOrder::grevlex4(), lcm, o.lcm);
            if (c != 0) return c < 0;
            return std::tie(i, j) < std::tie(o.i, o.j);
        }
    };
    std::set<Pair> pairs;
    for (std::size_t j = 0; j < G.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.insert({lead_monomial(G[i]).lcm(lead_monomial(G[j])), i, j});

    std::size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > max_pairs) throw std::runtime_error("Groebner basis: pair budget exhausted");
        Pair pr = *pairs.begin();
        pairs.erase(pairs.begin());
        if (coprime(lead_monomial(G[pr.i]), lead_monomial(G[pr.j]))) continue;
        ExactPoly h = reduce(s_polynomial(G[pr.i], G[pr.j]), G);
        if (h.is_zero()) continue;
        G.push_back(make_monic(h));
        std::size_t n = G.size() - 1;
        for (std::size_t i = 0; i < n; ++i) pairs.insert({lead_monomial(G[i]).lcm(lead_monomial(G[n])), i, n});
    }

    // Minimalize, then inter-reduce.
    std::vector<ExactPoly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& a = lead_monomial(G[j]);
            const Monomial& b = lead_monomial(G[i]);
            if (a.divides(b) && (a != b || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    std::vector<ExactPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<ExactPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        ExactPoly lead = ExactPoly::monomial(lead_monomial(minimal[i]));
        reduced.push_back(lead + reduce(minimal[i] - lead, others));
    }
    std::sort(reduced.begin(), reduced.end(), [](const ExactPoly& a, const ExactPoly& b) {
        return compare_monomials(MonomialOrder::grevlex4(), lead_monomial(a), lead_monomial(b)) < 0;
    });
    return reduced;
}

}  // namespace capax
