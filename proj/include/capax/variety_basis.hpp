#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "capax/graph_map.hpp"

namespace capax {

using Exp2 = std::array<int, 2>;

class NonZeroDimensional : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Standard monomials of <f1, f2> in GrevlexZ, sorted increasingly.
struct StandardMonomialSet {
    std::vector<Exp2> exponents;
    bool contains(const Exp2& b) const;
    std::size_t size() const { return exponents.size(); }
};

// The d^2 monomials outside <z1 z2^(d-1), z2^d> of lowest z2-degree per
// total degree: z1^a z2^b with b <= min(e, 2d-2-e) where e = a + b.
StandardMonomialSet generic_staircase(int d);

// Groebner data for V = {w = f(z)}. Construction runs Buchberger twice:
// on <f1, f2> (staircase) and on <f1 - w1, f2 - w2> (normal forms).
class Variety {
public:
    explicit Variety(const GraphMap& f);

    const GraphMap& map() const { return m_map; }
    const StandardMonomialSet& staircase() const { return m_staircase; }
    const std::vector<ExactPoly>& ideal_basis() const { return m_gb_z; }
    const std::vector<ExactPoly>& graph_basis() const { return m_gb_graph; }
    bool generic() const;

    // Representative of p modulo <f1 - w1, f2 - w2> supported on B.
    ExactPoly normal_form(const ExactPoly& p) const;
    bool in_basis(const Monomial& m) const { return m_staircase.contains(m.beta()); }

private:
    GraphMap m_map;
    std::vector<ExactPoly> m_gb_z, m_gb_graph;
    StandardMonomialSet m_staircase;
};

StandardMonomialSet staircase(const GraphMap& f);
ExactPoly normal_form(const ExactPoly& p, const GraphMap& f);

enum class BasisKind { Z, W, B, C };

const char* to_string(BasisKind k);
BasisKind parse_basis_kind(const std::string& s);

// Monomials of one basis kind, grouped by filtration level. For Z and W the
// level is the total degree; for B and C it is d|alpha| + |beta|.
class MonomialBasisStream {
public:
    MonomialBasisStream(BasisKind kind, int n_max);                                   // Z, W
    MonomialBasisStream(BasisKind kind, const Variety& V, int n_max);                 // B, C
    // C stream where levels <= 2d-2 come from `low` instead of requiring the
    // generic staircase. Used by the graded independence test.
    static MonomialBasisStream c_stream_unchecked(int d, const StandardMonomialSet& low, int n_max);

    BasisKind kind() const { return m_kind; }
    MonomialOrder order() const { return m_order; }
    int d() const { return m_d; }
    int n_max() const { return m_levels.empty() ? -1 : static_cast<int>(m_levels.size()) - 1; }

    const std::vector<Monomial>& level(int n) const;
    // Concatenation of levels 0..n in emission order.
    std::vector<Monomial> up_to(int n) const;
    std::size_t count_up_to(int n) const;
    // Basis for the k-th space of the filtration: degree <= k for Z, W and
    // level <= dk for B, C.
    std::vector<Monomial> block(int k) const { return up_to(m_kind == BasisKind::Z || m_kind == BasisKind::W ? k : m_d * k); }
    // Filtration index of a monomial: smallest k with m in block(k).
    int filtration_degree(const Monomial& m) const;

    // Single-consumer iteration over all monomials up to n_max.
    std::optional<Monomial> next();
    void rewind() { m_cursor_level = 0; m_cursor_pos = 0; }

private:
    MonomialBasisStream() = default;
    BasisKind m_kind = BasisKind::Z;
    MonomialOrder m_order;
    int m_d = 1;
    std::vector<std::vector<Monomial>> m_levels;
    std::size_t m_cursor_level = 0, m_cursor_pos = 0;
};

// Levels of B up to n_max for staircase I and degree d.
std::vector<std::vector<Monomial>> b_levels(int d, const StandardMonomialSet& I, int n_max);
// Levels of C: levels <= 2d-2 from `low`, the rest by the inductive rule.
std::vector<std::vector<Monomial>> c_levels(int d, const StandardMonomialSet& low, int n_max);

struct StarEntry {
    Exp2 beta{0, 0};
    bool found = false;
    Exp2 beta_tilde{0, 0};
    GaussRational C;
    Exp2 gamma{0, 0};
};

struct StarCertificate {
    std::vector<StarEntry> entries;
    bool complete() const;
};

// For each beta in I find beta~ with normal_form(z^beta z^beta~) = C w^gamma + lower
// in GraphWeighted(d). Tries z2^j, j = 0..4d, then all |beta~| <= 4d.
StarCertificate check_star(const Variety& V, const MonomialOrder& order);
bool verify_star(const Variety& V, const StarEntry& e);

struct FiltrationCounts {
    long long m = 0, l = 0;
};
FiltrationCounts filtration_counts(int d, int n);
// (n+1)(n+2)/2 and n(n+1)(n+2)/3 for the plain graded bases.
FiltrationCounts graded_counts(int n);

// Graded independence: for every level nu <= n the images fhat^*(G_{nu-1,nu})
// are linearly independent in C[z]_{=nu}. Implies independence of f^*(G_n).
bool independence_check(const GraphMap& f, int n);

}  // namespace capax
