#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace capax {

// Hard cap on total degree handled anywhere in the library.
inline constexpr int kDegreeCap = 256;

// Variable slots: 0 = w1, 1 = w2, 2 = z1, 3 = z2.
struct Monomial {
    std::array<int, 4> e{0, 0, 0, 0};

    Monomial() = default;
    Monomial(int w1, int w2, int z1, int z2);
    static Monomial w(int a1, int a2) { return Monomial(a1, a2, 0, 0); }
    static Monomial z(int b1, int b2) { return Monomial(0, 0, b1, b2); }
    static Monomial var(int slot);

    int alpha_deg() const { return e[0] + e[1]; }
    int beta_deg() const { return e[2] + e[3]; }
    int degree() const { return alpha_deg() + beta_deg(); }
    std::array<int, 2> alpha() const { return {e[0], e[1]}; }
    std::array<int, 2> beta() const { return {e[2], e[3]}; }
    bool is_one() const { return degree() == 0; }
    bool is_pure_w() const { return beta_deg() == 0; }
    bool is_pure_z() const { return alpha_deg() == 0; }

    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    // Requires divides(m).
    Monomial quotient_of(const Monomial& m) const;
    Monomial lcm(const Monomial& m) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

std::string to_string(const Monomial& m);
inline std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << to_string(m); }

struct MonomialOrder {
    enum class Kind { Grevlex4, GraphWeighted, GrevlexZ, GrevlexW };
    Kind kind = Kind::Grevlex4;
    int d = 1;  // weight of a w-factor, GraphWeighted only

    static MonomialOrder grevlex4() { return {Kind::Grevlex4, 1}; }
    static MonomialOrder graph_weighted(int d) { return {Kind::GraphWeighted, d}; }
    static MonomialOrder grevlex_z() { return {Kind::GrevlexZ, 1}; }
    static MonomialOrder grevlex_w() { return {Kind::GrevlexW, 1}; }
};

std::string to_string(const MonomialOrder& o);

// GrevlexZ / GrevlexW ignore the other variable block, so they are total
// orders only on z-only (resp. w-only) monomials.
std::strong_ordering compare_monomials(const MonomialOrder& order, const Monomial& a, const Monomial& b);

struct Grevlex4Less {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        return compare_monomials(MonomialOrder::grevlex4(), a, b) < 0;
    }
};

struct OrderLess {
    MonomialOrder order;
    bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(order, a, b) < 0; }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const
    {
        std::size_t h = 0;
        for (int x : m.e) h = h * 1000003u + static_cast<std::size_t>(x);
        return h;
    }
};

}  // namespace capax
