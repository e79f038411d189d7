#pragma once

// Random inputs shared by the unit and acceptance tests.

#include <random>

#include "capax/graph_map.hpp"
#include "capax/resultant.hpp"
#include "capax/variety_basis.hpp"

namespace capax::testing {

inline GaussRational random_rational(std::mt19937_64& rng, int num = 9, int den = 4, bool complex = false)
{
    std::uniform_int_distribution<int> n(-num, num), dd(1, den);
    GaussRational c(mpq_class(n(rng), dd(rng)));
    c.re.canonicalize();
    if (complex) {
        mpq_class im(n(rng), dd(rng));
        im.canonicalize();
        c.im = im;
    }
    return c;
}

inline GaussRational random_nonzero(std::mt19937_64& rng, int num = 9, int den = 4)
{
    for (;;) {
        GaussRational c = random_rational(rng, num, den);
        if (!c.is_zero()) return c;
    }
}

// Random exact z-polynomial of exact degree d (every monomial of degree <= d present with prob. 1/2,
// the full top form always drawn).
inline ExactPoly random_z_poly(std::mt19937_64& rng, int d, bool complex = false)
{
    std::bernoulli_distribution coin(0.5);
    ExactPoly p;
    for (int e = 0; e <= d; ++e)
        for (int a = 0; a <= e; ++a)
            if (e == d || coin(rng)) p.add_term(Monomial::z(a, e - a), random_rational(rng, 9, 4, complex));
    if (p.degree() != d) p.add_term(Monomial::z(d, 0), GaussRational(1));
    return p;
}

inline ExactPoly random_poly4(std::mt19937_64& rng, int max_terms, int max_deg)
{
    std::uniform_int_distribution<int> nt(0, max_terms);
    ExactPoly p;
    int n = nt(rng);
    for (int t = 0; t < n; ++t) {
        int e[4];
        int left = max_deg;
        for (int& x : e) {
            x = std::uniform_int_distribution<int>(0, left)(rng);
            left -= x;
        }
        p.add_term(Monomial(e[0], e[1], e[2], e[3]), random_rational(rng, 9, 5, true));
    }
    return p;
}

inline GraphMap random_regular_map(std::mt19937_64& rng, int d)
{
    for (;;) {
        GraphMap f = GraphMap::from_exact(random_z_poly(rng, d), random_z_poly(rng, d));
        if (f.regular() == Tristate::Yes) return f;
    }
}

// Regular map of degree d with the generic staircase.
inline GraphMap random_generic_map(std::mt19937_64& rng, int d)
{
    for (;;) {
        GraphMap f = random_regular_map(rng, d);
        if (Variety(f).generic()) return f;
    }
}

}  // namespace capax::testing
