#pragma once

#include <stdexcept>
#include <vector>

#include "capax/polynomial.hpp"

namespace capax {

// Reduced, monic Groebner basis in Grevlex4 (which agrees with GrevlexZ on
// z-only input). Buchberger with the normal pair strategy and the coprime
// leading-term criterion.
std::vector<ExactPoly> groebner_basis(const std::vector<ExactPoly>& generators, std::size_t max_pairs = 200000);

// Full reduction of p modulo G; G must be monic.
ExactPoly reduce(const ExactPoly& p, const std::vector<ExactPoly>& G);

}  // namespace capax
