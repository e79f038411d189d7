#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "capax/graph_map.hpp"

namespace capax {

// (w1, w2, z1, z2)
using Point4 = std::array<cplx, 4>;
using Point2 = std::array<cplx, 2>;

struct SetSpec {
    enum class Shape { Polydisc, Torus, Box, Points };
    Shape shape = Shape::Torus;
    // r1, r2 for tori and polydiscs; a1, b1, a2, b2 for boxes.
    std::array<double, 4> params{1.0, 1.0, 0.0, 0.0};
    std::string path;
    std::array<int, 2> mesh{16, 16};

    // Throws std::invalid_argument on bad radii, bounds or mesh counts.
    void validate() const;
    std::string to_string() const;
};

// "torus:r1,r2", "polydisc:r1,r2", "box:a1,b1,a2,b2", "points:<path>".
SetSpec parse_set_spec(const std::string& text, int mesh = 16);

enum class Provenance { Direct, GraphLift, PreimageProjection };
const char* to_string(Provenance p);

// A finite sample of a compact set. Sets in C^2 (direct meshes and preimage
// projections) carry their coordinates in both slot pairs, so they can serve as
// either K_w or K_z. Graph lifts carry (w, z) with w = f(z).
struct SampledSet {
    std::vector<Point4> points;
    Provenance provenance = Provenance::Direct;
    SetSpec spec;
    std::optional<GraphMap> map;

    std::size_t size() const { return points.size(); }
    bool on_graph() const { return provenance == Provenance::GraphLift; }
    std::string mesh_id() const;
};

SampledSet build_mesh(const SetSpec& spec);
SampledSet point_set(const std::vector<Point2>& pts);

struct Fiber {
    Point2 w{};
    std::vector<Point2> roots;
    std::vector<bool> multiple;  // root lies within 1e-6 of another root
    double residual = 0.0;       // max |f(z) - w| over the roots
    double scale = 1.0;
    bool near_discriminant = false;
    int dropped = 0;             // roots lost to Newton divergence
};

class DegenerateFiber : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Precomputed elimination data for repeated fiber solves of one map.
class FiberSolver {
public:
    explicit FiberSolver(const GraphMap& f);
    Fiber solve(const Point2& w) const;
    const GraphMap& map() const { return m_map; }

private:
    GraphMap m_map;
    int m_d1, m_d2;
    double m_c, m_s;  // rotation z = R u
    // g_i(u) coefficients: m_g[i][a][b] multiplies u1^a u2^b.
    std::array<std::vector<std::vector<cplx>>, 2> m_g;
    std::array<std::array<FloatPoly, 2>, 2> m_jac;
};

Fiber fiber(const GraphMap& f, const Point2& w);

// L = {(w, z) : w in K, f(z) = w}. K must have direct provenance.
SampledSet graph_lift(const GraphMap& f, const SampledSet& K, int threads = 1);
// z-components of a graph lift, as a set in C^2.
SampledSet preimage_projection(const SampledSet& L);
// w-components of a graph lift, as a set in C^2.
SampledSet w_projection(const SampledSet& L);

struct FiberAverage {
    FloatPoly poly;          // pure w, degree <= deg_bound
    double residual = 0.0;   // max interpolation misfit / max(1, max |q|)
    int samples = 0;
    int resamples = 0;
};

// Least-squares fit of q(w) = mean of p(w, z) over f^{-1}(w) on a seeded random
// w-grid. Throws DegenerateFiber if a grid point stays near the branch locus
// after 5 redraws.
FiberAverage fiber_average_poly(const FloatPoly& p, const GraphMap& f, int deg_bound, std::uint64_t seed = 1);
// Raw fiber mean of p over f^{-1}(w).
cplx fiber_mean(const FloatPoly& p, const Fiber& F);

}  // namespace capax
