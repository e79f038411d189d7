#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "capax/set_models.hpp"
#include "capax/variety_basis.hpp"

namespace capax {

// theta(t) = (t, 1 - t), t in (0, 1).
struct Direction {
    double t = 0.5;
    explicit Direction(double t_);
    std::array<double, 2> theta() const { return {t, 1.0 - t}; }
};

// alpha_s: |alpha_s| = s, first coordinate round(s t) with halves rounded up.
Exp2 direction_index(const Direction& dir, int s);
// Number of bi-indices of degree s.
inline long long h(int s) { return s + 1; }

// Stream of `kind` long enough for targets of degree s (level s for Z and W,
// d s for B and C). V is required for B and C.
MonomialBasisStream make_stream(BasisKind kind, const Variety* V, int s);

// Evaluations of a basis stream (in emission order) at every point of K.
class BasisEvaluation {
public:
    BasisEvaluation(const SampledSet& K, const MonomialBasisStream& basis);
    BasisEvaluation(const SampledSet& K, std::vector<Monomial> monomials);

    const Eigen::MatrixXcd& matrix() const { return m_E; }
    const std::vector<Monomial>& monomials() const { return m_mons; }
    // Position of m in emission order; throws std::invalid_argument if absent.
    Eigen::Index index_of(const Monomial& m) const;
    const std::string& mesh_id() const { return m_mesh_id; }
    BasisKind kind() const { return m_kind; }

private:
    void fill(const SampledSet& K);
    BasisKind m_kind = BasisKind::Z;
    std::vector<Monomial> m_mons;
    Eigen::MatrixXcd m_E;
    std::string m_mesh_id;
};

struct ChebyshevOptions {
    double tol = 1e-8;       // relative bracket width (value - lower) / value
    int max_iter = 500;      // Lawson iteration cap
    int lawson_warm = 30;    // Lawson steps before the exchange phase
    bool exchange = true;    // refine with the active-set barrier solver
};

// Discrete complex minimax min_c max_i |b_i + (E c)_i|.
struct MinimaxResult {
    double value = 0.0;  // attained by `coef`
    double lower = 0.0;  // certified lower bound (weighted least squares)
    Eigen::VectorXcd coef;
    int iterations = 0;
    bool converged = false;
};
MinimaxResult complex_minimax(const Eigen::MatrixXcd& E, const Eigen::VectorXcd& b, const ChebyshevOptions& opt = {});

enum class EstimateKind { Y, Z, YBeta };
const char* to_string(EstimateKind k);

struct ChebyshevEstimate {
    EstimateKind kind = EstimateKind::Y;
    Monomial target;
    double value = 0.0;
    double lower = 0.0;
    double residual = 0.0;  // (value - lower) / value
    int iterations = 0;
    bool warning = false;   // bracket wider than tol
    std::string mesh_id;
};

// Smallest sup norm over K of target + (earlier stream monomials). Pure-w
// targets give Y (B, C, Z kinds) or Z (W kind); B or C targets with a z-part give Y_beta.
ChebyshevEstimate chebyshev_value(const BasisEvaluation& ev, const Monomial& target, const ChebyshevOptions& opt = {});
ChebyshevEstimate chebyshev_value(const SampledSet& K, const MonomialBasisStream& basis, const Monomial& target,
                                  const ChebyshevOptions& opt = {});

// Target monomial of degree alpha for a kind: z^alpha for Z, w^alpha otherwise.
Monomial directional_target(BasisKind kind, const Exp2& alpha);

// Y(alpha_s)^(1/s).
double chebyshev_transform(const BasisEvaluation& ev, const Direction& dir, int s, const ChebyshevOptions& opt = {});

struct ZaharjutaResult {
    double value = 0.0;
    std::vector<double> t, T;  // grid and transform values
    int clamped = 0;           // values at the machine floor
    bool degenerate = false;   // every transform value vanished
};

// exp of the trapezoid rule for the integral of log T(theta(t)) over (0, 1) on the
// nodes k/(grid+1), k = 1..grid, the end intervals taking the nearest node value.
// Chebyshev values are cached by alpha.
ZaharjutaResult zaharjuta_integral(const BasisEvaluation& ev, int s, int grid, const ChebyshevOptions& opt = {});

struct VandermondeLedger {
    BasisKind kind = BasisKind::Z;
    std::vector<Monomial> monomials;
    std::vector<std::size_t> points;  // indices into the sample, in selection order
    std::vector<double> step_log;     // log |Van_j / Van_{j-1}|
    std::vector<double> logdet;       // log |Van_j|, j = 1..size
    bool truncated = false;           // a zero pivot stopped the sequence
    std::size_t size() const { return points.size(); }
    // log |Van_n|; -inf past a truncation.
    double log_van(std::size_t n) const;
};

// Leja-style greedy: step j picks the first point maximizing |e_j - interpolant|,
// the interpolant being on the points already chosen.
VandermondeLedger greedy_fekete(const BasisEvaluation& ev, std::size_t n);
VandermondeLedger greedy_fekete(const SampledSet& K, const std::vector<Monomial>& monomials, std::size_t n);

struct TdiamRow {
    int n = 0;
    long long m = 0, l = 0;
    double log_van = 0.0;
    double estimate = 0.0;
};

struct TdiamResult {
    VandermondeLedger ledger;
    std::vector<TdiamRow> rows;  // n = 1..n_max
};

// (Van_{m_n})^(1/l_n), n = 1..n_max. B and C need a graph-lift sample.
TdiamResult transfinite_diameter(const SampledSet& K, const MonomialBasisStream& basis, int n_max);

struct TelescopeStep {
    int n = 0;
    Monomial monomial;
    double ratio = 0.0;        // Van_n / Van_{n-1}
    double y_value = 0.0;      // Chebyshev value of the step monomial
    double y_lower = 0.0;
    bool lower_ok = false;     // Y <= ratio
    bool upper_ok = false;     // ratio <= n Y
};

struct TelescopeReport {
    std::vector<TelescopeStep> steps;
    bool all_ok() const;
};

// Two-sided bound Y <= Van_n / Van_{n-1} <= n Y at each step 2..size(),
// Y taken for the step's own monomial, with relative slack 1e-6.
TelescopeReport telescoping_check(const VandermondeLedger& ledger, const BasisEvaluation& ev, const ChebyshevOptions& opt = {});

struct PullbackOptions {
    int n_max = 5;
    int mesh = 24;
    int grid = 8;
    int threads = 1;
    bool cross_check = true;  // d2 on basis B; needs an exact map
    ChebyshevOptions cheb;
};

struct PullbackReport {
    double lhs = 0.0;       // d1(L) = d(f^{-1}(K))
    double rhs = 0.0;       // |Res|^(-1/(2d^2)) d3(L)^(1/d)
    double d3 = 0.0;
    std::optional<double> d2_cross;
    double ratio = 0.0;
    double abs_res = 0.0;
    // Vandermonde estimates at n_max for the same quantities.
    double van_lhs = 0.0, van_d3 = 0.0;
    std::optional<double> van_d2;
    int d = 0, n_max = 0, mesh = 0, grid = 0;
    std::size_t lift_points = 0;
};

PullbackReport pullback_check(const GraphMap& f, const SetSpec& K_spec, const PullbackOptions& opt = {});

}  // namespace capax
