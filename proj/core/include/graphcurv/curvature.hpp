#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "graphcurv/operators.hpp"

namespace graphcurv {

/// Dimension parameter of CD(n, K); any value in (0, inf].
inline constexpr double kDimInf = std::numeric_limits<double>::infinity();

/// Local function achieving (or violating) a curvature bound at a vertex,
/// given by its values on B_2(center) \ {center}; the lift vanishes at
/// the center and outside the 2-ball.
struct LocalFunction {
    int center = -1;
    std::vector<int> coords;
    Eigen::VectorXd values;

    /// Dense lift onto the whole vertex set.
    VertexFunction lift(const WeightedGraph& g) const;
};

struct VertexCurvature {
    int vertex = -1;
    double k = 0.0;
    LocalFunction witness;
    /// Numerical rank of the eliminated 2-sphere block.
    int elimination_rank = 0;
    /// Gamma_2 - (1/n)(Delta f)^2 - k * Gamma at the witness, recomputed
    /// through the global forms; near zero by construction.
    double witness_residual = 0.0;
};

struct CurvatureResult {
    double n = kDimInf;
    std::vector<VertexCurvature> per_vertex;
    double global_k = 0.0;
    int argmin_vertex = -1;
};

/// Largest K such that CD(n, K) holds at x, with a minimizing witness:
/// the smallest eigenvalue of the local form pencil after eliminating
/// the 2-sphere coordinates.
VertexCurvature curvature_at(const WeightedGraph& g, int x, double n);

/// curvature_at at every vertex plus the global minimum.
CurvatureResult curvature_function(const WeightedGraph& g, double n);

struct CdViolation {
    int vertex = -1;
    LocalFunction witness;
    /// Gamma_2 - (1/n)(Delta f)^2 - K * Gamma at the witness; negative.
    double slack = 0.0;
};

/// Empty result means CD(n, K) holds everywhere (within 1e-10).
std::optional<CdViolation> cd_check(const WeightedGraph& g, double n, double k);

/// Independent estimate of curvature_at by random-restart projected
/// gradient descent on the Rayleigh ratio
///   [Gamma_2(f)(x) - (1/n)(Delta f)^2(x)] / Gamma(f)(x)
/// over functions supported in B_2(x) with f(x) = 0. Never falls below
/// the true minimum (it evaluates genuine ratios); reaches it with
/// enough restarts.
double curvature_bruteforce(const WeightedGraph& g, int x, double n,
                            int trials, std::uint64_t seed);

/// Single descent from a given starting local function.
double curvature_descent_from(const WeightedGraph& g, const LocalFunction& start, double n);

} // namespace graphcurv
