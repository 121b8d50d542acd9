#pragma once

#include <Eigen/Core>

#include "graphcurv/operators.hpp"

namespace graphcurv {

/// Intrinsic pseudo metric on a finite graph: shortest-path extension of
/// per-edge lengths satisfying sum_y omega_xy rho(x,y)^2 <= m(x).
struct IntrinsicMetric {
    /// All-pairs distances.
    Eigen::MatrixXd dist;
    /// Jump size: the largest distance across a single edge.
    double jump_size = 0.0;
    /// Per-vertex slack m(x) - sum_y omega_xy rho(x,y)^2; nonnegative.
    Eigen::VectorXd slack;

    double operator()(int x, int y) const { return dist(x, y); }
};

/// Edge lengths rho_0(x,y) = min(sqrt(m(x)/Deg(x)), sqrt(m(y)/Deg(y))),
/// extended by shortest paths. Equals the hop metric on normalized
/// graphs. The intrinsic condition is verified on construction.
IntrinsicMetric canonical_intrinsic_metric(const WeightedGraph& g);

/// min over pairs (a in A, b in B) of rho(a, b).
double distance_between_sets(const IntrinsicMetric& metric, const VertexSubset& a,
                             const VertexSubset& b);

/// Heat-kernel decay exponent
///   zeta_s(t, r) = (1/s^2) (r s asinh(r s / t) - sqrt(t^2 + r^2 s^2) + t),
/// for jump size s > 0, time t > 0, distance r >= 0.
double zeta(double s, double t, double r);

struct DggReport {
    double lhs = 0.0;        // <P_t f, h>_m
    double rhs = 0.0;        // e^{-lambda t - zeta} ||f||_2 ||h||_2
    double margin = 0.0;     // rhs - lhs
    double distance = 0.0;   // rho(A, B)
    double exponent = 0.0;   // lambda t + zeta_s(t, rho(A,B))
    double tolerance = 1e-9;
    bool pass = false;
};

/// Heat-kernel decay bound between functions supported on A and B.
/// lambda must not exceed the bottom of the spectrum of the generator
/// (0 for a whole finite graph; a Dirichlet eigenvalue on truncations).
DggReport dgg_check(const WeightedGraph& g, const VertexSubset& a, const VertexSubset& b,
                    const VertexFunction& f, const VertexFunction& h, double t, double lambda,
                    const IntrinsicMetric& metric);

} // namespace graphcurv
