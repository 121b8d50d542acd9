#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "graphcurv/graph.hpp"

namespace graphcurv {

/// Real-valued function on the vertex set, indexed like the graph.
using VertexFunction = Eigen::VectorXd;

/// Indices where f is exactly nonzero.
std::vector<int> support(const VertexFunction& f);

// m-weighted inner product and norms.
double inner_m(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);
double norm_l1_m(const WeightedGraph& g, const VertexFunction& f);
double norm_l2_m(const WeightedGraph& g, const VertexFunction& f);
double norm_inf(const VertexFunction& f);

// -- Laplacian -------------------------------------------------------------

/// (Delta f)(x) = (1/m(x)) sum_{y~x} omega_xy (f(y) - f(x)).
VertexFunction laplacian_apply(const WeightedGraph& g, const VertexFunction& f);

/// Matrix of Delta acting on coordinate vectors. Self-adjoint in the
/// m-weighted inner product, not symmetric as a plain matrix unless m is
/// constant.
Eigen::SparseMatrix<double> laplacian_matrix(const WeightedGraph& g);

/// Restriction of Delta to functions vanishing outside omega, in the
/// index order of omega.indices(). Rows/columns outside omega are
/// dropped but diagonal entries keep the full degree, so edges leaving
/// omega act as an absorbing boundary.
Eigen::SparseMatrix<double> dirichlet_matrix(const WeightedGraph& g, const VertexSubset& omega);

// -- gradient forms ----------------------------------------------------------

/// Gamma(f,h)(x) = (1/2m(x)) sum_{y~x} omega_xy (f(y)-f(x))(h(y)-h(x)).
VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);
VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f);

/// Gamma_2(f) = (1/2) Delta Gamma(f) - Gamma(f, Delta f).
VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f);

// Single-vertex evaluations; cost proportional to the local neighborhood.
double laplacian_at(const WeightedGraph& g, const VertexFunction& f, int x);
double gamma_at(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h, int x);
double gamma_at(const WeightedGraph& g, const VertexFunction& f, int x);
double gamma2_at(const WeightedGraph& g, const VertexFunction& f, int x);

/// sum_x f Delta(h) m + sum_x Gamma(f,h) m. Exactly zero in exact
/// arithmetic on finite graphs (integration by parts).
double green_residual(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);

// -- local quadratic forms on the punctured 2-ball ---------------------------

/// Quadratic-form data of the curvature problem at a vertex x, on
/// functions pinned to f(x) = 0 with coordinates B_2(x) \ {x}
/// (1-sphere sorted by index, then 2-sphere sorted by index):
///   u^T A u = 2 Gamma_2(f)(x),  u^T diag(b) u = 2 Gamma(f)(x),
///   w . u   = Delta f(x).
struct LocalForms {
    int center = -1;
    std::vector<int> coords;   // vertex indices, S1 block then S2 block
    int s1_count = 0;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;         // diagonal of B; zero on the S2 block
    Eigen::VectorXd w;         // supported on the S1 block
};

LocalForms local_forms(const WeightedGraph& g, int x);

} // namespace graphcurv
