#pragma once

#include <Eigen/SparseCore>

#include "graphcurv/operators.hpp"

namespace graphcurv {

enum class EigenSolverKind { automatic, dense, lanczos };

struct SpectralResult {
    double lambda = 0.0;
    /// Full-length eigenvector (zero outside a Dirichlet subset),
    /// normalized to unit m-weighted norm.
    VertexFunction eigenvector;
    EigenSolverKind solver = EigenSolverKind::dense;
    /// ||(-Delta) v - lambda v|| in the m-weighted norm.
    double residual = 0.0;
};

/// Dense eigensolves up to this size; Lanczos beyond it.
inline constexpr int kDenseEigenCap = 2000;

/// Similarity transform M^{1/2} (-Delta) M^{-1/2} restricted to omega:
/// a plain symmetric positive semidefinite matrix with the Dirichlet
/// spectrum.
Eigen::SparseMatrix<double> symmetrized_dirichlet(const WeightedGraph& g,
                                                  const VertexSubset& omega);

/// Smallest eigenvalue of the Dirichlet restriction of -Delta to omega.
/// Realizes the spectral bottom over functions supported in omega.
SpectralResult lambda_bottom_dirichlet(const WeightedGraph& g, const VertexSubset& omega,
                                       EigenSolverKind solver = EigenSolverKind::automatic);

/// First nonzero eigenvalue of -Delta on a finite connected graph
/// (smallest eigenvalue on the m-orthogonal complement of constants).
SpectralResult lambda1_finite(const WeightedGraph& g,
                              EigenSolverKind solver = EigenSolverKind::automatic);

/// <f, -Delta f>_m / <f, f>_m.
double rayleigh_quotient(const WeightedGraph& g, const VertexFunction& f);

} // namespace graphcurv
