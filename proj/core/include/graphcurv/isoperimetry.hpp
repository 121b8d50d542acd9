#pragma once

#include "graphcurv/graph.hpp"

namespace graphcurv {

enum class CheegerMethod { enumeration, dinkelbach, sweep };

struct IsoperimetricResult {
    double value = 0.0;
    VertexSubset argmin;
    CheegerMethod method = CheegerMethod::enumeration;
    /// Improving Dinkelbach iterations, or candidate subsets visited.
    int iterations = 0;
    long long visited = 0;
};

/// |dU| = sum of omega over ordered pairs (x in U, y not in U).
double boundary_volume(const WeightedGraph& g, const VertexSubset& u);

inline constexpr int kDefaultEnumerationCap = 20;

/// Exact finite-graph constant min |dU| / min(|U|, |U^c|) by enumerating
/// the 2^(n-1) - 1 bipartition classes. Ties break to the
/// lexicographically smallest subset.
IsoperimetricResult cheeger_finite_exact(const WeightedGraph& g,
                                         int enumeration_cap = kDefaultEnumerationCap);

/// Exact minimizer of |dU| / |U| over nonempty U inside omega, boundary
/// measured toward all of V. Dinkelbach iteration with an s-t min-cut
/// decision problem per step.
IsoperimetricResult cheeger_subset(const WeightedGraph& g, const VertexSubset& omega);

/// Spectral-sweep upper bound for the finite-graph constant: best prefix
/// of the ordering induced by the first nontrivial eigenvector.
IsoperimetricResult cheeger_sweep(const WeightedGraph& g);

} // namespace graphcurv
