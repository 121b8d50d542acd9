#pragma once

// Test-side oracles, independent of the library's solution paths.

#include <cstdint>
#include <limits>
#include <vector>

#include "graphcurv/graph.hpp"
#include "graphcurv/detail/rng.hpp"

namespace oracles {

/// Exhaustive minimum of |dU| / |U| over nonempty U inside omega
/// (boundary toward all of V), by enumerating every subset.
struct SubsetCheegerOracle {
    double value = std::numeric_limits<double>::infinity();
    std::vector<int> argmin;
};

inline SubsetCheegerOracle exhaustive_subset_cheeger(const graphcurv::WeightedGraph& g,
                                                     const graphcurv::VertexSubset& omega) {
    const auto& idx = omega.indices();
    const int k = static_cast<int>(idx.size());
    std::vector<int> local(g.num_vertices(), -1);
    for (int i = 0; i < k; ++i) local[idx[i]] = i;

    // Split the boundary of U into the part leaving omega (fixed per
    // vertex) and internal crossings.
    std::vector<double> exterior(k, 0.0);
    struct Edge {
        int a, b;
        double w;
    };
    std::vector<Edge> internal;
    for (const auto& e : g.edges()) {
        const int iu = local[e.u], iv = local[e.v];
        if (iu >= 0 && iv >= 0)
            internal.push_back({iu, iv, e.w});
        else if (iu >= 0)
            exterior[iu] += e.w;
        else if (iv >= 0)
            exterior[iv] += e.w;
    }

    SubsetCheegerOracle best;
    for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
        double cut = 0.0;
        double vol = 0.0;
        for (int i = 0; i < k; ++i)
            if (mask & (1ull << i)) {
                cut += exterior[i];
                vol += g.measure(idx[i]);
            }
        for (const auto& e : internal)
            if (((mask >> e.a) & 1) != ((mask >> e.b) & 1)) cut += e.w;
        const double ratio = cut / vol;
        if (ratio < best.value) {
            best.value = ratio;
            best.argmin.clear();
            for (int i = 0; i < k; ++i)
                if (mask & (1ull << i)) best.argmin.push_back(idx[i]);
        }
    }
    return best;
}

/// Deterministic random vertex function with entries in [-1, 1].
inline Eigen::VectorXd random_function(graphcurv::detail::Rng& rng, int n) {
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = rng.uniform(-1.0, 1.0);
    return f;
}

} // namespace oracles
