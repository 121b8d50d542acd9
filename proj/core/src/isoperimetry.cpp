#include "graphcurv/isoperimetry.hpp"

#include <algorithm>
#include <cmath>

#include "graphcurv/maxflow.hpp"
#include "graphcurv/spectral.hpp"

namespace graphcurv {

double boundary_volume(const WeightedGraph& g, const VertexSubset& u) {
    for (int x : u.indices()) g.check_vertex(x);
    double s = 0.0;
    for (const auto& e : g.edges())
        if (u.contains(e.u) != u.contains(e.v)) s += e.w;
    return s;
}

IsoperimetricResult cheeger_finite_exact(const WeightedGraph& g, int enumeration_cap) {
    const int n = g.num_vertices();
    if (n < 2) throw DomainError("Cheeger constant needs at least two vertices");
    if (n > enumeration_cap)
        throw EnumerationCapExceeded("exact enumeration capped at " +
                                     std::to_string(enumeration_cap) +
                                     " vertices; use the sweep bound instead");

    const double total = g.total_measure();
    // One representative per bipartition class: subsets of {1..n-1},
    // vertex 0 always on the complement side.
    const std::uint64_t classes = (1ull << (n - 1)) - 1;

    double best_ratio = std::numeric_limits<double>::infinity();
    std::vector<int> best_subset;
    long long visited = 0;

    std::vector<int> members;
    members.reserve(n);
    for (std::uint64_t mask = 1; mask <= classes; ++mask) {
        ++visited;
        members.clear();
        double vol = 0.0;
        for (int i = 0; i + 1 < n; ++i)
            if (mask & (1ull << i)) {
                members.push_back(i + 1);
                vol += g.measure(i + 1);
            }
        double cut = 0.0;
        for (const auto& e : g.edges()) {
            const bool in_u = e.u != 0 && (mask & (1ull << (e.u - 1)));
            const bool in_v = e.v != 0 && (mask & (1ull << (e.v - 1)));
            if (in_u != in_v) cut += e.w;
        }
        const double vol_c = total - vol;
        const double ratio = cut / std::min(vol, vol_c);

        // Report the smaller-volume side; on equal volumes the side
        // holding vertex 0 sorts lexicographically first.
        std::vector<int> side;
        if (vol < vol_c) {
            side = members;
        } else {
            side.reserve(n - members.size());
            std::size_t j = 0;
            for (int v = 0; v < n; ++v) {
                if (j < members.size() && members[j] == v) {
                    ++j;
                    continue;
                }
                side.push_back(v);
            }
        }
        if (ratio < best_ratio || (ratio == best_ratio && side < best_subset)) {
            best_ratio = ratio;
            best_subset = std::move(side);
        }
    }

    IsoperimetricResult res;
    res.value = best_ratio;
    res.argmin = VertexSubset(g, best_subset);
    res.method = CheegerMethod::enumeration;
    res.visited = visited;
    return res;
}

IsoperimetricResult cheeger_subset(const WeightedGraph& g, const VertexSubset& omega) {
    if (omega.empty()) throw EmptySubset("cheeger_subset needs a nonempty subset");
    const auto& idx = omega.indices();
    const int k = static_cast<int>(idx.size());
    std::vector<int> local(g.num_vertices(), -1);
    for (int i = 0; i < k; ++i) local[idx[i]] = i;

    const double vol_omega = volume(g, omega);

    // Capacity of x toward the exterior of omega; part of every cut.
    std::vector<double> exterior(k, 0.0);
    for (int i = 0; i < k; ++i)
        for (auto& [y, w] : g.neighbors(idx[i]))
            if (local[y] < 0) exterior[i] += w;

    auto ratio_of = [&](const VertexSubset& u) {
        return boundary_volume(g, u) / volume(g, u);
    };

    VertexSubset best_u = omega;
    double beta = ratio_of(best_u);
    int improving = 0;

    const double tol = 1e-12 * vol_omega;
    for (int round = 0; round < k + 2; ++round) {
        // Decide min over U of cut(U) - beta vol(U) < 0 via a min cut:
        // the cut value equals that objective plus beta * vol(omega).
        const int source = k;
        const int sink = k + 1;
        MaxFlowNetwork net(k + 2);
        for (int i = 0; i < k; ++i) {
            net.add_edge(source, i, beta * g.measure(idx[i]));
            if (exterior[i] > 0.0) net.add_edge(i, sink, exterior[i]);
        }
        for (const auto& e : g.edges()) {
            const int iu = local[e.u], iv = local[e.v];
            if (iu >= 0 && iv >= 0) net.add_edge(iu, iv, e.w, e.w);
        }
        const double flow = net.max_flow(source, sink);
        if (flow >= beta * vol_omega - tol) break;  // no improving subset

        const auto side = net.min_cut_source_side();
        std::vector<int> members;
        for (int i = 0; i < k; ++i)
            if (side[i]) members.push_back(idx[i]);
        if (members.empty()) break;
        VertexSubset u(g, std::move(members));
        const double r = ratio_of(u);
        if (r >= beta - tol) break;
        best_u = std::move(u);
        beta = r;
        ++improving;
    }

    IsoperimetricResult res;
    res.value = ratio_of(best_u);
    res.argmin = std::move(best_u);
    res.method = CheegerMethod::dinkelbach;
    res.iterations = improving;
    return res;
}

IsoperimetricResult cheeger_sweep(const WeightedGraph& g) {
    const int n = g.num_vertices();
    if (n < 2) throw DomainError("sweep needs at least two vertices");
    const SpectralResult spec = lambda1_finite(g);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (spec.eigenvector[a] != spec.eigenvector[b])
            return spec.eigenvector[a] < spec.eigenvector[b];
        return a < b;
    });

    const double total = g.total_measure();
    std::vector<char> in_u(n, 0);
    double vol = 0.0;
    double cut = 0.0;
    double best_ratio = std::numeric_limits<double>::infinity();
    int best_prefix = 1;

    for (int kk = 0; kk + 1 < n; ++kk) {
        const int x = order[kk];
        in_u[x] = 1;
        vol += g.measure(x);
        for (auto& [y, w] : g.neighbors(x)) cut += in_u[y] ? -w : w;
        const double ratio = cut / std::min(vol, total - vol);
        if (ratio < best_ratio) {
            best_ratio = ratio;
            best_prefix = kk + 1;
        }
    }

    std::vector<int> members(order.begin(), order.begin() + best_prefix);
    IsoperimetricResult res;
    res.value = best_ratio;
    res.argmin = VertexSubset(g, std::move(members));
    res.method = CheegerMethod::sweep;
    res.visited = n - 1;
    return res;
}

} // namespace graphcurv
