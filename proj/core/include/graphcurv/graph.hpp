#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "graphcurv/errors.hpp"

namespace graphcurv {

/// How the vertex measure m is derived from the edge weights.
enum class MeasureKind { normalized, combinatorial, custom };

struct MeasurePolicy {
    MeasureKind kind = MeasureKind::normalized;
    /// Only read when kind == custom; one positive value per vertex in
    /// final index order. Empty means "take m from the document".
    std::vector<double> values;

    static MeasurePolicy normalized() { return {MeasureKind::normalized, {}}; }
    static MeasurePolicy combinatorial() { return {MeasureKind::combinatorial, {}}; }
    static MeasurePolicy custom(std::vector<double> m) { return {MeasureKind::custom, std::move(m)}; }
};

struct WeightedEdge {
    int u;
    int v;
    double w;
};

/// Immutable connected weighted graph G = (V, E, m, omega) with dense
/// 0-based vertex indices. All operations in the library take this type
/// by const reference; it is safe to share across threads.
class WeightedGraph {
public:
    /// Builds and validates a graph. `edges` lists each undirected edge
    /// exactly once (u != v, w > 0); weights are symmetric by
    /// construction. Throws SchemaError, NonpositiveMeasureError or
    /// DisconnectedError on invalid input.
    WeightedGraph(std::vector<std::string> labels,
                  std::vector<WeightedEdge> edges,
                  const MeasurePolicy& policy);

    int num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }

    double measure(int x) const { return m_[x]; }
    const Eigen::VectorXd& measures() const { return m_; }

    /// Weighted degree Deg(x) = sum of incident edge weights.
    double degree(int x) const { return deg_[x]; }
    const Eigen::VectorXd& degrees() const { return deg_; }

    /// Neighbors of x with weights, sorted by neighbor index.
    std::span<const std::pair<int, double>> neighbors(int x) const {
        return {adj_[x].data(), adj_[x].size()};
    }

    /// omega(x, y); zero when (x, y) is not an edge.
    double weight(int x, int y) const;
    bool adjacent(int x, int y) const { return weight(x, y) > 0.0; }

    /// Each undirected edge once, u < v, ordered lexicographically.
    const std::vector<WeightedEdge>& edges() const { return edges_; }

    const std::string& label(int x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }
    /// Index of an original id; throws UnknownVertex.
    int index_of(const std::string& label) const;

    MeasureKind measure_kind() const { return measure_kind_; }

    /// Total measure sum_x m(x).
    double total_measure() const { return m_.sum(); }

    void check_vertex(int x) const {
        if (x < 0 || x >= n_) throw UnknownVertex("vertex index out of range: " + std::to_string(x));
    }

private:
    int n_ = 0;
    std::vector<std::string> labels_;
    std::map<std::string, int> label_index_;
    Eigen::VectorXd m_;
    Eigen::VectorXd deg_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<WeightedEdge> edges_;
    MeasureKind measure_kind_ = MeasureKind::normalized;
};

/// Subset of a graph's vertices with O(1) membership tests.
class VertexSubset {
public:
    VertexSubset() = default;
    VertexSubset(const WeightedGraph& g, std::vector<int> indices);

    static VertexSubset all(const WeightedGraph& g);
    static VertexSubset single(const WeightedGraph& g, int x);

    const std::vector<int>& indices() const { return indices_; }
    bool contains(int x) const {
        return x >= 0 && x < static_cast<int>(mask_.size()) && mask_[x] != 0;
    }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    int host_size() const { return static_cast<int>(mask_.size()); }
    bool is_all() const { return size() == static_cast<std::size_t>(host_size()); }

    VertexSubset complement() const;

private:
    std::vector<int> indices_;       // sorted, unique
    std::vector<unsigned char> mask_;
};

// -- ingestion / serialization ------------------------------------------

/// Parses the graph JSON document. The document's "measure" field picks
/// the policy. Vertices are reindexed densely in sorted-id order.
WeightedGraph load_graph(const std::string& text);

/// Same, but the given policy overrides the document's measure field.
WeightedGraph load_graph(const std::string& text, const MeasurePolicy& policy);

/// Canonical JSON document for the graph; load_graph(serialize(g))
/// reproduces g exactly (same indices, measures, weights).
std::string serialize(const WeightedGraph& g);

/// Stable content digest used in reports (hex string).
std::string digest(const WeightedGraph& g);

// -- generators ----------------------------------------------------------

inline constexpr int kDefaultVertexCap = 100000;

WeightedGraph make_path(int n, const MeasurePolicy& policy, int cap = kDefaultVertexCap);
WeightedGraph make_cycle(int n, const MeasurePolicy& policy, int cap = kDefaultVertexCap);
WeightedGraph make_complete(int n, const MeasurePolicy& policy, int cap = kDefaultVertexCap);
WeightedGraph make_hypercube(int d, const MeasurePolicy& policy, int cap = kDefaultVertexCap);
/// Combinatorial ball of radius r around the origin of Z^d, unit weights.
WeightedGraph make_lattice_ball(int d, int r, const MeasurePolicy& policy, int cap = kDefaultVertexCap);
/// Rooted ball of radius r in the degree-regular infinite tree.
WeightedGraph make_tree_ball(int degree, int r, const MeasurePolicy& policy, int cap = kDefaultVertexCap);

/// Seeded random connected graph: random spanning tree plus extra edges,
/// weights uniform in [w_lo, w_hi]. Used by the verification batteries.
WeightedGraph make_random_connected(int n, std::uint64_t seed,
                                    double w_lo, double w_hi,
                                    const MeasurePolicy& policy,
                                    double extra_edge_prob = 0.3);

/// Family dispatcher used by the CLI and the suite runner.
/// Known names: path, cycle, complete, hypercube, lattice_ball, tree_ball.
WeightedGraph generate(const std::string& family,
                       const std::map<std::string, int>& params,
                       const MeasurePolicy& policy,
                       int cap = kDefaultVertexCap);

// -- basic quantities ------------------------------------------------------

/// D_omega = max over incident pairs of m(x)/omega(x,y).
/// Throws DomainError on an edgeless graph.
double d_omega(const WeightedGraph& g);

/// |U| = sum of m over U.
double volume(const WeightedGraph& g, const VertexSubset& u);

/// Hop ball of radius r around x (always contains x).
VertexSubset ball(const WeightedGraph& g, int x, int r);

// -- measure rescaling (covariance tests, harness probes) -----------------

/// Same graph with measure c * m (custom policy).
WeightedGraph scale_measure(const WeightedGraph& g, double c);

/// Same graph with weights c * omega and measure c * m.
WeightedGraph scale_jointly(const WeightedGraph& g, double c);

} // namespace graphcurv
