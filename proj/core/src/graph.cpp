#include "graphcurv/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "graphcurv/detail/rng.hpp"

namespace graphcurv {

using nlohmann::ordered_json;

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

std::vector<std::string> padded_labels(int n) {
    int width = 1;
    for (int v = n - 1; v >= 10; v /= 10) ++width;
    std::vector<std::string> labels(n);
    char buf[32];
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%0*d", width > 10 ? 10 : width, i);
        labels[i] = buf;
    }
    return labels;
}

void check_cap(long long count, int cap) {
    if (count > cap)
        throw SizeCapExceeded("generator would produce " + std::to_string(count) +
                              " vertices, cap is " + std::to_string(cap));
}

} // namespace

WeightedGraph::WeightedGraph(std::vector<std::string> labels,
                             std::vector<WeightedEdge> edges,
                             const MeasurePolicy& policy)
    : n_(static_cast<int>(labels.size())), labels_(std::move(labels)) {
    if (n_ == 0) throw SchemaError("graph has no vertices");
    for (int i = 0; i < n_; ++i) {
        if (!label_index_.emplace(labels_[i], i).second)
            throw SchemaError("duplicate vertex id: " + labels_[i]);
    }

    adj_.assign(n_, {});
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw SchemaError("edge endpoint out of range");
        if (e.u == e.v) throw SchemaError("self loop at vertex " + labels_[e.u]);
        if (!std::isfinite(e.w) || e.w <= 0.0)
            throw SchemaError("edge weight must be finite and positive");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!seen.emplace(e.u, e.v).second)
            throw SchemaError("duplicate edge " + labels_[e.u] + "-" + labels_[e.v]);
        adj_[e.u].emplace_back(e.v, e.w);
        adj_[e.v].emplace_back(e.u, e.w);
    }
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    edges_ = std::move(edges);
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

    deg_.resize(n_);
    for (int x = 0; x < n_; ++x) {
        double s = 0.0;
        for (auto& [y, w] : adj_[x]) s += w;
        deg_[x] = s;
    }

    measure_kind_ = policy.kind;
    m_.resize(n_);
    switch (policy.kind) {
        case MeasureKind::normalized:
            m_ = deg_;
            break;
        case MeasureKind::combinatorial:
            m_.setOnes();
            break;
        case MeasureKind::custom:
            if (static_cast<int>(policy.values.size()) != n_)
                throw SchemaError("custom measure needs one value per vertex");
            for (int i = 0; i < n_; ++i) m_[i] = policy.values[i];
            break;
    }
    for (int i = 0; i < n_; ++i)
        if (!finite_positive(m_[i]))
            throw NonpositiveMeasureError("m(" + labels_[i] + ") = " + std::to_string(m_[i]) +
                                          " is not positive");

    // Connectivity is mandatory; every downstream statement assumes it.
    std::vector<char> visited(n_, 0);
    std::deque<int> queue{0};
    visited[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (auto& [y, w] : adj_[x]) {
            (void)w;
            if (!visited[y]) {
                visited[y] = 1;
                ++reached;
                queue.push_back(y);
            }
        }
    }
    if (reached != n_) throw DisconnectedError("graph is not connected");
}

double WeightedGraph::weight(int x, int y) const {
    check_vertex(x);
    check_vertex(y);
    const auto& nb = adj_[x];
    auto it = std::lower_bound(nb.begin(), nb.end(), std::pair(y, 0.0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != nb.end() && it->first == y) return it->second;
    return 0.0;
}

int WeightedGraph::index_of(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) throw UnknownVertex("unknown vertex id: " + label);
    return it->second;
}

VertexSubset::VertexSubset(const WeightedGraph& g, std::vector<int> indices) {
    mask_.assign(g.num_vertices(), 0);
    for (int x : indices) {
        g.check_vertex(x);
        mask_[x] = 1;
    }
    indices_.clear();
    for (int x = 0; x < g.num_vertices(); ++x)
        if (mask_[x]) indices_.push_back(x);
}

VertexSubset VertexSubset::all(const WeightedGraph& g) {
    std::vector<int> idx(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) idx[i] = i;
    VertexSubset s;
    s.indices_ = std::move(idx);
    s.mask_.assign(g.num_vertices(), 1);
    return s;
}

VertexSubset VertexSubset::single(const WeightedGraph& g, int x) {
    g.check_vertex(x);
    VertexSubset s;
    s.indices_ = {x};
    s.mask_.assign(g.num_vertices(), 0);
    s.mask_[x] = 1;
    return s;
}

VertexSubset VertexSubset::complement() const {
    VertexSubset s;
    s.mask_.resize(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        s.mask_[i] = mask_[i] ? 0 : 1;
        if (s.mask_[i]) s.indices_.push_back(static_cast<int>(i));
    }
    return s;
}

// -- ingestion / serialization ------------------------------------------

namespace {

MeasurePolicy policy_from_string(const std::string& s) {
    if (s == "normalized") return MeasurePolicy::normalized();
    if (s == "combinatorial") return MeasurePolicy::combinatorial();
    if (s == "custom") return MeasurePolicy::custom({});
    throw SchemaError("unknown measure: " + s);
}

WeightedGraph load_graph_impl(const std::string& text, const MeasurePolicy* override_policy) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("document root must be an object");
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw SchemaError("missing \"vertices\" array");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw SchemaError("missing \"edges\" array");

    MeasurePolicy policy;
    if (override_policy) {
        policy = *override_policy;
    } else {
        if (!doc.contains("measure") || !doc["measure"].is_string())
            throw SchemaError("missing \"measure\" string");
        policy = policy_from_string(doc["measure"].get<std::string>());
    }

    struct VertexEntry {
        std::string id;
        std::optional<double> m;
    };
    std::vector<VertexEntry> entries;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_object() || !v.contains("id") || !v["id"].is_string())
            throw SchemaError("vertex entry needs a string \"id\"");
        VertexEntry e{v["id"].get<std::string>(), std::nullopt};
        if (v.contains("m")) {
            if (!v["m"].is_number()) throw SchemaError("vertex \"m\" must be a number");
            e.m = v["m"].get<double>();
        }
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(),
              [](const VertexEntry& a, const VertexEntry& b) { return a.id < b.id; });

    std::map<std::string, int> index;
    std::vector<std::string> labels;
    labels.reserve(entries.size());
    for (const auto& e : entries) {
        if (!index.emplace(e.id, static_cast<int>(labels.size())).second)
            throw SchemaError("duplicate vertex id: " + e.id);
        labels.push_back(e.id);
    }

    if (policy.kind == MeasureKind::custom && policy.values.empty()) {
        policy.values.reserve(entries.size());
        for (const auto& e : entries) {
            if (!e.m) throw SchemaError("measure=custom requires \"m\" on vertex " + e.id);
            policy.values.push_back(*e.m);
        }
    }

    std::vector<WeightedEdge> edges;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : doc["edges"]) {
        if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("w") ||
            !e["u"].is_string() || !e["v"].is_string() || !e["w"].is_number())
            throw SchemaError("edge entry needs string \"u\", \"v\" and numeric \"w\"");
        auto iu = index.find(e["u"].get<std::string>());
        auto iv = index.find(e["v"].get<std::string>());
        if (iu == index.end() || iv == index.end())
            throw SchemaError("edge references unknown vertex id");
        int u = iu->second, v = iv->second;
        double w = e["w"].get<double>();
        if (u == v) throw SchemaError("self loop at vertex " + labels[u]);
        auto key = std::minmax(u, v);
        if (!seen.emplace(key.first, key.second).second) {
            // A repeated undirected edge with a different weight is an
            // asymmetric weight assignment; a repeat with the same weight
            // is a plain duplicate. Both are rejected.
            for (const auto& prev : edges) {
                if (prev.u == key.first && prev.v == key.second && prev.w != w)
                    throw AsymmetryError("conflicting weights for edge " + labels[key.first] +
                                         "-" + labels[key.second]);
            }
            throw SchemaError("duplicate edge " + labels[key.first] + "-" + labels[key.second]);
        }
        edges.push_back({key.first, key.second, w});
    }

    return WeightedGraph(std::move(labels), std::move(edges), policy);
}

} // namespace

WeightedGraph load_graph(const std::string& text) { return load_graph_impl(text, nullptr); }

WeightedGraph load_graph(const std::string& text, const MeasurePolicy& policy) {
    return load_graph_impl(text, &policy);
}

std::string serialize(const WeightedGraph& g) {
    ordered_json doc;
    doc["vertices"] = ordered_json::array();
    for (int x = 0; x < g.num_vertices(); ++x) {
        ordered_json v;
        v["id"] = g.label(x);
        v["m"] = g.measure(x);
        doc["vertices"].push_back(std::move(v));
    }
    doc["edges"] = ordered_json::array();
    for (const auto& e : g.edges()) {
        ordered_json je;
        je["u"] = g.label(e.u);
        je["v"] = g.label(e.v);
        je["w"] = e.w;
        doc["edges"].push_back(std::move(je));
    }
    switch (g.measure_kind()) {
        case MeasureKind::normalized: doc["measure"] = "normalized"; break;
        case MeasureKind::combinatorial: doc["measure"] = "combinatorial"; break;
        case MeasureKind::custom: doc["measure"] = "custom"; break;
    }
    return doc.dump();
}

std::string digest(const WeightedGraph& g) {
    const std::string s = serialize(g);
    std::uint64_t h = detail::fnv1a(s.data(), s.size());
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// -- generators ----------------------------------------------------------

WeightedGraph make_path(int n, const MeasurePolicy& policy, int cap) {
    if (n < 2) throw DomainError("path needs n >= 2");
    check_cap(n, cap);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    return WeightedGraph(padded_labels(n), std::move(edges), policy);
}

WeightedGraph make_cycle(int n, const MeasurePolicy& policy, int cap) {
    if (n < 3) throw DomainError("cycle needs n >= 3");
    check_cap(n, cap);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    edges.push_back({0, n - 1, 1.0});
    return WeightedGraph(padded_labels(n), std::move(edges), policy);
}

WeightedGraph make_complete(int n, const MeasurePolicy& policy, int cap) {
    if (n < 2) throw DomainError("complete needs n >= 2");
    check_cap(n, cap);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
    return WeightedGraph(padded_labels(n), std::move(edges), policy);
}

WeightedGraph make_hypercube(int d, const MeasurePolicy& policy, int cap) {
    if (d < 1) throw DomainError("hypercube needs d >= 1");
    if (d > 20) throw SizeCapExceeded("hypercube dimension too large");
    const int n = 1 << d;
    check_cap(n, cap);
    std::vector<std::string> labels(n);
    for (int x = 0; x < n; ++x) {
        std::string bits(d, '0');
        for (int b = 0; b < d; ++b)
            if (x & (1 << (d - 1 - b))) bits[b] = '1';
        labels[x] = bits;
    }
    std::vector<WeightedEdge> edges;
    for (int x = 0; x < n; ++x)
        for (int b = 0; b < d; ++b) {
            int y = x ^ (1 << b);
            if (x < y) edges.push_back({x, y, 1.0});
        }
    return WeightedGraph(std::move(labels), std::move(edges), policy);
}

WeightedGraph make_lattice_ball(int d, int r, const MeasurePolicy& policy, int cap) {
    if (d < 1) throw DomainError("lattice_ball needs d >= 1");
    if (r < 1) throw DomainError("lattice_ball needs r >= 1");

    // Enumerate lattice points with |x|_1 <= r in lexicographic order of
    // their coordinate tuples; that order is the canonical indexing.
    std::vector<std::vector<int>> points;
    std::vector<int> coord(d, 0);
    auto enumerate = [&](auto&& self, int pos, int budget) -> void {
        if (pos == d) {
            points.push_back(coord);
            check_cap(static_cast<long long>(points.size()), cap);
            return;
        }
        for (int c = -budget; c <= budget; ++c) {
            coord[pos] = c;
            self(self, pos + 1, budget - std::abs(c));
        }
    };
    enumerate(enumerate, 0, r);

    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<int>(i);

    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto p = points[i];
        for (int axis = 0; axis < d; ++axis) {
            p[axis] += 1;
            auto it = index.find(p);
            if (it != index.end()) edges.push_back({static_cast<int>(i), it->second, 1.0});
            p[axis] -= 1;
        }
    }
    return WeightedGraph(padded_labels(static_cast<int>(points.size())), std::move(edges), policy);
}

WeightedGraph make_tree_ball(int degree, int r, const MeasurePolicy& policy, int cap) {
    if (degree < 2) throw DomainError("tree_ball needs degree >= 2");
    if (r < 1) throw DomainError("tree_ball needs r >= 1");
    std::vector<WeightedEdge> edges;
    long long count = 1;
    std::vector<int> frontier{0};
    for (int level = 0; level < r; ++level) {
        std::vector<int> next;
        const int children = (level == 0) ? degree : degree - 1;
        for (int parent : frontier) {
            for (int c = 0; c < children; ++c) {
                check_cap(count + 1, cap);
                const int child = static_cast<int>(count++);
                edges.push_back({parent, child, 1.0});
                next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return WeightedGraph(padded_labels(static_cast<int>(count)), std::move(edges), policy);
}

WeightedGraph make_random_connected(int n, std::uint64_t seed, double w_lo, double w_hi,
                                    const MeasurePolicy& policy, double extra_edge_prob) {
    if (n < 2) throw DomainError("random graph needs n >= 2");
    detail::Rng rng(seed);
    std::vector<WeightedEdge> edges;
    std::set<std::pair<int, int>> present;
    for (int v = 1; v < n; ++v) {
        const int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
        edges.push_back({parent, v, rng.uniform(w_lo, w_hi)});
        present.emplace(parent, v);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (present.count({i, j})) continue;
            if (rng.uniform() < extra_edge_prob)
                edges.push_back({i, j, rng.uniform(w_lo, w_hi)});
        }
    return WeightedGraph(padded_labels(n), std::move(edges), policy);
}

WeightedGraph generate(const std::string& family, const std::map<std::string, int>& params,
                       const MeasurePolicy& policy, int cap) {
    auto need = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            throw DomainError("family " + family + " needs parameter \"" + key + "\"");
        return it->second;
    };
    if (family == "path") return make_path(need("n"), policy, cap);
    if (family == "cycle") return make_cycle(need("n"), policy, cap);
    if (family == "complete") return make_complete(need("n"), policy, cap);
    if (family == "hypercube") return make_hypercube(need("d"), policy, cap);
    if (family == "lattice_ball") return make_lattice_ball(need("d"), need("r"), policy, cap);
    if (family == "tree_ball") return make_tree_ball(need("degree"), need("r"), policy, cap);
    throw DomainError("unknown family: " + family);
}

// -- basic quantities ------------------------------------------------------

double d_omega(const WeightedGraph& g) {
    if (g.num_edges() == 0) throw DomainError("D_omega is undefined on an edgeless graph");
    double best = 0.0;
    for (const auto& e : g.edges()) {
        best = std::max(best, g.measure(e.u) / e.w);
        best = std::max(best, g.measure(e.v) / e.w);
    }
    return best;
}

double volume(const WeightedGraph& g, const VertexSubset& u) {
    double s = 0.0;
    for (int x : u.indices()) {
        g.check_vertex(x);
        s += g.measure(x);
    }
    return s;
}

VertexSubset ball(const WeightedGraph& g, int x, int r) {
    g.check_vertex(x);
    if (r < 0) throw DomainError("ball radius must be >= 0");
    std::vector<int> dist(g.num_vertices(), -1);
    std::deque<int> queue{x};
    dist[x] = 0;
    std::vector<int> members{x};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (dist[v] == r) continue;
        for (auto& [y, w] : g.neighbors(v)) {
            (void)w;
            if (dist[y] < 0) {
                dist[y] = dist[v] + 1;
                members.push_back(y);
                queue.push_back(y);
            }
        }
    }
    return VertexSubset(g, std::move(members));
}

WeightedGraph scale_measure(const WeightedGraph& g, double c) {
    if (!(c > 0.0)) throw DomainError("measure scale must be positive");
    std::vector<double> m(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) m[i] = c * g.measure(i);
    return WeightedGraph(g.labels(), g.edges(), MeasurePolicy::custom(std::move(m)));
}

WeightedGraph scale_jointly(const WeightedGraph& g, double c) {
    if (!(c > 0.0)) throw DomainError("joint scale must be positive");
    std::vector<double> m(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) m[i] = c * g.measure(i);
    auto edges = g.edges();
    for (auto& e : edges) e.w *= c;
    return WeightedGraph(g.labels(), std::move(edges), MeasurePolicy::custom(std::move(m)));
}

} // namespace graphcurv
