#include "graphcurv/operators.hpp"

#include <algorithm>
#include <cmath>

namespace graphcurv {

std::vector<int> support(const VertexFunction& f) {
    std::vector<int> s;
    for (int i = 0; i < f.size(); ++i)
        if (f[i] != 0.0) s.push_back(i);
    return s;
}

double inner_m(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
    return (f.array() * h.array() * g.measures().array()).sum();
}

double norm_l1_m(const WeightedGraph& g, const VertexFunction& f) {
    return (f.array().abs() * g.measures().array()).sum();
}

double norm_l2_m(const WeightedGraph& g, const VertexFunction& f) {
    return std::sqrt(inner_m(g, f, f));
}

double norm_inf(const VertexFunction& f) {
    return f.size() == 0 ? 0.0 : f.array().abs().maxCoeff();
}

double laplacian_at(const WeightedGraph& g, const VertexFunction& f, int x) {
    double s = 0.0;
    for (auto& [y, w] : g.neighbors(x)) s += w * (f[y] - f[x]);
    return s / g.measure(x);
}

VertexFunction laplacian_apply(const WeightedGraph& g, const VertexFunction& f) {
    const int n = g.num_vertices();
    VertexFunction out(n);
    for (int x = 0; x < n; ++x) out[x] = laplacian_at(g, f, x);
    return out;
}

Eigen::SparseMatrix<double> laplacian_matrix(const WeightedGraph& g) {
    const int n = g.num_vertices();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(4 * g.num_edges() + n);
    for (int x = 0; x < n; ++x) {
        const double inv_m = 1.0 / g.measure(x);
        trip.emplace_back(x, x, -g.degree(x) * inv_m);
        for (auto& [y, w] : g.neighbors(x)) trip.emplace_back(x, y, w * inv_m);
    }
    Eigen::SparseMatrix<double> L(n, n);
    L.setFromTriplets(trip.begin(), trip.end());
    return L;
}

Eigen::SparseMatrix<double> dirichlet_matrix(const WeightedGraph& g, const VertexSubset& omega) {
    if (omega.empty()) throw EmptySubset("Dirichlet restriction needs a nonempty subset");
    const auto& idx = omega.indices();
    const int k = static_cast<int>(idx.size());
    std::vector<int> local(g.num_vertices(), -1);
    for (int i = 0; i < k; ++i) local[idx[i]] = i;

    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < k; ++i) {
        const int x = idx[i];
        const double inv_m = 1.0 / g.measure(x);
        trip.emplace_back(i, i, -g.degree(x) * inv_m);
        for (auto& [y, w] : g.neighbors(x))
            if (local[y] >= 0) trip.emplace_back(i, local[y], w * inv_m);
    }
    Eigen::SparseMatrix<double> L(k, k);
    L.setFromTriplets(trip.begin(), trip.end());
    return L;
}

double gamma_at(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h, int x) {
    double s = 0.0;
    for (auto& [y, w] : g.neighbors(x)) s += w * (f[y] - f[x]) * (h[y] - h[x]);
    return s / (2.0 * g.measure(x));
}

double gamma_at(const WeightedGraph& g, const VertexFunction& f, int x) {
    return gamma_at(g, f, f, x);
}

VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
    const int n = g.num_vertices();
    VertexFunction out(n);
    for (int x = 0; x < n; ++x) out[x] = gamma_at(g, f, h, x);
    return out;
}

VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f) { return gamma(g, f, f); }

double gamma2_at(const WeightedGraph& g, const VertexFunction& f, int x) {
    // Needs Gamma(f) and Delta f at x and its neighbors only.
    const double gx = gamma_at(g, f, x);
    const double dfx = laplacian_at(g, f, x);
    double lap_gamma = 0.0;
    double gamma_f_df = 0.0;
    for (auto& [y, w] : g.neighbors(x)) {
        lap_gamma += w * (gamma_at(g, f, y) - gx);
        gamma_f_df += w * (f[y] - f[x]) * (laplacian_at(g, f, y) - dfx);
    }
    const double m = g.measure(x);
    return 0.5 * lap_gamma / m - 0.5 * gamma_f_df / m;
}

VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f) {
    const int n = g.num_vertices();
    VertexFunction out(n);
    for (int x = 0; x < n; ++x) out[x] = gamma2_at(g, f, x);
    return out;
}

double green_residual(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
    double s = 0.0;
    for (int x = 0; x < g.num_vertices(); ++x)
        s += g.measure(x) * (f[x] * laplacian_at(g, h, x) + gamma_at(g, f, h, x));
    return s;
}

LocalForms local_forms(const WeightedGraph& g, int x) {
    g.check_vertex(x);
    LocalForms lf;
    lf.center = x;

    std::vector<int> s1, s2;
    for (auto& [y, w] : g.neighbors(x)) {
        (void)w;
        s1.push_back(y);
    }
    std::sort(s1.begin(), s1.end());
    std::vector<char> in_b1(g.num_vertices(), 0);
    in_b1[x] = 1;
    for (int y : s1) in_b1[y] = 1;
    for (int y : s1)
        for (auto& [z, w] : g.neighbors(y)) {
            (void)w;
            if (!in_b1[z]) {
                in_b1[z] = 1;
                s2.push_back(z);
            }
        }
    std::sort(s2.begin(), s2.end());

    lf.s1_count = static_cast<int>(s1.size());
    lf.coords = s1;
    lf.coords.insert(lf.coords.end(), s2.begin(), s2.end());
    const int dim = static_cast<int>(lf.coords.size());

    lf.b = Eigen::VectorXd::Zero(dim);
    lf.w = Eigen::VectorXd::Zero(dim);
    const double inv_m = 1.0 / g.measure(x);
    for (int i = 0; i < lf.s1_count; ++i) {
        const double w = g.weight(x, lf.coords[i]);
        lf.b[i] = w * inv_m;
        lf.w[i] = w * inv_m;
    }

    // Assemble A by polarizing q(u) = 2 Gamma_2(lift u)(x) on basis
    // vectors; the lift vanishes at x and outside B_2(x).
    VertexFunction work = VertexFunction::Zero(g.num_vertices());
    auto q_single = [&](int i) {
        work[lf.coords[i]] = 1.0;
        const double val = 2.0 * gamma2_at(g, work, x);
        work[lf.coords[i]] = 0.0;
        return val;
    };
    auto q_pair = [&](int i, int j) {
        work[lf.coords[i]] = 1.0;
        work[lf.coords[j]] = 1.0;
        const double val = 2.0 * gamma2_at(g, work, x);
        work[lf.coords[i]] = 0.0;
        work[lf.coords[j]] = 0.0;
        return val;
    };
    Eigen::VectorXd diag(dim);
    for (int i = 0; i < dim; ++i) diag[i] = q_single(i);
    lf.A.resize(dim, dim);
    for (int i = 0; i < dim; ++i) {
        lf.A(i, i) = diag[i];
        for (int j = i + 1; j < dim; ++j) {
            const double off = 0.5 * (q_pair(i, j) - diag[i] - diag[j]);
            lf.A(i, j) = off;
            lf.A(j, i) = off;
        }
    }
    return lf;
}

} // namespace graphcurv
