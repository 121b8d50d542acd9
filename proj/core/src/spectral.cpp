#include "graphcurv/spectral.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "graphcurv/detail/rng.hpp"

namespace graphcurv {

Eigen::SparseMatrix<double> symmetrized_dirichlet(const WeightedGraph& g,
                                                  const VertexSubset& omega) {
    if (omega.empty()) throw EmptySubset("spectral restriction needs a nonempty subset");
    const auto& idx = omega.indices();
    const int k = static_cast<int>(idx.size());
    std::vector<int> local(g.num_vertices(), -1);
    for (int i = 0; i < k; ++i) local[idx[i]] = i;

    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < k; ++i) {
        const int x = idx[i];
        trip.emplace_back(i, i, g.degree(x) / g.measure(x));
        for (auto& [y, w] : g.neighbors(x))
            if (local[y] >= 0)
                trip.emplace_back(i, local[y], -w / std::sqrt(g.measure(x) * g.measure(y)));
    }
    Eigen::SparseMatrix<double> b(k, k);
    b.setFromTriplets(trip.begin(), trip.end());
    return b;
}

namespace {

struct RitzPair {
    double theta = 0.0;
    Eigen::VectorXd vector;
    bool converged = false;
    int steps = 0;
};

/// Lanczos with full reorthogonalization for the LARGEST eigenvalue of a
/// symmetric operator given as a callable; optionally keeps the Krylov
/// space orthogonal to one deflation vector.
template <typename Op>
RitzPair lanczos_largest(const Op& op, int n, const Eigen::VectorXd* deflate, int max_dim,
                         double tol) {
    detail::Rng rng(0x5eed5eed5eed5eedull);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    if (deflate) v -= (*deflate) * deflate->dot(v);
    v.normalize();

    const int m = std::min(max_dim, n);
    Eigen::MatrixXd basis(n, m);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);

    basis.col(0) = v;
    int k = 0;
    RitzPair best;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXd w = op(basis.col(j));
        alpha[j] = basis.col(j).dot(w);
        w -= alpha[j] * basis.col(j);
        if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
        // Two rounds of full reorthogonalization.
        for (int round = 0; round < 2; ++round) {
            w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
            if (deflate) w -= (*deflate) * deflate->dot(w);
        }
        k = j + 1;
        const double b = w.norm();

        const bool last = (j + 1 == m) || b < 1e-14;
        if (last || (j + 1) % 5 == 0) {
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
            for (int i = 0; i < k; ++i) {
                t(i, i) = alpha[i];
                if (i + 1 < k) {
                    t(i, i + 1) = beta[i];
                    t(i + 1, i) = beta[i];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            const int top = k - 1;
            best.theta = es.eigenvalues()[top];
            const Eigen::VectorXd s = es.eigenvectors().col(top);
            const double err = b * std::abs(s[k - 1]);
            if (err <= tol * std::max(std::abs(best.theta), 1e-300) || b < 1e-14) {
                best.vector = basis.leftCols(k) * s;
                best.vector.normalize();
                best.converged = true;
                best.steps = k;
                return best;
            }
            if (last) {
                best.vector = basis.leftCols(k) * s;
                best.vector.normalize();
                best.steps = k;
                return best;
            }
        }
        if (j + 1 < m) {
            beta[j] = b;
            basis.col(j + 1) = w / b;
        }
    }
    return best;
}

double residual_norm(const Eigen::SparseMatrix<double>& b, const Eigen::VectorXd& v,
                     double lambda) {
    return (b * v - lambda * v).norm();
}

/// Un-symmetrize v, optionally make it m-orthogonal to constants, and
/// normalize to unit m-norm.
VertexFunction to_vertex_function(const WeightedGraph& g, const VertexSubset& omega,
                                  const Eigen::VectorXd& v, bool orthogonalize_constants) {
    VertexFunction f = VertexFunction::Zero(g.num_vertices());
    const auto& idx = omega.indices();
    for (int i = 0; i < static_cast<int>(idx.size()); ++i)
        f[idx[i]] = v[i] / std::sqrt(g.measure(idx[i]));
    if (orthogonalize_constants) {
        const double mean = inner_m(g, f, VertexFunction::Ones(g.num_vertices())) / g.total_measure();
        f.array() -= mean;
    }
    const double nrm = norm_l2_m(g, f);
    if (nrm > 0.0) f /= nrm;

    // Canonical sign: largest-magnitude entry positive.
    int arg = 0;
    for (int i = 1; i < f.size(); ++i)
        if (std::abs(f[i]) > std::abs(f[arg])) arg = i;
    if (f[arg] < 0.0) f = -f;
    return f;
}

} // namespace

SpectralResult lambda_bottom_dirichlet(const WeightedGraph& g, const VertexSubset& omega,
                                       EigenSolverKind solver) {
    if (omega.empty()) throw EmptySubset("lambda_bottom_dirichlet needs a nonempty subset");
    const int k = static_cast<int>(omega.size());
    if (solver == EigenSolverKind::automatic)
        solver = k <= kDenseEigenCap ? EigenSolverKind::dense : EigenSolverKind::lanczos;

    const Eigen::SparseMatrix<double> b = symmetrized_dirichlet(g, omega);
    SpectralResult res;
    res.solver = solver;

    Eigen::VectorXd vec;
    if (solver == EigenSolverKind::dense) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(b)};
        res.lambda = es.eigenvalues()[0];
        vec = es.eigenvectors().col(0);
    } else {
        // Shift-invert at zero: the proper Dirichlet block is positive
        // definite; omega = V gets a tiny regularizing shift instead.
        double eps = 0.0;
        Eigen::SparseMatrix<double> shifted = b;
        if (omega.is_all()) {
            eps = 1e-8 * b.diagonal().maxCoeff();
            Eigen::SparseMatrix<double> eye(k, k);
            eye.setIdentity();
            shifted = b + eps * eye;
        }
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
        if (ldlt.info() != Eigen::Success)
            throw NonconvergenceError("Dirichlet operator factorization failed");
        auto op = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return ldlt.solve(x); };
        const RitzPair rp = lanczos_largest(op, k, nullptr, 200, 1e-10);
        if (!rp.converged) throw NonconvergenceError("Lanczos did not converge within 200 steps");
        res.lambda = 1.0 / rp.theta - eps;
        vec = rp.vector;
    }

    res.eigenvector = to_vertex_function(g, omega, vec, false);
    res.residual = residual_norm(b, vec.normalized(), res.lambda);
    if (res.residual > 1e-8 * std::max(1.0, std::abs(res.lambda)))
        throw NonconvergenceError("Dirichlet eigenpair residual exceeds tolerance");
    return res;
}

SpectralResult lambda1_finite(const WeightedGraph& g, EigenSolverKind solver) {
    const int n = g.num_vertices();
    if (n < 2) throw DomainError("lambda1 needs at least two vertices");
    if (solver == EigenSolverKind::automatic)
        solver = n <= kDenseEigenCap ? EigenSolverKind::dense : EigenSolverKind::lanczos;

    const VertexSubset all = VertexSubset::all(g);
    const Eigen::SparseMatrix<double> b = symmetrized_dirichlet(g, all);

    // The symmetrized kernel direction: sqrt(m), image of the constants.
    Eigen::VectorXd u0(n);
    for (int i = 0; i < n; ++i) u0[i] = std::sqrt(g.measure(i));
    u0.normalize();

    SpectralResult res;
    res.solver = solver;
    Eigen::VectorXd vec;

    if (solver == EigenSolverKind::dense) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(b)};
        res.lambda = es.eigenvalues()[1];
        vec = es.eigenvectors().col(1);
    } else {
        const double eps = 1e-8 * b.diagonal().maxCoeff();
        Eigen::SparseMatrix<double> eye(n, n);
        eye.setIdentity();
        const Eigen::SparseMatrix<double> shifted = b + eps * eye;
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
        if (ldlt.info() != Eigen::Success)
            throw NonconvergenceError("operator factorization failed");
        auto op = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
            Eigen::VectorXd y = ldlt.solve(x);
            y -= u0 * u0.dot(y);  // stay clear of the constant kernel
            return y;
        };
        const RitzPair rp = lanczos_largest(op, n, &u0, 200, 1e-10);
        if (!rp.converged) throw NonconvergenceError("Lanczos did not converge within 200 steps");
        res.lambda = 1.0 / rp.theta - eps;
        vec = rp.vector;
    }

    vec -= u0 * u0.dot(vec);
    vec.normalize();
    res.eigenvector = to_vertex_function(g, all, vec, true);
    res.residual = residual_norm(b, vec, res.lambda);
    if (res.residual > 1e-8 * std::max(1.0, std::abs(res.lambda)))
        throw NonconvergenceError("lambda1 eigenpair residual exceeds tolerance");
    return res;
}

double rayleigh_quotient(const WeightedGraph& g, const VertexFunction& f) {
    const double denom = inner_m(g, f, f);
    if (denom == 0.0) throw ZeroFunction("Rayleigh quotient of the zero function");
    double num = 0.0;
    for (int x = 0; x < g.num_vertices(); ++x)
        num -= g.measure(x) * f[x] * laplacian_at(g, f, x);
    return num / denom;
}

} // namespace graphcurv
