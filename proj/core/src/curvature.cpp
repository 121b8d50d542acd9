#include "graphcurv/curvature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "graphcurv/detail/parallel.hpp"
#include "graphcurv/detail/rng.hpp"

namespace graphcurv {

namespace {

void check_dimension(double n) {
    if (std::isnan(n) || n <= 0.0) throw DomainError("dimension parameter must lie in (0, inf]");
}

} // namespace

VertexFunction LocalFunction::lift(const WeightedGraph& g) const {
    VertexFunction f = VertexFunction::Zero(g.num_vertices());
    for (std::size_t i = 0; i < coords.size(); ++i) f[coords[i]] = values[static_cast<int>(i)];
    return f;
}

VertexCurvature curvature_at(const WeightedGraph& g, int x, double n) {
    check_dimension(n);
    g.check_vertex(x);
    LocalForms lf = local_forms(g, x);
    const int dim = static_cast<int>(lf.coords.size());
    const int k1 = lf.s1_count;
    const int k2 = dim - k1;
    if (k1 == 0) throw DomainError("curvature needs at least one neighbor");

    Eigen::MatrixXd a_prime = lf.A;
    if (std::isfinite(n)) a_prime -= (2.0 / n) * lf.w * lf.w.transpose();

    // Eliminate the 2-sphere block: Gamma vanishes there, so the form is
    // freely minimized over those coordinates. The block is positive
    // definite on connected graphs; the spectral pseudoinverse is a
    // numerical guard.
    Eigen::MatrixXd schur = a_prime.topLeftCorner(k1, k1);
    Eigen::MatrixXd lift_back;  // maps S1 coords to minimizing S2 coords
    int rank = 0;
    if (k2 > 0) {
        const Eigen::MatrixXd a22 = a_prime.bottomRightCorner(k2, k2);
        const Eigen::MatrixXd a21 = a_prime.bottomLeftCorner(k2, k1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a22);
        const Eigen::VectorXd& ev = es.eigenvalues();
        const double scale = std::max(std::abs(ev[0]), std::abs(ev[k2 - 1]));
        if (ev[0] < -1e-10)
            throw IndefiniteEliminationError(
                "2-sphere block of the curvature form has a negative eigenvalue " +
                std::to_string(ev[0]) + " at vertex " + g.label(x));
        const double cutoff = 1e-12 * scale;
        Eigen::VectorXd inv = Eigen::VectorXd::Zero(k2);
        for (int i = 0; i < k2; ++i)
            if (ev[i] > cutoff) {
                inv[i] = 1.0 / ev[i];
                ++rank;
            }
        const Eigen::MatrixXd pinv =
            es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
        lift_back = -pinv * a21;
        schur += a_prime.topRightCorner(k1, k2) * lift_back;
    }

    // Generalized problem schur v = K B1 v with B1 = diag(b) > 0 on S1;
    // congruence by B1^{-1/2} turns it into a standard symmetric solve.
    const Eigen::VectorXd b1 = lf.b.head(k1);
    const Eigen::VectorXd d_inv_sqrt = b1.array().rsqrt();
    const Eigen::MatrixXd sym =
        d_inv_sqrt.asDiagonal() * schur * d_inv_sqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));

    VertexCurvature out;
    out.vertex = x;
    out.k = es.eigenvalues()[0];
    out.elimination_rank = rank;

    Eigen::VectorXd witness(dim);
    const Eigen::VectorXd a = d_inv_sqrt.asDiagonal() * es.eigenvectors().col(0);
    witness.head(k1) = a;
    if (k2 > 0) witness.tail(k2) = lift_back * a;

    out.witness.center = x;
    out.witness.coords = lf.coords;
    out.witness.values = witness;

    const VertexFunction f = out.witness.lift(g);
    const double quad = std::isfinite(n) ? laplacian_at(g, f, x) * laplacian_at(g, f, x) / n : 0.0;
    out.witness_residual = gamma2_at(g, f, x) - quad - out.k * gamma_at(g, f, x);
    return out;
}

CurvatureResult curvature_function(const WeightedGraph& g, double n) {
    check_dimension(n);
    CurvatureResult res;
    res.n = n;
    res.per_vertex.resize(g.num_vertices());
    std::vector<std::exception_ptr> errors(g.num_vertices());
    detail::parallel_for(g.num_vertices(), [&](int x) {
        try {
            res.per_vertex[x] = curvature_at(g, x, n);
        } catch (...) {
            errors[x] = std::current_exception();
        }
    });
    for (int x = 0; x < g.num_vertices(); ++x)
        if (errors[x]) std::rethrow_exception(errors[x]);

    res.argmin_vertex = 0;
    res.global_k = res.per_vertex[0].k;
    for (int x = 1; x < g.num_vertices(); ++x)
        if (res.per_vertex[x].k < res.global_k) {
            res.global_k = res.per_vertex[x].k;
            res.argmin_vertex = x;
        }
    return res;
}

std::optional<CdViolation> cd_check(const WeightedGraph& g, double n, double k) {
    const CurvatureResult res = curvature_function(g, n);
    for (const auto& vc : res.per_vertex) {
        if (k > vc.k + 1e-10) {
            CdViolation v;
            v.vertex = vc.vertex;
            v.witness = vc.witness;
            const VertexFunction f = vc.witness.lift(g);
            const double quad =
                std::isfinite(n) ? laplacian_at(g, f, vc.vertex) * laplacian_at(g, f, vc.vertex) / n
                                 : 0.0;
            v.slack = gamma2_at(g, f, vc.vertex) - quad - k * gamma_at(g, f, vc.vertex);
            return v;
        }
    }
    return std::nullopt;
}

// -- brute-force oracle ------------------------------------------------------

namespace {

/// Rayleigh ratio minimizer over lifted local functions, touching the
/// implementation only through the pointwise form evaluations.
class RatioProblem {
public:
    RatioProblem(const WeightedGraph& g, int x, double n, std::vector<int> coords)
        : g_(g), x_(x), n_(n), coords_(std::move(coords)),
          work_(VertexFunction::Zero(g.num_vertices())) {}

    int dim() const { return static_cast<int>(coords_.size()); }

    // numerator 2*Gamma_2 - (2/n)(Delta f)^2 and denominator 2*Gamma;
    // both quadratic in u. Factors of two cancel in the ratio.
    std::pair<double, double> eval(const Eigen::VectorXd& u) {
        for (int i = 0; i < dim(); ++i) work_[coords_[i]] = u[i];
        const double g2 = 2.0 * gamma2_at(g_, work_, x_);
        const double lap = laplacian_at(g_, work_, x_);
        const double gm = 2.0 * gamma_at(g_, work_, x_);
        for (int i = 0; i < dim(); ++i) work_[coords_[i]] = 0.0;
        const double num = std::isfinite(n_) ? g2 - (2.0 / n_) * lap * lap : g2;
        return {num, gm};
    }

private:
    const WeightedGraph& g_;
    int x_;
    double n_;
    std::vector<int> coords_;
    VertexFunction work_;
};

struct Quad {
    double c0, c1, c2;  // q(u + t d) = c0 + c1 t + c2 t^2
};

Quad fit_quad(double at0, double at_plus, double at_minus) {
    Quad q;
    q.c0 = at0;
    q.c1 = 0.5 * (at_plus - at_minus);
    q.c2 = 0.5 * (at_plus + at_minus) - at0;
    return q;
}

/// Minimizes (a0+a1 t+a2 t^2)/(b0+b1 t+b2 t^2) over t, including the
/// t -> inf limit. Returns (t, value); t = inf encodes the limit.
std::pair<double, double> minimize_ratio_line(const Quad& a, const Quad& b, double r0) {
    double best_t = 0.0;
    double best_v = r0;
    auto consider = [&](double t) {
        const double den = b.c0 + t * (b.c1 + t * b.c2);
        if (!(den > 1e-300)) return;
        const double num = a.c0 + t * (a.c1 + t * a.c2);
        const double v = num / den;
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    };
    // d/dt of the ratio vanishes where a'b - ab' = 0, a quadratic in t.
    const double c0 = a.c1 * b.c0 - a.c0 * b.c1;
    const double c1 = 2.0 * (a.c2 * b.c0 - a.c0 * b.c2);
    const double c2 = a.c2 * b.c1 - a.c1 * b.c2;
    if (std::abs(c2) > 1e-300) {
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            consider((-c1 + s) / (2.0 * c2));
            consider((-c1 - s) / (2.0 * c2));
        }
    } else if (std::abs(c1) > 1e-300) {
        consider(-c0 / c1);
    }
    if (b.c2 > 1e-300) {
        const double v_inf = a.c2 / b.c2;
        if (v_inf < best_v) {
            best_v = v_inf;
            best_t = std::numeric_limits<double>::infinity();
        }
    }
    return {best_t, best_v};
}

double descend(RatioProblem& prob, Eigen::VectorXd u) {
    const int dim = prob.dim();
    auto [num, den] = prob.eval(u);
    if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
    u /= std::sqrt(den);
    double ratio = num / den;

    Eigen::VectorXd grad(dim), probe(dim);
    int stall = 0;
    for (int iter = 0; iter < 400 && stall < 3; ++iter) {
        // Exact gradient of the ratio from polarization of the two
        // quadratics: q(u+e) - q(u-e) = 4 u^T H e.
        auto [n0, d0] = prob.eval(u);
        for (int i = 0; i < dim; ++i) {
            probe = u;
            probe[i] += 1.0;
            auto [np, dp] = prob.eval(probe);
            probe[i] -= 2.0;
            auto [nm, dm] = prob.eval(probe);
            const double gn = 0.5 * (np - nm);
            const double gd = 0.5 * (dp - dm);
            grad[i] = (gn - (n0 / d0) * gd) / d0;
        }
        const double gnorm = grad.norm();
        if (gnorm < 1e-14 * (1.0 + std::abs(ratio))) break;
        Eigen::VectorXd dir = -grad / gnorm;

        auto [ndir_p, ddir_p] = prob.eval(u + dir);
        auto [ndir_m, ddir_m] = prob.eval(u - dir);
        const Quad qa = fit_quad(n0, ndir_p, ndir_m);
        const Quad qb = fit_quad(d0, ddir_p, ddir_m);
        auto [t, v] = minimize_ratio_line(qa, qb, n0 / d0);
        if (std::isinf(t)) {
            u = dir;
        } else if (t != 0.0) {
            u += t * dir;
        }
        auto [n1, d1] = prob.eval(u);
        if (!(d1 > 0.0)) break;
        u /= std::sqrt(d1);
        const double next = n1 / d1;
        if (ratio - next < 1e-15 * (1.0 + std::abs(ratio)))
            ++stall;
        else
            stall = 0;
        ratio = std::min(ratio, next);
        (void)v;
    }
    return ratio;
}

std::vector<int> punctured_two_ball(const WeightedGraph& g, int x) {
    std::vector<int> coords;
    const VertexSubset two_ball = ball(g, x, 2);
    for (int y : two_ball.indices())
        if (y != x) coords.push_back(y);
    return coords;
}

} // namespace

double curvature_bruteforce(const WeightedGraph& g, int x, double n, int trials,
                            std::uint64_t seed) {
    check_dimension(n);
    g.check_vertex(x);
    if (trials < 1) throw DomainError("need at least one trial");
    RatioProblem prob(g, x, n, punctured_two_ball(g, x));
    detail::Rng rng(seed);
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd u(prob.dim());
        for (int i = 0; i < prob.dim(); ++i) u[i] = rng.normal();
        best = std::min(best, descend(prob, u));
    }
    return best;
}

double curvature_descent_from(const WeightedGraph& g, const LocalFunction& start, double n) {
    check_dimension(n);
    RatioProblem prob(g, start.center, n, start.coords);
    return descend(prob, start.values);
}

} // namespace graphcurv
