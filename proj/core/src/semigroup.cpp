#include "graphcurv/semigroup.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "graphcurv/spectral.hpp"

namespace graphcurv {

namespace {

// (e^x - 1)/x and 2(e^x - 1 - x)/x^2, series-expanded near zero where
// the direct expressions cancel catastrophically.
double exp_ratio1(double x) {
    if (std::abs(x) < 1e-4)
        return 1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0 + x * x * x * x / 120.0;
    return std::expm1(x) / x;
}

double exp_ratio2(double x) {
    if (std::abs(x) < 1e-4)
        return 1.0 + x / 3.0 + x * x / 12.0 + x * x * x / 60.0 + x * x * x * x / 360.0;
    return 2.0 * (std::expm1(x) - x) / (x * x);
}

Eigen::VectorXd krylov_exp_step(const Eigen::SparseMatrix<double>& b, const Eigen::VectorXd& w,
                                double t, double tol, bool& converged) {
    // Lanczos approximation of e^{-tB} w with full reorthogonalization.
    const int n = static_cast<int>(w.size());
    const double wnorm = w.norm();
    converged = true;
    if (wnorm == 0.0) return w;

    const int max_dim = std::min(200, n);
    Eigen::MatrixXd basis(n, max_dim);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(max_dim);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(max_dim);
    basis.col(0) = w / wnorm;

    for (int j = 0; j < max_dim; ++j) {
        Eigen::VectorXd v = b * basis.col(j);
        alpha[j] = basis.col(j).dot(v);
        v -= alpha[j] * basis.col(j);
        if (j > 0) v -= beta[j - 1] * basis.col(j - 1);
        for (int round = 0; round < 2; ++round)
            v -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * v);
        const double bnorm = v.norm();
        const int k = j + 1;
        const bool breakdown = bnorm < 1e-14;
        const bool last = breakdown || k == max_dim;

        if (last || k % 5 == 0) {
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
            for (int i = 0; i < k; ++i) {
                tri(i, i) = alpha[i];
                if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
            const Eigen::VectorXd phases = (-t * es.eigenvalues().array()).exp();
            const Eigen::VectorXd small =
                es.eigenvectors() * (phases.asDiagonal() * es.eigenvectors().row(0).transpose());
            const double err = breakdown ? 0.0 : bnorm * t * std::abs(small[k - 1]);
            if (err <= tol || breakdown) return wnorm * (basis.leftCols(k) * small);
            if (last) {
                converged = false;
                return wnorm * (basis.leftCols(k) * small);
            }
        }
        beta[j] = bnorm;
        if (k < max_dim) basis.col(k) = v / bnorm;
    }
    converged = false;
    return w;
}

/// Heat evolution through the eigendecomposition of the symmetrized
/// operator. Each spectral mode is damped with full relative precision,
/// which the tight bound checks need: their right sides multiply
/// Gamma(P_t f) by e^{2Kt}, so the exponentially small mode amplitudes
/// must not be polluted by absolute rounding dust from a matrix product.
class SpectralHeat {
public:
    explicit SpectralHeat(const WeightedGraph& g)
        : sqrt_m_(g.measures().array().sqrt()) {
        const Eigen::SparseMatrix<double> b = symmetrized_dirichlet(g, VertexSubset::all(g));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(b)};
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors();
    }

    VertexFunction apply(const VertexFunction& f, double t) const {
        const Eigen::VectorXd w = sqrt_m_.cwiseProduct(f);
        const Eigen::VectorXd coeff = evecs_.transpose() * w;
        const Eigen::VectorXd damped =
            (-t * evals_.array()).exp().matrix().cwiseProduct(coeff);
        return (evecs_ * damped).cwiseQuotient(sqrt_m_);
    }

private:
    Eigen::VectorXd sqrt_m_;
    Eigen::VectorXd evals_;
    Eigen::MatrixXd evecs_;
};

Eigen::VectorXd krylov_exp_action(const Eigen::SparseMatrix<double>& b, Eigen::VectorXd w,
                                  double t, double tol) {
    double remaining = t;
    double step = t;
    int splits = 0;
    while (remaining > 0.0) {
        bool ok = false;
        const Eigen::VectorXd y = krylov_exp_step(b, w, step, tol, ok);
        if (ok) {
            w = y;
            remaining -= step;
            step = std::min(step, remaining);
        } else {
            step *= 0.5;
            if (++splits > 60)
                throw NonconvergenceError("Krylov heat action failed to converge");
        }
    }
    return w;
}

} // namespace

VertexFunction heat_apply(const WeightedGraph& g, const VertexFunction& f,
                          const HeatOptions& opts) {
    if (!(opts.t >= 0.0) || !std::isfinite(opts.t))
        throw DomainError("heat time must be finite and nonnegative");
    const VertexSubset omega =
        opts.dirichlet ? *opts.dirichlet : VertexSubset::all(g);
    if (omega.empty()) throw EmptySubset("Dirichlet heat subset is empty");

    const auto& idx = omega.indices();
    const int k = static_cast<int>(idx.size());

    if (opts.t == 0.0) {
        if (!opts.dirichlet) return f;
        VertexFunction out = VertexFunction::Zero(g.num_vertices());
        for (int i = 0; i < k; ++i) out[idx[i]] = f[idx[i]];
        return out;
    }

    // Symmetrized coordinates: w = M^{1/2} f, evolve by e^{-tB}.
    Eigen::VectorXd w(k);
    for (int i = 0; i < k; ++i) w[i] = std::sqrt(g.measure(idx[i])) * f[idx[i]];

    const Eigen::SparseMatrix<double> b = symmetrized_dirichlet(g, omega);
    Eigen::VectorXd y;
    if (opts.method == HeatMethod::dense_expm) {
        const Eigen::MatrixXd e = (-opts.t * Eigen::MatrixXd(b)).exp();
        y = e * w;
    } else {
        y = krylov_exp_action(b, w, opts.t, opts.krylov_tol);
    }

    VertexFunction out = VertexFunction::Zero(g.num_vertices());
    for (int i = 0; i < k; ++i) out[idx[i]] = y[i] / std::sqrt(g.measure(idx[i]));
    return out;
}

double coef_variance_gamma(double k, double t) { return 2.0 * t * exp_ratio1(2.0 * k * t); }

double coef_variance_laplacian(double k, double t, double n) {
    if (!std::isfinite(n)) return 0.0;
    return (2.0 * t * t / n) * exp_ratio2(2.0 * k * t);
}

double coef_gradient_laplacian(double k, double t, double n) {
    if (!std::isfinite(n)) return 0.0;
    return (2.0 * t / n) * exp_ratio1(-2.0 * k * t);
}

SemigroupIdentityReport semigroup_identities(const WeightedGraph& g, const VertexFunction& f,
                                             const VertexFunction& h, double t, double s,
                                             HeatMethod method) {
    if (t < 0.0 || s < 0.0) throw DomainError("semigroup times must be nonnegative");
    HeatOptions ot{method, t, std::nullopt, 1e-10};
    HeatOptions os{method, s, std::nullopt, 1e-10};
    HeatOptions ots{method, t + s, std::nullopt, 1e-10};

    const VertexFunction pf = heat_apply(g, f, ot);
    const VertexFunction ph = heat_apply(g, h, ot);

    SemigroupIdentityReport rep;
    {
        const VertexFunction lhs = laplacian_apply(g, pf);
        const VertexFunction rhs = heat_apply(g, laplacian_apply(g, f), ot);
        rep.commuting_residual =
            norm_l2_m(g, lhs - rhs) / std::max(1.0, norm_l2_m(g, laplacian_apply(g, f)));
    }
    {
        const VertexFunction lhs = heat_apply(g, heat_apply(g, f, os), ot);
        const VertexFunction rhs = heat_apply(g, f, ots);
        rep.semigroup_residual = norm_l2_m(g, lhs - rhs) / std::max(1.0, norm_l2_m(g, f));
    }
    {
        const double lhs = inner_m(g, pf, h);
        const double rhs = inner_m(g, f, ph);
        rep.selfadjoint_residual =
            std::abs(lhs - rhs) / std::max(1.0, norm_l2_m(g, f) * norm_l2_m(g, h));
    }
    rep.contraction_margin_l1 = norm_l1_m(g, f) - norm_l1_m(g, pf);
    rep.contraction_margin_l2 = norm_l2_m(g, f) - norm_l2_m(g, pf);
    rep.contraction_margin_linf = norm_inf(f) - norm_inf(pf);
    rep.max_residual = std::max({rep.commuting_residual, rep.semigroup_residual,
                                 rep.selfadjoint_residual});
    return rep;
}

double mass_conservation_residual(const WeightedGraph& g, const VertexFunction& f, double t,
                                  const std::optional<VertexSubset>& dirichlet) {
    HeatOptions opts;
    opts.t = t;
    opts.dirichlet = dirichlet;
    const VertexFunction pf = heat_apply(g, f, opts);
    double before = 0.0;
    if (dirichlet) {
        for (int x : dirichlet->indices()) before += g.measure(x) * f[x];
    } else {
        before = inner_m(g, f, VertexFunction::Ones(g.num_vertices()));
    }
    const double after = inner_m(g, pf, VertexFunction::Ones(g.num_vertices()));
    return after - before;
}

PointwiseCheck gradient_bound_check(const WeightedGraph& g, const VertexFunction& f, double t,
                                    double n, double k) {
    if (t < 0.0) throw DomainError("time must be nonnegative");
    // Gamma and Delta of P_t f only see differences, so the centered
    // function is evolved mode by mode; see SpectralHeat.
    const SpectralHeat heat(g);
    const double avg = inner_m(g, f, VertexFunction::Ones(g.num_vertices())) / g.total_measure();
    const VertexFunction centered = f.array() - avg;
    const VertexFunction pf_centered = heat.apply(centered, t);
    const VertexFunction gamma_pf = gamma(g, pf_centered);
    const VertexFunction p_gamma_f = heat.apply(gamma(g, f), t);
    const VertexFunction d_pf = laplacian_apply(g, pf_centered);

    const double damp = std::exp(-2.0 * k * t);
    const double coef = coef_gradient_laplacian(k, t, n);

    PointwiseCheck chk;
    chk.min_slack = std::numeric_limits<double>::infinity();
    for (int x = 0; x < g.num_vertices(); ++x) {
        const double rhs = damp * p_gamma_f[x] - coef * d_pf[x] * d_pf[x];
        const double slack = rhs - gamma_pf[x];
        if (slack < chk.min_slack) {
            chk.min_slack = slack;
            chk.worst_vertex = x;
            chk.lhs_at_worst = gamma_pf[x];
            chk.rhs_at_worst = rhs;
        }
    }
    chk.pass = chk.min_slack >= -chk.tolerance;
    return chk;
}

PointwiseCheck reverse_poincare_check(const WeightedGraph& g, const VertexFunction& f, double t,
                                      double n, double k) {
    if (t < 0.0) throw DomainError("time must be nonnegative");
    // Same mode-filtered evolution as in gradient_bound_check: the right
    // side scales Gamma(P_t f) by e^{2Kt}, so its amplitude must carry
    // relative precision.
    const SpectralHeat heat(g);
    const double avg = inner_m(g, f, VertexFunction::Ones(g.num_vertices())) / g.total_measure();
    const VertexFunction centered = f.array() - avg;
    const VertexFunction pf_centered = heat.apply(centered, t);
    const VertexFunction pf = pf_centered.array() + avg;
    const VertexFunction pf2 = heat.apply(f.cwiseProduct(f), t);
    const VertexFunction gamma_pf = gamma(g, pf_centered);
    const VertexFunction d_pf = laplacian_apply(g, pf_centered);

    const double coef_a = coef_variance_gamma(k, t);
    const double coef_b = coef_variance_laplacian(k, t, n);

    PointwiseCheck chk;
    chk.min_slack = std::numeric_limits<double>::infinity();
    for (int x = 0; x < g.num_vertices(); ++x) {
        const double variance = pf2[x] - pf[x] * pf[x];
        const double rhs = coef_a * gamma_pf[x] + coef_b * d_pf[x] * d_pf[x];
        const double slack = variance - rhs;
        if (slack < chk.min_slack) {
            chk.min_slack = slack;
            chk.worst_vertex = x;
            chk.lhs_at_worst = variance;
            chk.rhs_at_worst = rhs;
        }
    }
    chk.pass = chk.min_slack >= -chk.tolerance;
    return chk;
}

ScalarCheck pseudo_poincare_check(const WeightedGraph& g, const VertexFunction& f, double t,
                                  double k) {
    if (t < 0.0) throw DomainError("time must be nonnegative");
    if (k < 0.0 && t > 1.0 / (2.0 * std::abs(k)) + 1e-15)
        throw DomainError("negative curvature restricts the time to 1/(2|K|)");
    HeatOptions opts;
    opts.t = t;
    const VertexFunction pf = heat_apply(g, f, opts);

    ScalarCheck chk;
    chk.lhs = norm_l1_m(g, f - pf);
    const VertexFunction gf = gamma(g, f);
    double sqrt_gamma_mass = 0.0;
    for (int x = 0; x < g.num_vertices(); ++x)
        sqrt_gamma_mass += g.measure(x) * std::sqrt(std::max(0.0, gf[x]));
    chk.rhs = 4.0 * std::sqrt(t) * sqrt_gamma_mass;
    chk.margin = chk.rhs - chk.lhs;
    chk.pass = chk.margin >= -chk.tolerance;
    return chk;
}

RemarkBoundReport remark_bound_check(const WeightedGraph& g, const VertexFunction& f, double t,
                                     double k) {
    if (!(k > 0.0)) throw NonpositiveCurvature("the arcsine bound needs K > 0");
    if (t < 0.0) throw DomainError("time must be nonnegative");
    HeatOptions opts;
    opts.t = t;
    const VertexFunction pf = heat_apply(g, f, opts);

    RemarkBoundReport rep;
    rep.factor = (2.0 / std::sqrt(k)) *
                 (3.14159265358979323846 - 2.0 * std::asin(std::exp(-k * t)));
    rep.lhs = norm_l1_m(g, f - pf);

    const VertexFunction gf = gamma(g, f);
    double sqrt_mass = 0.0;
    double lit_mass = 0.0;
    for (int x = 0; x < g.num_vertices(); ++x) {
        sqrt_mass += g.measure(x) * std::sqrt(std::max(0.0, gf[x]));
        lit_mass += g.measure(x) * std::abs(gf[x]);
    }
    rep.rhs_sqrt_gamma = rep.factor * sqrt_mass;
    rep.rhs_literal_gamma = rep.factor * lit_mass;
    rep.margin_sqrt_gamma = rep.rhs_sqrt_gamma - rep.lhs;
    rep.margin_literal_gamma = rep.rhs_literal_gamma - rep.lhs;
    rep.pass_sqrt_gamma = rep.margin_sqrt_gamma >= -1e-9;
    rep.pass_literal_gamma = rep.margin_literal_gamma >= -1e-9;
    return rep;
}

ScalarCheck indicator_lower_bound_check(const WeightedGraph& g, const VertexSubset& u, double t,
                                        double lambda) {
    if (u.empty()) throw EmptySubset("indicator lower bound needs a nonempty subset");
    if (t < 0.0) throw DomainError("time must be nonnegative");
    VertexFunction ind = VertexFunction::Zero(g.num_vertices());
    for (int x : u.indices()) ind[x] = 1.0;
    HeatOptions opts;
    opts.t = t;
    const VertexFunction pf = heat_apply(g, ind, opts);

    ScalarCheck chk;
    chk.lhs = norm_l1_m(g, ind - pf);
    chk.rhs = 2.0 * (1.0 - std::exp(-lambda * t)) * volume(g, u);
    chk.margin = chk.lhs - chk.rhs;
    chk.pass = chk.margin >= -chk.tolerance;
    return chk;
}

ConvergenceReport convergence_to_average(const WeightedGraph& g, const VertexFunction& f,
                                         const std::vector<double>& times,
                                         std::optional<double> curvature) {
    ConvergenceReport rep;
    rep.average = inner_m(g, f, VertexFunction::Ones(g.num_vertices())) / g.total_measure();
    const double gamma_f_inf = norm_inf(gamma(g, f));

    for (double t : times) {
        HeatOptions opts;
        opts.t = t;
        const VertexFunction pf = heat_apply(g, f, opts);
        rep.times.push_back(t);
        rep.deviations.push_back((pf.array() - rep.average).abs().maxCoeff());
        rep.gamma_inf.push_back(norm_inf(gamma(g, pf)));
        if (curvature && *curvature > 0.0)
            rep.gamma_envelope.push_back(std::exp(-2.0 * *curvature * t) * gamma_f_inf);
    }

    rep.deviations_monotone = true;
    for (std::size_t i = 1; i < rep.deviations.size(); ++i)
        if (rep.deviations[i] > rep.deviations[i - 1] + 1e-12 * (1.0 + rep.deviations[i - 1]))
            rep.deviations_monotone = false;

    if (!rep.gamma_envelope.empty()) {
        for (std::size_t i = 0; i < rep.gamma_inf.size(); ++i)
            if (rep.gamma_inf[i] > rep.gamma_envelope[i] + 1e-9) rep.envelope_ok = false;
    }
    return rep;
}

} // namespace graphcurv
