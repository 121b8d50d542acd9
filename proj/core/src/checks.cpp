#include "graphcurv/checks.hpp"

#include <cmath>
#include <deque>

#include "report_json.hpp"

namespace graphcurv {

std::string to_json_string(const CheckReport& report) {
    return detail::report_to_json(report).dump();
}

BuserConstants BuserConstants::from_d_omega(double d_omega) {
    if (!(d_omega > 0.0)) throw DomainError("D_omega must be positive");
    BuserConstants bc;
    bc.d_omega = d_omega;
    bc.c = 4.0 * std::sqrt(2.0 * d_omega);
    const double one_minus_inv_e = 1.0 - std::exp(-1.0);
    bc.c1 = bc.c * bc.c / (one_minus_inv_e * one_minus_inv_e);
    bc.c2 = 2.0 * std::sqrt(2.0) * bc.c;
    return bc;
}

namespace {

double clamp_flat(double k) { return std::abs(k) < 1e-12 ? 0.0 : k; }

} // namespace

CheckReport buser_check(const WeightedGraph& g, const VertexSubset& omega, double n,
                        int enumeration_cap) {
    if (omega.empty()) throw EmptySubset("buser_check needs a nonempty subset");
    const bool finite_mode = omega.is_all();

    CheckReport rep;
    rep.check = finite_mode ? "buser.finite" : "buser.truncation";
    rep.graph = digest(g);
    rep.statement = "lambda <= max(C1 h^2, C2 sqrt(|K|) h)";
    rep.params = finite_mode ? "omega=V" : "omega_size=" + std::to_string(omega.size());

    const double k = clamp_flat(curvature_function(g, n).global_k);
    const BuserConstants bc = BuserConstants::from_d_omega(d_omega(g));

    double h = 0.0;
    if (finite_mode) {
        rep.lhs = lambda1_finite(g).lambda;
        if (g.num_vertices() <= enumeration_cap) {
            h = cheeger_finite_exact(g, enumeration_cap).value;
        } else {
            h = cheeger_sweep(g).value;
            rep.indicative = true;  // an upper bound for h inflates the rhs
        }
    } else {
        rep.lhs = lambda_bottom_dirichlet(g, omega).lambda;
        h = cheeger_subset(g, omega).value;
    }

    const double term1 = bc.c1 * h * h;
    const double term2 = bc.c2 * std::sqrt(std::abs(k)) * h;
    rep.rhs = std::max(term1, term2);
    rep.margin = rep.rhs - rep.lhs;
    rep.pass = rep.margin >= -rep.tolerance;
    rep.details = {{"K", k},
                   {"h", h},
                   {"D_omega", bc.d_omega},
                   {"C1", bc.c1},
                   {"C2", bc.c2},
                   {"curvature_term", term2},
                   {"isoperimetric_term", term1}};
    return rep;
}

CheckReport cheeger_lower_bound_check(const WeightedGraph& g, int enumeration_cap) {
    CheckReport rep;
    rep.check = "cheeger-bound";
    rep.graph = digest(g);
    rep.statement = "h >= sqrt(K) / (2 pi sqrt(2 D_omega))";

    const double k = clamp_flat(curvature_function(g, kDimInf).global_k);
    const double dw = d_omega(g);
    rep.details = {{"K", k}, {"D_omega", dw}};
    if (k <= 0.0) {
        rep.skipped = true;
        rep.skip_reason = "curvature is not positive";
        return rep;
    }

    if (g.num_vertices() <= enumeration_cap) {
        rep.lhs = cheeger_finite_exact(g, enumeration_cap).value;
    } else {
        rep.lhs = cheeger_sweep(g).value;
        rep.indicative = true;  // h is only bounded from above here
    }
    rep.rhs = std::sqrt(k) / (2.0 * 3.14159265358979323846 * std::sqrt(2.0 * dw));
    rep.margin = rep.lhs - rep.rhs;
    rep.pass = rep.margin >= -rep.tolerance;
    return rep;
}

CheckReport edge_indicator_bound_check(const WeightedGraph& g, const VertexSubset& u) {
    CheckReport rep;
    rep.check = "indicator-bound";
    rep.graph = digest(g);
    rep.params = "subset_size=" + std::to_string(u.size());
    rep.statement = "sum m sqrt(Gamma(1_U)) <= sqrt(2 D_omega) |dU|";

    VertexFunction ind = VertexFunction::Zero(g.num_vertices());
    for (int x : u.indices()) ind[x] = 1.0;
    const VertexFunction gf = gamma(g, ind);
    double lhs = 0.0;
    for (int x = 0; x < g.num_vertices(); ++x)
        lhs += g.measure(x) * std::sqrt(std::max(0.0, gf[x]));

    rep.lhs = lhs;
    rep.rhs = std::sqrt(2.0 * d_omega(g)) * boundary_volume(g, u);
    rep.margin = rep.rhs - rep.lhs;
    rep.pass = rep.margin >= -rep.tolerance;
    return rep;
}

CheckReport indicator_lower_bound_report(const WeightedGraph& g, const VertexSubset& u, double t,
                                         double lambda) {
    const ScalarCheck chk = indicator_lower_bound_check(g, u, t, lambda);
    CheckReport rep;
    rep.check = "indicator-lower";
    rep.graph = digest(g);
    rep.params = "subset_size=" + std::to_string(u.size()) + ",t=" + std::to_string(t);
    rep.statement = "||1_U - P_t 1_U||_1 >= 2 (1 - e^{-lambda t}) |U|";
    rep.lhs = chk.lhs;
    rep.rhs = chk.rhs;
    rep.margin = chk.margin;
    rep.tolerance = chk.tolerance;
    rep.pass = chk.pass;
    rep.details = {{"lambda", lambda}, {"t", t}};
    return rep;
}

int graph_center(const WeightedGraph& g) {
    const int n = g.num_vertices();
    int best = 0;
    int best_ecc = std::numeric_limits<int>::max();
    std::vector<int> dist(n);
    for (int src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{src};
        dist[src] = 0;
        int ecc = 0;
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            ecc = std::max(ecc, dist[x]);
            for (auto& [y, w] : g.neighbors(x)) {
                (void)w;
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if (ecc < best_ecc) {
            best_ecc = ecc;
            best = src;
        }
    }
    return best;
}

ExhaustionReport run_exhaustion(const WeightedGraph& host, const std::vector<int>& radii,
                                double n) {
    ExhaustionReport rep;
    rep.center = graph_center(host);
    const CurvatureResult curv = curvature_function(host, n);

    for (int r : radii) {
        const VertexSubset omega = ball(host, rep.center, r);
        ExhaustionStep step;
        step.radius = r;
        step.subset_size = static_cast<int>(omega.size());
        step.lambda = lambda_bottom_dirichlet(host, omega).lambda;
        step.h = cheeger_subset(host, omega).value;

        step.curvature_interior = std::numeric_limits<double>::infinity();
        for (int x : omega.indices()) {
            bool interior = true;
            const VertexSubset two_ball = ball(host, x, 2);
            for (int y : two_ball.indices())
                if (!omega.contains(y)) {
                    interior = false;
                    break;
                }
            if (interior) {
                step.has_interior = true;
                step.curvature_interior =
                    std::min(step.curvature_interior, curv.per_vertex[x].k);
            }
        }
        if (!step.has_interior) step.curvature_interior = 0.0;
        rep.steps.push_back(step);
    }

    rep.lambda_monotone = true;
    rep.h_monotone = true;
    for (std::size_t i = 1; i < rep.steps.size(); ++i) {
        if (rep.steps[i].lambda > rep.steps[i - 1].lambda + 1e-10) rep.lambda_monotone = false;
        if (rep.steps[i].h > rep.steps[i - 1].h + 1e-10) rep.h_monotone = false;
    }
    return rep;
}

} // namespace graphcurv
