// Acceptance suite: one self-contained criterion per section, each
// printing a single PASS/FAIL line. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "graphcurv/checks.hpp"
#include "graphcurv/curvature.hpp"
#include "graphcurv/isoperimetry.hpp"
#include "graphcurv/metrics.hpp"
#include "graphcurv/semigroup.hpp"
#include "graphcurv/spectral.hpp"
#include "graphcurv/suite.hpp"
#include "graphcurv/detail/rng.hpp"

using namespace graphcurv;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

VertexFunction random_function(detail::Rng& rng, int n) {
    VertexFunction f(n);
    for (int i = 0; i < n; ++i) f[i] = rng.uniform(-1.0, 1.0);
    return f;
}

VertexSubset random_proper_subset(detail::Rng& rng, const WeightedGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> members;
    for (int tries = 0; tries < 64 && (members.empty() || (int)members.size() == n); ++tries) {
        members.clear();
        for (int i = 0; i < n; ++i)
            if (rng.uniform() < 0.5) members.push_back(i);
    }
    if (members.empty()) members.push_back(0);
    if ((int)members.size() == n) members.pop_back();
    return VertexSubset(g, members);
}

// test-side exhaustive oracle for the subset Cheeger constant
double exhaustive_subset_cheeger(const WeightedGraph& g, const VertexSubset& omega) {
    const auto& idx = omega.indices();
    const int k = (int)idx.size();
    std::vector<int> local(g.num_vertices(), -1);
    for (int i = 0; i < k; ++i) local[idx[i]] = i;
    std::vector<double> exterior(k, 0.0);
    struct E {
        int a, b;
        double w;
    };
    std::vector<E> internal;
    for (const auto& e : g.edges()) {
        const int iu = local[e.u], iv = local[e.v];
        if (iu >= 0 && iv >= 0)
            internal.push_back({iu, iv, e.w});
        else if (iu >= 0)
            exterior[iu] += e.w;
        else if (iv >= 0)
            exterior[iv] += e.w;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
        double cut = 0.0, vol = 0.0;
        for (int i = 0; i < k; ++i)
            if (mask & (1ull << i)) {
                cut += exterior[i];
                vol += g.measure(idx[i]);
            }
        for (const auto& e : internal)
            if (((mask >> e.a) & 1) != ((mask >> e.b) & 1)) cut += e.w;
        best = std::min(best, cut / vol);
    }
    return best;
}

std::vector<WeightedGraph> standard_families() {
    return {make_path(2, MeasurePolicy::normalized()),
            make_complete(4, MeasurePolicy::normalized()),
            make_hypercube(2, MeasurePolicy::normalized()),
            make_hypercube(3, MeasurePolicy::normalized()),
            make_cycle(6, MeasurePolicy::normalized()),
            make_cycle(12, MeasurePolicy::normalized()),
            make_lattice_ball(2, 2, MeasurePolicy::combinatorial()),
            make_tree_ball(3, 2, MeasurePolicy::combinatorial())};
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// 1. closed-form curvature of the two-vertex graph, under a millisecond
Outcome criterion_curvature_exact() {
    const WeightedGraph g = make_path(2, MeasurePolicy::normalized());
    const double k_inf = curvature_at(g, 0, kDimInf).k;
    const double k_two = curvature_at(g, 0, 2.0).k;

    double best_ms = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = Clock::now();
        (void)curvature_at(g, 0, kDimInf);
        (void)curvature_at(g, 0, 2.0);
        best_ms = std::min(best_ms,
                           std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    }

    char buf[160];
    std::snprintf(buf, sizeof buf, "K(inf)=%.12g K(2)=%.12g best=%.3fms", k_inf, k_two, best_ms);
    Outcome out;
    out.pass = std::abs(k_inf - 2.0) <= 1e-9 && std::abs(k_two - 1.0) <= 1e-9 && best_ms < 1.0;
    out.detail = buf;
    return out;
}

// 2. eigen solve vs descent oracle on 50 random graphs, three dimensions
Outcome criterion_curvature_oracle() {
    const auto t0 = Clock::now();
    detail::Rng rng(0xACCE55);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int n = 4 + (int)rng.below(9);  // 4..12
        const WeightedGraph g =
            make_random_connected(n, rng.bits(), 0.1, 2.0, MeasurePolicy::normalized());
        const int x = (int)rng.below(n);
        for (double dim : {kDimInf, 4.0, 2.0}) {
            const double exact = curvature_at(g, x, dim).k;
            const double est = curvature_bruteforce(g, x, dim, 64, rng.bits());
            worst = std::max(worst, std::abs(exact - est));
        }
    }
    const double secs = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "max |eigen - descent| = %.3e, %.1fs", worst, secs);
    return {worst <= 1e-6 && secs < 60.0, buf};
}

// 3. hypercube cross-module consistency: K = lambda_1 = 2/d
Outcome criterion_hypercube() {
    double worst = 0.0;
    for (int d = 1; d <= 3; ++d) {
        const WeightedGraph g = make_hypercube(d, MeasurePolicy::normalized());
        const double k = curvature_function(g, kDimInf).global_k;
        const double lam = lambda1_finite(g).lambda;
        worst = std::max({worst, std::abs(k - 2.0 / d), std::abs(lam - 2.0 / d),
                          std::abs(k - lam)});
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max deviation from 2/d: %.3e", worst);
    return {worst <= 1e-8, buf};
}

// 4. Dinkelbach equals exhaustive enumeration on 100 instances
Outcome criterion_cheeger_oracle() {
    const auto t0 = Clock::now();
    detail::Rng rng(0xC3E6E4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = 4 + (int)rng.below(15);  // 4..18
        const WeightedGraph g =
            make_random_connected(n, rng.bits(), 0.1, 2.0, MeasurePolicy::normalized());
        const int target = 2 + (int)rng.below((std::uint64_t)std::min(15, n - 1));  // 2..16
        std::vector<int> perm(n);
        for (int v = 0; v < n; ++v) perm[v] = v;
        for (int v = n - 1; v > 0; --v) std::swap(perm[v], perm[rng.below((std::uint64_t)v + 1)]);
        const VertexSubset omega(g, std::vector<int>(perm.begin(), perm.begin() + target));

        const IsoperimetricResult fast = cheeger_subset(g, omega);
        const double oracle = exhaustive_subset_cheeger(g, omega);
        const double recomputed = boundary_volume(g, fast.argmin) / volume(g, fast.argmin);
        worst = std::max({worst, std::abs(fast.value - oracle), std::abs(recomputed - oracle)});
    }
    const double secs = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "max |flow - enumeration| = %.3e, %.1fs", worst, secs);
    return {worst <= 1e-12 && secs < 120.0, buf};
}

// 5. Green / semigroup / mass identity battery, 200 draws
Outcome criterion_identity_battery() {
    const auto t0 = Clock::now();
    const auto families = standard_families();
    detail::Rng rng(0x9EEE);
    double worst = 0.0;
    for (int draw = 0; draw < 200; ++draw) {
        const WeightedGraph& g = families[draw % families.size()];
        const int n = g.num_vertices();
        const VertexFunction f = random_function(rng, n);
        const VertexFunction h = random_function(rng, n);
        const double t = rng.uniform(0.05, 2.0);
        const double s = rng.uniform(0.05, 2.0);

        double scale = 0.0;
        for (int x = 0; x < n; ++x)
            scale += g.measure(x) * (std::abs(f[x] * laplacian_at(g, h, x)) +
                                     std::abs(gamma_at(g, f, h, x)));
        worst = std::max(worst,
                         std::abs(green_residual(g, f, h)) / std::max(1.0, scale));
        worst = std::max(worst, semigroup_identities(g, f, h, t, s).max_residual);
        worst = std::max(worst, std::abs(mass_conservation_residual(g, f, t)) /
                                    std::max(1.0, norm_l1_m(g, f)));
    }
    const double secs = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst normalized residual = %.3e, %.1fs", worst, secs);
    return {worst <= 1e-9 && secs < 60.0, buf};
}

// 6. gradient/variance bounds at the computed curvature, plus tightness
Outcome criterion_equivalence_direction() {
    const auto families = standard_families();
    detail::Rng rng(0x6E4D);
    double min_slack = std::numeric_limits<double>::infinity();
    bool all_pass = true;
    std::vector<const WeightedGraph*> curved;

    for (const auto& g : families) {
        const CurvatureResult curv = curvature_function(g, kDimInf);
        if (curv.global_k > 1e-9) curved.push_back(&g);
        for (int i = 0; i < 100; ++i) {
            const VertexFunction f = random_function(rng, g.num_vertices());
            for (double t : {0.1, 1.0, 10.0}) {
                const PointwiseCheck a = gradient_bound_check(g, f, t, kDimInf, curv.global_k);
                const PointwiseCheck b = reverse_poincare_check(g, f, t, kDimInf, curv.global_k);
                min_slack = std::min({min_slack, a.min_slack, b.min_slack});
                all_pass = all_pass && a.pass && b.pass;
            }
        }
    }

    // probing K + 1e-2 must break the bounds on every curved family
    bool probes_fail = true;
    for (const WeightedGraph* g : curved) {
        const CurvatureResult curv = curvature_function(*g, kDimInf);
        const double shifted = curv.global_k + 1e-2;
        bool found = false;
        std::vector<VertexFunction> battery{curv.per_vertex[curv.argmin_vertex].witness.lift(*g)};
        for (int i = 0; i < 100; ++i) battery.push_back(random_function(rng, g->num_vertices()));
        for (const auto& f : battery) {
            for (double t : {1.0, 0.1, 0.01, 1e-3, 1e-4}) {
                if (!gradient_bound_check(*g, f, t, kDimInf, shifted).pass ||
                    !reverse_poincare_check(*g, f, t, kDimInf, shifted).pass) {
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        probes_fail = probes_fail && found;
    }

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "min slack = %.3e, curved families probed: %zu, all probes broke: %s",
                  min_slack, curved.size(), probes_fail ? "yes" : "no");
    return {all_pass && min_slack >= -1e-9 && probes_fail && !curved.empty(), buf};
}

// 7. pseudo-Poincare battery with the negative-curvature time window
Outcome criterion_pseudo_poincare() {
    detail::Rng rng(0x9B0C);
    double min_margin = std::numeric_limits<double>::infinity();
    bool all_pass = true;

    for (const auto& g : standard_families()) {
        const double k = curvature_function(g, kDimInf).global_k;
        for (int i = 0; i < 200; ++i) {
            const VertexFunction f = random_function(rng, g.num_vertices());
            double t = std::exp(rng.uniform(std::log(0.01), std::log(10.0)));
            if (k < 0.0) t = std::min(t, 1.0 / (2.0 * std::abs(k)));
            const ScalarCheck chk = pseudo_poincare_check(g, f, t, k);
            min_margin = std::min(min_margin, chk.margin);
            all_pass = all_pass && chk.pass;
        }
    }

    // negatively curved random graphs, restricted time window
    int negative_found = 0;
    for (int attempt = 0; attempt < 100 && negative_found < 10; ++attempt) {
        const WeightedGraph g =
            make_random_connected(8 + (int)rng.below(5), rng.bits(), 0.1, 2.0,
                                  MeasurePolicy::normalized());
        const double k = curvature_function(g, kDimInf).global_k;
        if (k >= -1e-6) continue;
        ++negative_found;
        const double window = 1.0 / (2.0 * std::abs(k));
        for (int i = 0; i < 20; ++i) {
            const VertexFunction f = random_function(rng, g.num_vertices());
            const double t = rng.uniform(0.0, window);
            const ScalarCheck chk = pseudo_poincare_check(g, f, t, k);
            min_margin = std::min(min_margin, chk.margin);
            all_pass = all_pass && chk.pass;
        }
    }

    char buf[128];
    std::snprintf(buf, sizeof buf, "min margin = %.3e, negative-curvature graphs: %d",
                  min_margin, negative_found);
    return {all_pass && negative_found > 0, buf};
}

// 8. indicator bounds. The first half is the gradient-mass bound. The
// second half substitutes the Dirichlet eigenvalue of U for the spectral
// bottom in the heat lower bound; on a finite connected graph the bottom
// is 0, the substitution overstates the decay, and already the two-vertex
// graph gives lhs = 1 - e^{-2t} < 2(1 - e^{-t}) = rhs in closed form.
// The criterion is evaluated as stated and reported faithfully.
Outcome criterion_indicator_bounds() {
    detail::Rng rng(0x1D1C);
    bool upper_pass = true;
    bool lower_pass = true;
    double worst_upper = std::numeric_limits<double>::infinity();
    double worst_lower = std::numeric_limits<double>::infinity();

    for (const auto& g : standard_families()) {
        for (int i = 0; i < 100; ++i) {
            const VertexSubset u = random_proper_subset(rng, g);
            const CheckReport upper = edge_indicator_bound_check(g, u);
            upper_pass = upper_pass && upper.pass;
            worst_upper = std::min(worst_upper, upper.margin);
            for (double t : {0.1, 1.0}) {
                const double lambda = lambda_bottom_dirichlet(g, u).lambda;
                const ScalarCheck lower = indicator_lower_bound_check(g, u, t, lambda);
                lower_pass = lower_pass && lower.pass;
                worst_lower = std::min(worst_lower, lower.margin);
            }
        }
    }

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "gradient-mass bound: %s (worst margin %.3e); Dirichlet-lambda lower bound: %s "
                  "(worst margin %.3e, expected: the substituted eigenvalue exceeds the "
                  "spectral bottom)",
                  upper_pass ? "pass" : "FAIL", worst_upper, lower_pass ? "pass" : "FAIL",
                  worst_lower);
    return {upper_pass && lower_pass, buf};
}

// 9. heat-kernel decay bound and the zeta function
Outcome criterion_dgg() {
    bool pass = true;

    for (double s : {0.3, 1.0, 2.5})
        for (double t : {0.1, 1.0, 7.0}) pass = pass && zeta(s, t, 0.0) == 0.0;
    pass = pass && std::abs(zeta(1.0, 1.0, 1.0) - 0.467160024646448) <= 1e-12;
    pass = pass && std::abs(zeta(1e-3, 1.0, 1.0) - 0.5) <= 1e-6;

    detail::Rng rng(0xD66);
    double min_margin = std::numeric_limits<double>::infinity();
    for (const WeightedGraph& g : {make_path(9, MeasurePolicy::normalized()),
                                   make_cycle(12, MeasurePolicy::normalized()),
                                   make_hypercube(3, MeasurePolicy::normalized()),
                                   make_lattice_ball(2, 3, MeasurePolicy::combinatorial())}) {
        const IntrinsicMetric metric = canonical_intrinsic_metric(g);
        const int n = g.num_vertices();
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> perm(n);
            for (int v = 0; v < n; ++v) perm[v] = v;
            for (int v = n - 1; v > 0; --v)
                std::swap(perm[v], perm[rng.below((std::uint64_t)v + 1)]);
            const int asz = 1 + (int)rng.below(std::max(1, n / 4));
            const int bsz = 1 + (int)rng.below(std::max(1, n / 4));
            const VertexSubset a(g, std::vector<int>(perm.begin(), perm.begin() + asz));
            const VertexSubset b(g, std::vector<int>(perm.begin() + asz,
                                                     perm.begin() + asz + bsz));
            VertexFunction f = VertexFunction::Zero(n), h = VertexFunction::Zero(n);
            for (int x : a.indices()) f[x] = rng.uniform(-1.0, 1.0);
            for (int x : b.indices()) h[x] = rng.uniform(-1.0, 1.0);
            for (double t : {0.5, 1.0, 2.0}) {
                const DggReport rep = dgg_check(g, a, b, f, h, t, 0.0, metric);
                min_margin = std::min(min_margin, rep.margin);
                pass = pass && rep.pass;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "min decay margin = %.3e", min_margin);
    return {pass, buf};
}

// 10. theorem checks across the named instances plus the default suite
Outcome criterion_theorem_checks() {
    const auto t0 = Clock::now();
    bool pass = true;
    std::string first_fail;

    std::vector<WeightedGraph> finite;
    finite.push_back(make_path(2, MeasurePolicy::normalized()));
    for (int n = 3; n <= 6; ++n) finite.push_back(make_complete(n, MeasurePolicy::normalized()));
    for (int d = 1; d <= 4; ++d) finite.push_back(make_hypercube(d, MeasurePolicy::normalized()));
    for (int n = 4; n <= 12; ++n) finite.push_back(make_cycle(n, MeasurePolicy::normalized()));

    for (const auto& g : finite) {
        const CheckReport rep = buser_check(g, VertexSubset::all(g));
        if (!rep.pass && first_fail.empty()) first_fail = "buser.finite " + rep.params;
        pass = pass && rep.pass;

        const CheckReport ch = cheeger_lower_bound_check(g);
        const bool ok = ch.pass || (ch.skipped && ch.details.at("K") <= 0.0);
        if (!ok && first_fail.empty()) first_fail = "cheeger-bound";
        pass = pass && ok;
    }

    auto truncation = [&](int d, int r) {
        const WeightedGraph host =
            make_lattice_ball(d, r + 2, MeasurePolicy::combinatorial());
        const CheckReport rep = buser_check(host, ball(host, graph_center(host), r));
        if (!rep.pass && first_fail.empty())
            first_fail = "buser.truncation d=" + std::to_string(d) + " r=" + std::to_string(r);
        pass = pass && rep.pass;
    };
    for (int r = 3; r <= 8; ++r) truncation(1, r);
    for (int r = 2; r <= 4; ++r) truncation(2, r);

    const SuiteReport suite = run_suite(default_config());
    const double secs = seconds_since(t0);
    pass = pass && suite.all_passed && secs < 600.0;

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "suite: %d checks, %d passed, %d skipped, %d expected-fail probes, %.1fs%s%s",
                  suite.total, suite.passed, suite.skipped, suite.expected_fails, secs,
                  first_fail.empty() ? "" : ", first failure: ", first_fail.c_str());
    return {pass, buf};
}

// 11. convergence to the measure-weighted average
Outcome criterion_convergence() {
    const WeightedGraph p2 = make_path(2, MeasurePolicy::normalized());
    VertexFunction f(2);
    f << 1.0, 0.0;
    const ConvergenceReport rep = convergence_to_average(p2, f, {0.5, 1.0, 2.0});
    bool pass = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        const double expected = std::exp(-2.0 * rep.times[i]) / 2.0;
        worst = std::max(worst, std::abs(rep.deviations[i] - expected));
    }
    pass = pass && worst <= 1e-10;

    const WeightedGraph q3 = make_hypercube(3, MeasurePolicy::normalized());
    detail::Rng rng(0xC0F);
    const VertexFunction u = random_function(rng, 8);
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(0.35 * i);
    const ConvergenceReport qrep = convergence_to_average(q3, u, grid);
    pass = pass && qrep.deviations_monotone;

    char buf[120];
    std::snprintf(buf, sizeof buf, "two-vertex deviation error %.3e, grid monotone: %s", worst,
                  qrep.deviations_monotone ? "yes" : "no");
    return {pass, buf};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "curvature closed form on the two-vertex graph", criterion_curvature_exact},
        {2, "curvature eigen solve vs descent oracle", criterion_curvature_oracle},
        {3, "hypercube cross-module consistency", criterion_hypercube},
        {4, "subset Cheeger flow vs enumeration", criterion_cheeger_oracle},
        {5, "Green / semigroup / mass identities", criterion_identity_battery},
        {6, "gradient and variance bounds with tightness probes", criterion_equivalence_direction},
        {7, "pseudo-Poincare battery", criterion_pseudo_poincare},
        {8, "indicator bounds", criterion_indicator_bounds},
        {9, "heat-kernel decay and zeta", criterion_dgg},
        {10, "theorem checks and default suite", criterion_theorem_checks},
        {11, "convergence to the average", criterion_convergence},
    };

    int failures = 0;
    const auto t0 = Clock::now();
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::printf("[%2d] %s  %-52s (%.1fs) %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name,
                    seconds_since(start), out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("ACCEPTANCE: %zu/%zu criteria passed in %.1fs\n", criteria.size() - failures,
                criteria.size(), seconds_since(t0));
    return failures;
}
