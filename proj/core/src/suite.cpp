#include "graphcurv/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "graphcurv/detail/parallel.hpp"
#include "graphcurv/detail/rng.hpp"
#include "graphcurv/metrics.hpp"
#include "report_json.hpp"

namespace graphcurv {

using nlohmann::ordered_json;

namespace {

MeasurePolicy measure_from_string(const std::string& s) {
    if (s == "normalized") return MeasurePolicy::normalized();
    if (s == "combinatorial") return MeasurePolicy::combinatorial();
    throw ConfigError("measure must be \"normalized\" or \"combinatorial\", got \"" + s + "\"");
}

std::map<std::string, int> family_params(const std::string& family, const std::vector<int>& size,
                                         const std::string& where) {
    auto arity = [&](std::size_t want) {
        if (size.size() != want)
            throw ConfigError(where + ": family \"" + family + "\" takes " +
                              std::to_string(want) + " size parameter(s)");
    };
    if (family == "path" || family == "cycle" || family == "complete") {
        arity(1);
        return {{"n", size[0]}};
    }
    if (family == "hypercube") {
        arity(1);
        return {{"d", size[0]}};
    }
    if (family == "lattice_ball") {
        arity(2);
        return {{"d", size[0]}, {"r", size[1]}};
    }
    if (family == "tree_ball") {
        arity(2);
        return {{"degree", size[0]}, {"r", size[1]}};
    }
    throw ConfigError(where + ": unknown family \"" + family + "\"");
}

std::string instance_name(const std::string& family, const std::vector<int>& size) {
    std::string s = family + "(";
    for (std::size_t i = 0; i < size.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(size[i]);
    }
    return s + ")";
}

bool has_radius(const std::string& family) {
    return family == "lattice_ball" || family == "tree_ball";
}

std::uint64_t battery_seed(const std::string& graph_digest, std::uint64_t seed,
                           const std::string& check) {
    std::uint64_t h = detail::fnv1a(graph_digest.data(), graph_digest.size());
    h = detail::fnv1a(check.data(), check.size(), h);
    return h ^ (seed * 0x9e3779b97f4a7c15ull);
}

VertexFunction random_function(detail::Rng& rng, int n) {
    VertexFunction f(n);
    for (int i = 0; i < n; ++i) f[i] = rng.normal();
    const double scale = f.array().abs().maxCoeff();
    if (scale > 0.0) f /= scale;
    return f;
}

VertexSubset random_proper_subset(detail::Rng& rng, const WeightedGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> members;
    for (int tries = 0; tries < 64; ++tries) {
        members.clear();
        for (int i = 0; i < n; ++i)
            if (rng.uniform() < 0.5) members.push_back(i);
        if (!members.empty() && static_cast<int>(members.size()) < n) break;
    }
    if (members.empty()) members.push_back(0);
    if (static_cast<int>(members.size()) == n) members.pop_back();
    return VertexSubset(g, members);
}

struct TaskContext {
    const CheckSpec* spec;
    std::string family;
    std::vector<int> size;
    MeasurePolicy policy;
    std::string instance;
    std::uint64_t seed;
    int enumeration_cap;
    int vertex_cap;
    double tolerance_override;  // NaN = keep default
};

void apply_tolerance(CheckReport& rep, double override_tol) {
    if (!std::isnan(override_tol) && !rep.skipped) {
        rep.tolerance = override_tol;
        rep.pass = rep.margin >= -rep.tolerance;
    }
}

void finalize(std::vector<CheckReport>& reports, const TaskContext& ctx) {
    for (auto& rep : reports) {
        rep.params = ctx.instance + "," + rep.params + ",seed=" + std::to_string(ctx.seed);
        apply_tolerance(rep, ctx.tolerance_override);
        if (ctx.spec->expect_fail && !rep.skipped) {
            rep.expected_fail = true;
            rep.expectation_met = !rep.pass;
        }
    }
}

std::vector<CheckReport> run_buser(const TaskContext& ctx, const WeightedGraph& g) {
    if (ctx.spec->mode == "finite")
        return {buser_check(g, VertexSubset::all(g), kDimInf, ctx.enumeration_cap)};
    // Truncation: a larger host of the same family with a two-step
    // collar, restricted to the ball matching the configured radius.
    auto params = family_params(ctx.family, ctx.size, "checks");
    const int r = params.at("r");
    params["r"] = r + 2;
    const WeightedGraph host = generate(ctx.family, params, ctx.policy, ctx.vertex_cap);
    const VertexSubset omega = ball(host, graph_center(host), r);
    CheckReport rep = buser_check(host, omega, kDimInf, ctx.enumeration_cap);
    rep.params += ",host_radius=" + std::to_string(r + 2) + ",radius=" + std::to_string(r);
    return {rep};
}

std::vector<CheckReport> run_pseudo_poincare(const TaskContext& ctx, const WeightedGraph& g) {
    const double k = curvature_function(g, kDimInf).global_k;
    std::vector<double> times = ctx.spec->times;
    if (times.empty()) times = {0.25, 1.0, 4.0};
    const int samples = ctx.spec->samples > 0 ? ctx.spec->samples : 40;
    detail::Rng rng(battery_seed(digest(g), ctx.seed, "pseudo-poincare"));

    CheckReport rep;
    rep.check = "pseudo-poincare";
    rep.graph = digest(g);
    rep.statement = "||f - P_t f||_1 <= 4 sqrt(t) ||sqrt(Gamma f)||_1";
    rep.params = "samples=" + std::to_string(samples);
    rep.pass = true;
    rep.margin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const VertexFunction f = random_function(rng, g.num_vertices());
        for (double t : times) {
            double used_t = t;
            if (k < 0.0) used_t = std::min(t, 1.0 / (2.0 * std::abs(k)));
            const ScalarCheck chk = pseudo_poincare_check(g, f, used_t, k);
            if (chk.margin < rep.margin) {
                rep.margin = chk.margin;
                rep.lhs = chk.lhs;
                rep.rhs = chk.rhs;
            }
            rep.pass = rep.pass && chk.pass;
        }
    }
    rep.details = {{"K", k}, {"samples", static_cast<double>(samples)}};
    return {rep};
}

std::vector<CheckReport> run_semigroup(const TaskContext& ctx, const WeightedGraph& g) {
    const std::string graph_digest = digest(g);
    const CurvatureResult curv = curvature_function(g, kDimInf);
    const double k = curv.global_k + ctx.spec->curvature_shift;
    std::vector<double> times = ctx.spec->times;
    const bool probe = ctx.spec->curvature_shift != 0.0;
    if (times.empty()) {
        if (probe)
            times = {1.0, 0.1, 0.01, 1e-3, 1e-4};
        else
            times = {0.1, 1.0, 10.0};
    }
    const int samples = ctx.spec->samples > 0 ? ctx.spec->samples : 20;
    detail::Rng rng(battery_seed(graph_digest, ctx.seed, "semigroup"));

    std::vector<VertexFunction> battery;
    battery.reserve(samples + 1);
    if (probe) {
        // The curvature witness at the pinch vertex is where a shifted K
        // first breaks the bounds.
        battery.push_back(curv.per_vertex[curv.argmin_vertex].witness.lift(g));
    }
    for (int s = 0; s < samples; ++s) battery.push_back(random_function(rng, g.num_vertices()));

    std::vector<CheckReport> out;

    if (!probe) {
        CheckReport ident;
        ident.check = "semigroup.identities";
        ident.graph = graph_digest;
        ident.statement = "commuting/semigroup/self-adjoint residuals and L^p contraction";
        ident.params = "samples=" + std::to_string(samples);
        double worst = 0.0;
        double worst_contraction = std::numeric_limits<double>::infinity();
        for (int s = 0; s < samples; ++s) {
            const VertexFunction f = random_function(rng, g.num_vertices());
            const VertexFunction h = random_function(rng, g.num_vertices());
            const double t = times[s % times.size()];
            const double u = times[(s + 1) % times.size()];
            const SemigroupIdentityReport r = semigroup_identities(g, f, h, t, u);
            worst = std::max(worst, r.max_residual);
            worst_contraction = std::min({worst_contraction, r.contraction_margin_l1,
                                          r.contraction_margin_l2, r.contraction_margin_linf});
        }
        ident.lhs = worst;
        ident.rhs = 1e-9;
        ident.margin = ident.rhs - ident.lhs;
        ident.tolerance = 0.0;
        ident.pass = ident.margin >= 0.0 && worst_contraction >= -1e-9;
        ident.details = {{"worst_residual", worst}, {"worst_contraction", worst_contraction}};
        out.push_back(std::move(ident));

        CheckReport mass;
        mass.check = "semigroup.mass";
        mass.graph = graph_digest;
        mass.statement = "sum m P_t f = sum m f";
        mass.params = "samples=" + std::to_string(samples);
        double worst_mass = 0.0;
        for (int s = 0; s < samples; ++s) {
            const VertexFunction f = random_function(rng, g.num_vertices());
            const double t = times[s % times.size()];
            const double res = std::abs(mass_conservation_residual(g, f, t));
            worst_mass = std::max(worst_mass, res / std::max(1.0, norm_l1_m(g, f)));
        }
        mass.lhs = worst_mass;
        mass.rhs = 1e-9;
        mass.margin = mass.rhs - mass.lhs;
        mass.tolerance = 0.0;
        mass.pass = mass.margin >= 0.0;
        out.push_back(std::move(mass));
    }

    CheckReport grad;
    grad.check = probe ? "semigroup.gradient-probe" : "semigroup.gradient";
    grad.graph = graph_digest;
    grad.statement = "Gamma(P_t f) <= e^{-2Kt} P_t Gamma(f) - c (Delta P_t f)^2";
    grad.params = "K=" + std::to_string(k) + ",samples=" + std::to_string(samples);
    grad.pass = true;
    grad.margin = std::numeric_limits<double>::infinity();
    for (const auto& f : battery)
        for (double t : times) {
            const PointwiseCheck chk = gradient_bound_check(g, f, t, kDimInf, k);
            if (chk.min_slack < grad.margin) {
                grad.margin = chk.min_slack;
                grad.lhs = chk.lhs_at_worst;
                grad.rhs = chk.rhs_at_worst;
            }
            grad.pass = grad.pass && chk.pass;
        }
    grad.details = {{"K", k}, {"shift", ctx.spec->curvature_shift}};
    out.push_back(std::move(grad));

    CheckReport var;
    var.check = probe ? "semigroup.variance-probe" : "semigroup.variance";
    var.graph = graph_digest;
    var.statement = "P_t(f^2) - (P_t f)^2 >= cA Gamma(P_t f) + cB (Delta P_t f)^2";
    var.params = "K=" + std::to_string(k) + ",samples=" + std::to_string(samples);
    var.pass = true;
    var.margin = std::numeric_limits<double>::infinity();
    for (const auto& f : battery)
        for (double t : times) {
            const PointwiseCheck chk = reverse_poincare_check(g, f, t, kDimInf, k);
            if (chk.min_slack < var.margin) {
                var.margin = chk.min_slack;
                var.lhs = chk.lhs_at_worst;
                var.rhs = chk.rhs_at_worst;
            }
            var.pass = var.pass && chk.pass;
        }
    var.details = {{"K", k}, {"shift", ctx.spec->curvature_shift}};
    out.push_back(std::move(var));

    return out;
}

std::vector<CheckReport> run_dgg(const TaskContext& ctx, const WeightedGraph& g) {
    const int n = g.num_vertices();
    std::vector<double> times = ctx.spec->times;
    if (times.empty()) times = {0.5, 1.0, 2.0};
    const int samples = ctx.spec->samples > 0 ? ctx.spec->samples : 8;
    detail::Rng rng(battery_seed(digest(g), ctx.seed, "dgg"));
    const IntrinsicMetric metric = canonical_intrinsic_metric(g);

    CheckReport rep;
    rep.check = "dgg";
    rep.graph = digest(g);
    rep.statement = "<P_t f, h> <= e^{-lambda t - zeta_s(t, rho(A,B))} ||f||_2 ||h||_2";
    rep.params = "samples=" + std::to_string(samples);
    rep.pass = true;
    rep.margin = std::numeric_limits<double>::infinity();

    for (int s = 0; s < samples; ++s) {
        // Random disjoint supports.
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
        const int amax = std::max(1, n / 4);
        const int asz = 1 + static_cast<int>(rng.below(amax));
        const int bsz = 1 + static_cast<int>(rng.below(amax));
        if (asz + bsz > n) continue;
        VertexSubset a(g, std::vector<int>(perm.begin(), perm.begin() + asz));
        VertexSubset b(g, std::vector<int>(perm.begin() + asz, perm.begin() + asz + bsz));
        VertexFunction f = VertexFunction::Zero(n);
        VertexFunction h = VertexFunction::Zero(n);
        for (int x : a.indices()) f[x] = rng.normal();
        for (int x : b.indices()) h[x] = rng.normal();
        for (double t : times) {
            const DggReport r = dgg_check(g, a, b, f, h, t, 0.0, metric);
            if (r.margin < rep.margin) {
                rep.margin = r.margin;
                rep.lhs = r.lhs;
                rep.rhs = r.rhs;
            }
            rep.pass = rep.pass && r.pass;
        }
    }
    rep.details = {{"jump_size", metric.jump_size}};
    return {rep};
}

std::vector<CheckReport> run_indicator_bound(const TaskContext& ctx, const WeightedGraph& g) {
    const int samples = ctx.spec->samples > 0 ? ctx.spec->samples : 30;
    detail::Rng rng(battery_seed(digest(g), ctx.seed, "indicator-bound"));

    CheckReport rep;
    rep.check = "indicator-bound";
    rep.graph = digest(g);
    rep.statement = "sum m sqrt(Gamma(1_U)) <= sqrt(2 D_omega) |dU|";
    rep.params = "samples=" + std::to_string(samples);
    rep.pass = true;
    rep.margin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const VertexSubset u = random_proper_subset(rng, g);
        const CheckReport one = edge_indicator_bound_check(g, u);
        if (one.margin < rep.margin) {
            rep.margin = one.margin;
            rep.lhs = one.lhs;
            rep.rhs = one.rhs;
        }
        rep.pass = rep.pass && one.pass;
    }
    return {rep};
}

std::vector<CheckReport> run_task(const TaskContext& ctx) {
    const auto params = family_params(ctx.family, ctx.size, "checks");
    const WeightedGraph g = generate(ctx.family, params, ctx.policy, ctx.vertex_cap);

    const std::string& name = ctx.spec->name;
    if (name == "buser") return run_buser(ctx, g);
    if (name == "cheeger-bound") return {cheeger_lower_bound_check(g, ctx.enumeration_cap)};
    if (name == "pseudo-poincare") return run_pseudo_poincare(ctx, g);
    if (name == "semigroup") return run_semigroup(ctx, g);
    if (name == "dgg") return run_dgg(ctx, g);
    if (name == "indicator-bound") return run_indicator_bound(ctx, g);
    throw ConfigError("unknown check name \"" + name + "\"");
}

} // namespace

SuiteConfig default_config() {
    SuiteConfig cfg;
    cfg.families = {
        {"path", {{2}}, "normalized"},
        {"complete", {{3}, {4}, {5}, {6}}, "normalized"},
        {"hypercube", {{1}, {2}, {3}, {4}}, "normalized"},
        {"cycle", {{4}, {5}, {6}, {7}, {8}, {9}, {10}, {11}, {12}}, "normalized"},
        {"lattice_ball", {{1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}, {1, 8}, {2, 2}, {2, 3}, {2, 4}},
         "combinatorial"},
        {"tree_ball", {{3, 2}}, "combinatorial"},
    };
    cfg.seeds = {1};

    CheckSpec buser_finite;
    buser_finite.name = "buser";
    buser_finite.mode = "finite";
    buser_finite.families = {"path", "complete", "hypercube", "cycle"};

    CheckSpec buser_trunc;
    buser_trunc.name = "buser";
    buser_trunc.mode = "truncation";
    buser_trunc.families = {"lattice_ball", "tree_ball"};

    CheckSpec cheeger_bound;
    cheeger_bound.name = "cheeger-bound";
    cheeger_bound.families = {"path", "complete", "hypercube", "cycle"};

    CheckSpec pseudo;
    pseudo.name = "pseudo-poincare";
    pseudo.samples = 40;

    CheckSpec semi;
    semi.name = "semigroup";
    semi.samples = 20;

    CheckSpec probe;
    probe.name = "semigroup";
    probe.curvature_shift = 1e-2;
    probe.expect_fail = true;
    probe.samples = 30;
    probe.families = {"path", "complete", "hypercube"};

    CheckSpec dgg;
    dgg.name = "dgg";
    dgg.samples = 8;

    CheckSpec indicator;
    indicator.name = "indicator-bound";
    indicator.samples = 30;

    cfg.checks = {buser_finite, buser_trunc, cheeger_bound, pseudo, semi, probe, dgg, indicator};
    return cfg;
}

namespace {

std::vector<int> parse_size_entry(const ordered_json& entry, const std::string& where) {
    std::vector<int> size;
    if (entry.is_number_integer()) {
        size.push_back(entry.get<int>());
    } else if (entry.is_array()) {
        for (const auto& v : entry) {
            if (!v.is_number_integer()) throw ConfigError(where + " must contain integers");
            size.push_back(v.get<int>());
        }
    } else {
        throw ConfigError(where + " must be an integer or an array of integers");
    }
    return size;
}

} // namespace

SuiteConfig parse_config(const std::string& json) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");

    SuiteConfig cfg;
    cfg.checks.clear();
    cfg.seeds.clear();

    if (!doc.contains("families") || !doc["families"].is_array())
        throw ConfigError("families: required array");
    int fi = 0;
    for (const auto& f : doc["families"]) {
        const std::string where = "families[" + std::to_string(fi++) + "]";
        if (!f.is_object() || !f.contains("name") || !f["name"].is_string())
            throw ConfigError(where + ".name: required string");
        FamilySpec spec;
        spec.name = f["name"].get<std::string>();
        if (!f.contains("sizes") || !f["sizes"].is_array())
            throw ConfigError(where + ".sizes: required array");
        for (const auto& s : f["sizes"])
            spec.sizes.push_back(parse_size_entry(s, where + ".sizes"));
        if (f.contains("measure")) {
            if (!f["measure"].is_string()) throw ConfigError(where + ".measure: must be a string");
            spec.measure = f["measure"].get<std::string>();
        }
        measure_from_string(spec.measure);  // validate early
        for (const auto& s : spec.sizes) family_params(spec.name, s, where);
        cfg.families.push_back(std::move(spec));
    }

    if (doc.contains("seeds")) {
        if (!doc["seeds"].is_array()) throw ConfigError("seeds: must be an array");
        for (const auto& s : doc["seeds"]) {
            if (!s.is_number_unsigned() && !s.is_number_integer())
                throw ConfigError("seeds: must contain integers");
            cfg.seeds.push_back(s.get<std::uint64_t>());
        }
    }
    if (cfg.seeds.empty()) cfg.seeds = {1};

    if (!doc.contains("checks") || !doc["checks"].is_array())
        throw ConfigError("checks: required array");
    int ci = 0;
    for (const auto& c : doc["checks"]) {
        const std::string where = "checks[" + std::to_string(ci++) + "]";
        CheckSpec spec;
        if (c.is_string()) {
            spec.name = c.get<std::string>();
        } else if (c.is_object()) {
            if (!c.contains("name") || !c["name"].is_string())
                throw ConfigError(where + ".name: required string");
            spec.name = c["name"].get<std::string>();
            if (c.contains("mode")) spec.mode = c["mode"].get<std::string>();
            if (c.contains("expect")) {
                const std::string e = c["expect"].get<std::string>();
                if (e != "pass" && e != "fail")
                    throw ConfigError(where + ".expect: must be \"pass\" or \"fail\"");
                spec.expect_fail = e == "fail";
            }
            if (c.contains("curvature_shift"))
                spec.curvature_shift = c["curvature_shift"].get<double>();
            if (c.contains("samples")) spec.samples = c["samples"].get<int>();
            if (c.contains("times"))
                for (const auto& t : c["times"]) spec.times.push_back(t.get<double>());
            if (c.contains("families"))
                for (const auto& fam : c["families"])
                    spec.families.push_back(fam.get<std::string>());
        } else {
            throw ConfigError(where + ": must be a string or an object");
        }
        cfg.checks.push_back(std::move(spec));
    }

    if (doc.contains("tolerances")) {
        if (!doc["tolerances"].is_object()) throw ConfigError("tolerances: must be an object");
        for (const auto& [key, value] : doc["tolerances"].items())
            cfg.tolerances[key] = value.get<double>();
    }
    if (doc.contains("enumeration_cap")) cfg.enumeration_cap = doc["enumeration_cap"].get<int>();
    if (doc.contains("vertex_cap")) cfg.vertex_cap = doc["vertex_cap"].get<int>();
    return cfg;
}

std::string to_json_string(const SuiteConfig& cfg) {
    ordered_json doc;
    doc["families"] = ordered_json::array();
    for (const auto& f : cfg.families) {
        ordered_json jf;
        jf["name"] = f.name;
        jf["sizes"] = ordered_json::array();
        for (const auto& s : f.sizes) {
            if (s.size() == 1)
                jf["sizes"].push_back(s[0]);
            else
                jf["sizes"].push_back(s);
        }
        jf["measure"] = f.measure;
        doc["families"].push_back(std::move(jf));
    }
    doc["seeds"] = cfg.seeds;
    doc["checks"] = ordered_json::array();
    for (const auto& c : cfg.checks) {
        ordered_json jc;
        jc["name"] = c.name;
        if (c.name == "buser") jc["mode"] = c.mode;
        if (c.expect_fail) jc["expect"] = "fail";
        if (c.curvature_shift != 0.0) jc["curvature_shift"] = c.curvature_shift;
        if (c.samples > 0) jc["samples"] = c.samples;
        if (!c.times.empty()) jc["times"] = c.times;
        if (!c.families.empty()) jc["families"] = c.families;
        doc["checks"].push_back(std::move(jc));
    }
    doc["tolerances"] = ordered_json::object();
    for (const auto& [key, value] : cfg.tolerances) doc["tolerances"][key] = value;
    doc["enumeration_cap"] = cfg.enumeration_cap;
    doc["vertex_cap"] = cfg.vertex_cap;
    return doc.dump(2);
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<TaskContext> tasks;
    for (const auto& check : cfg.checks) {
        for (const auto& family : cfg.families) {
            if (!check.families.empty() &&
                std::find(check.families.begin(), check.families.end(), family.name) ==
                    check.families.end())
                continue;
            if (check.name == "buser" && check.mode == "truncation" && !has_radius(family.name))
                continue;
            for (const auto& size : family.sizes) {
                for (std::uint64_t seed : check.name == "buser" || check.name == "cheeger-bound"
                                              ? std::vector<std::uint64_t>{cfg.seeds.front()}
                                              : cfg.seeds) {
                    TaskContext ctx;
                    ctx.spec = &check;
                    ctx.family = family.name;
                    ctx.size = size;
                    ctx.policy = measure_from_string(family.measure);
                    ctx.instance = instance_name(family.name, size);
                    ctx.seed = seed;
                    ctx.enumeration_cap = cfg.enumeration_cap;
                    ctx.vertex_cap = cfg.vertex_cap;
                    auto it = cfg.tolerances.find(check.name);
                    ctx.tolerance_override =
                        it == cfg.tolerances.end() ? std::numeric_limits<double>::quiet_NaN()
                                                   : it->second;
                    tasks.push_back(std::move(ctx));
                }
            }
        }
    }

    std::vector<std::vector<CheckReport>> slots(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    detail::parallel_for(static_cast<int>(tasks.size()), [&](int i) {
        const auto start = std::chrono::steady_clock::now();
        try {
            auto reports = run_task(tasks[i]);
            finalize(reports, tasks[i]);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            for (auto& r : reports) r.elapsed_ms = ms / static_cast<double>(reports.size());
            slots[i] = std::move(reports);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (std::size_t i = 0; i < tasks.size(); ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);

    SuiteReport sr;
    for (auto& batch : slots)
        for (auto& rep : batch) sr.reports.push_back(std::move(rep));

    for (const auto& rep : sr.reports) {
        ++sr.total;
        if (rep.skipped) {
            ++sr.skipped;
        } else if (rep.expected_fail) {
            if (rep.expectation_met)
                ++sr.expected_fails;
            else
                ++sr.unexpected;
        } else if (rep.pass) {
            ++sr.passed;
        } else {
            ++sr.failed;
        }
    }
    sr.all_passed = sr.failed == 0 && sr.unexpected == 0;
    sr.total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return sr;
}

std::string to_json_string(const SuiteReport& sr) {
    ordered_json doc;
    ordered_json summary;
    summary["total"] = sr.total;
    summary["passed"] = sr.passed;
    summary["failed"] = sr.failed;
    summary["skipped"] = sr.skipped;
    summary["expected_fails"] = sr.expected_fails;
    summary["unexpected"] = sr.unexpected;
    summary["all_passed"] = sr.all_passed;

    // Worst margin per check kind over non-skipped entries.
    std::map<std::string, double> worst;
    for (const auto& rep : sr.reports) {
        if (rep.skipped) continue;
        auto it = worst.find(rep.check);
        if (it == worst.end() || rep.margin < it->second) worst[rep.check] = rep.margin;
    }
    ordered_json jw;
    for (const auto& [key, value] : worst) jw[key] = value;
    summary["worst_margins"] = std::move(jw);
    doc["summary"] = std::move(summary);

    doc["reports"] = ordered_json::array();
    for (const auto& rep : sr.reports) doc["reports"].push_back(detail::report_to_json(rep));

    ordered_json timings;
    timings["total_ms"] = sr.total_ms;
    ordered_json per;
    per = ordered_json::array();
    for (const auto& rep : sr.reports) per.push_back(rep.elapsed_ms);
    timings["per_report_ms"] = std::move(per);
    doc["timings"] = std::move(timings);
    return doc.dump(2);
}

} // namespace graphcurv
