// graphcurv: curvature, Cheeger constants, spectra, heat semigroups and
// inequality checks on weighted graphs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "graphcurv/checks.hpp"
#include "graphcurv/curvature.hpp"
#include "graphcurv/isoperimetry.hpp"
#include "graphcurv/metrics.hpp"
#include "graphcurv/semigroup.hpp"
#include "graphcurv/spectral.hpp"
#include "graphcurv/suite.hpp"
#include "graphcurv/detail/rng.hpp"

using namespace graphcurv;
using nlohmann::ordered_json;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

WeightedGraph graph_from_file(const std::string& path) { return load_graph(slurp(path)); }

/// Subset document: {"vertices": ["id", ...]}.
VertexSubset subset_from_file(const WeightedGraph& g, const std::string& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(slurp(path));
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid subset JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw SchemaError("subset document needs a \"vertices\" array");
    std::vector<int> members;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_string()) throw SchemaError("subset vertices must be id strings");
        members.push_back(g.index_of(v.get<std::string>()));
    }
    return VertexSubset(g, members);
}

/// Function document: {"values": {"id": number, ...}}; omitted ids are 0.
VertexFunction function_from_file(const WeightedGraph& g, const std::string& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(slurp(path));
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid function JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_object())
        throw SchemaError("function document needs a \"values\" object");
    VertexFunction f = VertexFunction::Zero(g.num_vertices());
    for (const auto& [key, value] : doc["values"].items()) {
        if (!value.is_number()) throw SchemaError("function values must be numbers");
        f[g.index_of(key)] = value.get<double>();
    }
    return f;
}

std::string function_to_json(const WeightedGraph& g, const VertexFunction& f) {
    ordered_json doc;
    ordered_json values;
    for (int x = 0; x < g.num_vertices(); ++x) values[g.label(x)] = f[x];
    doc["values"] = std::move(values);
    return doc.dump(2);
}

MeasurePolicy measure_from_name(const std::string& name) {
    if (name == "normalized") return MeasurePolicy::normalized();
    if (name == "combinatorial") return MeasurePolicy::combinatorial();
    throw DomainError("measure must be normalized or combinatorial, got " + name);
}

std::map<std::string, int> parse_params(const std::string& text) {
    std::map<std::string, int> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw DomainError("params must be k=v pairs: " + item);
        params[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
    }
    return params;
}

double parse_dim(const std::string& text) {
    if (text == "inf" || text == "infinity") return kDimInf;
    return std::stod(text);
}

void print_report(const CheckReport& rep, bool as_json) {
    if (as_json) {
        std::cout << to_json_string(rep) << "\n";
        return;
    }
    if (rep.skipped) {
        std::printf("%-22s SKIPPED (%s)\n", rep.check.c_str(), rep.skip_reason.c_str());
        return;
    }
    std::printf("%-22s %s  lhs=%s rhs=%s margin=%s%s\n", rep.check.c_str(),
                rep.pass ? "PASS" : "FAIL", fmt17(rep.lhs).c_str(), fmt17(rep.rhs).c_str(),
                fmt17(rep.margin).c_str(), rep.indicative ? " (indicative)" : "");
    for (const auto& [key, value] : rep.details)
        std::printf("    %-18s %s\n", key.c_str(), fmt17(value).c_str());
}

VertexFunction random_function(detail::Rng& rng, int n) {
    VertexFunction f(n);
    for (int i = 0; i < n; ++i) f[i] = rng.uniform(-1.0, 1.0);
    const double s = f.array().abs().maxCoeff();
    if (s > 0.0) f /= s;
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

int run_check(const std::string& kind, const WeightedGraph& g,
              const std::optional<std::string>& subset_path, double dim, double t_arg,
              std::uint64_t seed, int samples, double shift, bool as_json) {
    detail::Rng rng(seed);
    std::vector<CheckReport> reports;

    if (kind == "buser") {
        const VertexSubset omega =
            subset_path ? subset_from_file(g, *subset_path) : VertexSubset::all(g);
        reports.push_back(buser_check(g, omega, dim));
    } else if (kind == "cheeger-bound") {
        reports.push_back(cheeger_lower_bound_check(g));
    } else if (kind == "pseudo-poincare") {
        const double k = curvature_function(g, kDimInf).global_k;
        CheckReport rep;
        rep.check = "pseudo-poincare";
        rep.graph = digest(g);
        rep.statement = "||f - P_t f||_1 <= 4 sqrt(t) ||sqrt(Gamma f)||_1";
        rep.params = "samples=" + std::to_string(samples);
        rep.pass = true;
        rep.margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < samples; ++i) {
            const VertexFunction f = random_function(rng, g.num_vertices());
            double t = t_arg > 0.0 ? t_arg : std::exp(rng.uniform(std::log(0.01), std::log(4.0)));
            if (k < 0.0) t = std::min(t, 1.0 / (2.0 * std::abs(k)));
            const ScalarCheck chk = pseudo_poincare_check(g, f, t, k);
            if (chk.margin < rep.margin) {
                rep.margin = chk.margin;
                rep.lhs = chk.lhs;
                rep.rhs = chk.rhs;
            }
            rep.pass = rep.pass && chk.pass;
        }
        rep.details = {{"K", k}};
        reports.push_back(std::move(rep));
    } else if (kind == "semigroup") {
        const CurvatureResult curv = curvature_function(g, kDimInf);
        const double k = curv.global_k + shift;
        const std::vector<double> times =
            t_arg > 0.0 ? std::vector<double>{t_arg} : std::vector<double>{0.1, 1.0, 10.0};
        std::vector<VertexFunction> battery;
        if (shift != 0.0) battery.push_back(curv.per_vertex[curv.argmin_vertex].witness.lift(g));
        for (int i = 0; i < samples; ++i) battery.push_back(random_function(rng, g.num_vertices()));

        CheckReport grad;
        grad.check = "semigroup.gradient";
        grad.graph = digest(g);
        grad.statement = "Gamma(P_t f) <= e^{-2Kt} P_t Gamma(f) - c (Delta P_t f)^2";
        grad.params = "K=" + fmt17(k);
        grad.pass = true;
        grad.margin = std::numeric_limits<double>::infinity();
        CheckReport var = grad;
        var.check = "semigroup.variance";
        var.statement = "P_t(f^2) - (P_t f)^2 >= cA Gamma(P_t f) + cB (Delta P_t f)^2";
        for (const auto& f : battery)
            for (double t : times) {
                const PointwiseCheck a = gradient_bound_check(g, f, t, dim, k);
                if (a.min_slack < grad.margin) {
                    grad.margin = a.min_slack;
                    grad.lhs = a.lhs_at_worst;
                    grad.rhs = a.rhs_at_worst;
                }
                grad.pass = grad.pass && a.pass;
                const PointwiseCheck b = reverse_poincare_check(g, f, t, dim, k);
                if (b.min_slack < var.margin) {
                    var.margin = b.min_slack;
                    var.lhs = b.lhs_at_worst;
                    var.rhs = b.rhs_at_worst;
                }
                var.pass = var.pass && b.pass;
            }
        reports.push_back(std::move(grad));
        reports.push_back(std::move(var));
    } else if (kind == "dgg") {
        const IntrinsicMetric metric = canonical_intrinsic_metric(g);
        const int n = g.num_vertices();
        const std::vector<double> times =
            t_arg > 0.0 ? std::vector<double>{t_arg} : std::vector<double>{0.5, 1.0, 2.0};
        CheckReport rep;
        rep.check = "dgg";
        rep.graph = digest(g);
        rep.statement = "<P_t f, h> <= e^{-lambda t - zeta_s(t, rho(A,B))} ||f||_2 ||h||_2";
        rep.params = "samples=" + std::to_string(samples);
        rep.pass = true;
        rep.margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < samples; ++i) {
            std::vector<int> perm(n);
            for (int v = 0; v < n; ++v) perm[v] = v;
            for (int v = n - 1; v > 0; --v)
                std::swap(perm[v], perm[rng.below((std::uint64_t)v + 1)]);
            const int asz = 1 + (int)rng.below(std::max(1, n / 4));
            const int bsz = 1 + (int)rng.below(std::max(1, n / 4));
            if (asz + bsz > n) continue;
            const VertexSubset a(g, std::vector<int>(perm.begin(), perm.begin() + asz));
            const VertexSubset b(g, std::vector<int>(perm.begin() + asz,
                                                     perm.begin() + asz + bsz));
            VertexFunction f = VertexFunction::Zero(n), h = VertexFunction::Zero(n);
            for (int x : a.indices()) f[x] = rng.uniform(-1.0, 1.0);
            for (int x : b.indices()) h[x] = rng.uniform(-1.0, 1.0);
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
        reports.push_back(std::move(rep));
    } else if (kind == "indicator-bound") {
        if (subset_path) {
            reports.push_back(edge_indicator_bound_check(g, subset_from_file(g, *subset_path)));
        } else {
            CheckReport rep;
            rep.check = "indicator-bound";
            rep.graph = digest(g);
            rep.statement = "sum m sqrt(Gamma(1_U)) <= sqrt(2 D_omega) |dU|";
            rep.params = "samples=" + std::to_string(samples);
            rep.pass = true;
            rep.margin = std::numeric_limits<double>::infinity();
            for (int i = 0; i < samples; ++i) {
                const CheckReport one =
                    edge_indicator_bound_check(g, random_proper_subset(rng, g));
                if (one.margin < rep.margin) {
                    rep.margin = one.margin;
                    rep.lhs = one.lhs;
                    rep.rhs = one.rhs;
                }
                rep.pass = rep.pass && one.pass;
            }
            reports.push_back(std::move(rep));
        }
    } else {
        throw DomainError("unknown check: " + kind);
    }

    bool all_pass = true;
    for (const auto& rep : reports) {
        print_report(rep, as_json);
        if (!rep.skipped) all_pass = all_pass && rep.pass;
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature, Cheeger constants, spectra and heat-semigroup checks on weighted graphs"};
    app.require_subcommand(1);

    // validate
    std::string v_graph;
    auto* validate = app.add_subcommand("validate", "schema and structural validation");
    validate->add_option("--graph", v_graph, "graph JSON file")->required();

    // generate
    std::string g_family, g_params, g_measure = "normalized", g_out;
    auto* gen = app.add_subcommand("generate", "write a generated family instance");
    gen->add_option("--family", g_family,
                    "path|cycle|complete|hypercube|lattice_ball|tree_ball")
        ->required();
    gen->add_option("--params", g_params, "comma-separated k=v, e.g. n=8 or d=2,r=3")->required();
    gen->add_option("--measure", g_measure, "normalized|combinatorial");
    gen->add_option("--out", g_out, "output file (stdout if omitted)");

    // curvature
    std::string c_graph, c_dim = "inf", c_vertex;
    bool c_oracle = false, c_json = false;
    auto* curv = app.add_subcommand("curvature", "Bakry-Emery curvature per vertex");
    curv->add_option("--graph", c_graph, "graph JSON file")->required();
    curv->add_option("--dim", c_dim, "dimension parameter, a positive number or inf");
    curv->add_option("--vertex", c_vertex, "restrict to one vertex id");
    curv->add_flag("--oracle", c_oracle, "also run the descent oracle and report agreement");
    curv->add_flag("--json", c_json, "JSON output");

    // cheeger
    std::string h_graph, h_subset;
    bool h_exact = false, h_sweep = false, h_json = false;
    auto* cheeger = app.add_subcommand("cheeger", "Cheeger constants");
    cheeger->add_option("--graph", h_graph, "graph JSON file")->required();
    cheeger->add_option("--subset", h_subset, "subset file: minimize |dU|/|U| over U inside it");
    cheeger->add_flag("--exact", h_exact, "force exhaustive enumeration");
    cheeger->add_flag("--sweep", h_sweep, "force the spectral sweep upper bound");
    cheeger->add_flag("--json", h_json, "JSON output");

    // spectrum
    std::string s_graph, s_dirichlet;
    bool s_json = false;
    auto* spectrum = app.add_subcommand("spectrum", "bottom of the spectrum");
    spectrum->add_option("--graph", s_graph, "graph JSON file")->required();
    spectrum->add_option("--dirichlet", s_dirichlet, "subset file for the Dirichlet restriction");
    spectrum->add_flag("--json", s_json, "JSON output");

    // heat
    std::string t_graph, t_f, t_dirichlet, t_out, t_method = "dense";
    double t_time = 0.0;
    auto* heat = app.add_subcommand("heat", "apply the heat semigroup P_t");
    heat->add_option("--graph", t_graph, "graph JSON file")->required();
    heat->add_option("--f", t_f, "function file {\"values\": {id: value}}")->required();
    heat->add_option("--t", t_time, "time t >= 0")->required();
    heat->add_option("--dirichlet", t_dirichlet, "subset file for absorbing boundary");
    heat->add_option("--method", t_method, "dense|krylov");
    heat->add_option("--out", t_out, "output file (stdout if omitted)");

    // check
    std::string k_kind, k_graph, k_subset, k_dim = "inf";
    double k_t = 0.0, k_shift = 0.0;
    std::uint64_t k_seed = 1;
    int k_samples = 40;
    bool k_json = false;
    auto* check = app.add_subcommand("check", "run one inequality check");
    check->add_option("kind", k_kind,
                      "buser|cheeger-bound|pseudo-poincare|semigroup|dgg|indicator-bound")
        ->required();
    check->add_option("--graph", k_graph, "graph JSON file")->required();
    check->add_option("--subset", k_subset, "subset file (buser truncation / indicator-bound U)");
    check->add_option("--dim", k_dim, "dimension parameter");
    check->add_option("--t", k_t, "fixed time (default: per-check battery)");
    check->add_option("--seed", k_seed, "battery seed");
    check->add_option("--samples", k_samples, "battery size");
    check->add_option("--shift", k_shift, "curvature shift for tightness probes");
    check->add_flag("--json", k_json, "JSON output");

    // suite
    std::string u_config, u_out;
    bool u_print = false;
    auto* suite = app.add_subcommand("suite", "run a verification suite");
    suite->add_option("--config", u_config, "config JSON (defaults baked in when omitted)");
    suite->add_option("--out", u_out, "report JSON file");
    suite->add_flag("--print-config", u_print, "print the default config and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            const WeightedGraph g = graph_from_file(v_graph);
            std::printf("ok: %d vertices, %zu edges, digest %s\n", g.num_vertices(),
                        g.num_edges(), digest(g).c_str());
            return 0;
        }

        if (gen->parsed()) {
            const WeightedGraph g =
                generate(g_family, parse_params(g_params), measure_from_name(g_measure));
            const std::string doc = serialize(g);
            if (g_out.empty())
                std::cout << doc << "\n";
            else
                spit(g_out, doc);
            return 0;
        }

        if (curv->parsed()) {
            const WeightedGraph g = graph_from_file(c_graph);
            const double dim = parse_dim(c_dim);
            std::vector<int> vertices;
            if (!c_vertex.empty())
                vertices.push_back(g.index_of(c_vertex));
            else
                for (int x = 0; x < g.num_vertices(); ++x) vertices.push_back(x);

            ordered_json out;
            out["dim"] = c_dim;
            out["vertices"] = ordered_json::array();
            double global = std::numeric_limits<double>::infinity();
            if (!c_json) {
                std::printf("%-12s %-24s%s\n", "vertex", "K", c_oracle ? " oracle  |diff|" : "");
            }
            detail::Rng rng(1);
            for (int x : vertices) {
                const VertexCurvature vc = curvature_at(g, x, dim);
                global = std::min(global, vc.k);
                double est = 0.0;
                if (c_oracle) est = curvature_bruteforce(g, x, dim, 64, rng.bits());
                if (c_json) {
                    ordered_json row;
                    row["id"] = g.label(x);
                    row["K"] = vc.k;
                    if (c_oracle) {
                        row["oracle"] = est;
                        row["diff"] = std::abs(est - vc.k);
                    }
                    out["vertices"].push_back(std::move(row));
                } else if (c_oracle) {
                    std::printf("%-12s %-24s %-24s %s\n", g.label(x).c_str(),
                                fmt17(vc.k).c_str(), fmt17(est).c_str(),
                                fmt17(std::abs(est - vc.k)).c_str());
                } else {
                    std::printf("%-12s %s\n", g.label(x).c_str(), fmt17(vc.k).c_str());
                }
            }
            if (c_json) {
                out["global_K"] = global;
                std::cout << out.dump(2) << "\n";
            } else {
                std::printf("global K = %s\n", fmt17(global).c_str());
            }
            return 0;
        }

        if (cheeger->parsed()) {
            const WeightedGraph g = graph_from_file(h_graph);
            IsoperimetricResult res;
            if (!h_subset.empty()) {
                res = cheeger_subset(g, subset_from_file(g, h_subset));
            } else if (h_sweep) {
                res = cheeger_sweep(g);
            } else if (h_exact || g.num_vertices() <= kDefaultEnumerationCap) {
                res = cheeger_finite_exact(g);
            } else {
                res = cheeger_sweep(g);
            }
            const char* method = res.method == CheegerMethod::enumeration ? "enumeration"
                                 : res.method == CheegerMethod::dinkelbach ? "dinkelbach"
                                                                           : "sweep";
            if (h_json) {
                ordered_json out;
                out["h"] = res.value;
                out["method"] = method;
                out["subset"] = ordered_json::array();
                for (int x : res.argmin.indices()) out["subset"].push_back(g.label(x));
                out["iterations"] = res.iterations;
                std::cout << out.dump(2) << "\n";
            } else {
                std::printf("h = %s  (method: %s%s)\nsubset:", fmt17(res.value).c_str(), method,
                            res.method == CheegerMethod::sweep ? ", upper bound" : "");
                for (int x : res.argmin.indices()) std::printf(" %s", g.label(x).c_str());
                std::printf("\n");
            }
            return 0;
        }

        if (spectrum->parsed()) {
            const WeightedGraph g = graph_from_file(s_graph);
            SpectralResult res;
            const char* which;
            if (!s_dirichlet.empty()) {
                res = lambda_bottom_dirichlet(g, subset_from_file(g, s_dirichlet));
                which = "dirichlet_bottom";
            } else {
                res = lambda1_finite(g);
                which = "lambda1";
            }
            if (s_json) {
                ordered_json out;
                out["kind"] = which;
                out["lambda"] = res.lambda;
                out["solver"] = res.solver == EigenSolverKind::dense ? "dense" : "lanczos";
                out["residual"] = res.residual;
                std::cout << out.dump(2) << "\n";
            } else {
                std::printf("%s = %s  (solver: %s, residual %s)\n", which,
                            fmt17(res.lambda).c_str(),
                            res.solver == EigenSolverKind::dense ? "dense" : "lanczos",
                            fmt17(res.residual).c_str());
            }
            return 0;
        }

        if (heat->parsed()) {
            const WeightedGraph g = graph_from_file(t_graph);
            HeatOptions opts;
            opts.t = t_time;
            if (t_method == "krylov")
                opts.method = HeatMethod::krylov_action;
            else if (t_method != "dense")
                throw DomainError("method must be dense or krylov");
            if (!t_dirichlet.empty()) opts.dirichlet = subset_from_file(g, t_dirichlet);
            const VertexFunction out = heat_apply(g, function_from_file(g, t_f), opts);
            const std::string doc = function_to_json(g, out);
            if (t_out.empty())
                std::cout << doc << "\n";
            else
                spit(t_out, doc);
            return 0;
        }

        if (check->parsed()) {
            const WeightedGraph g = graph_from_file(k_graph);
            const std::optional<std::string> subset =
                k_subset.empty() ? std::nullopt : std::optional<std::string>(k_subset);
            return run_check(k_kind, g, subset, parse_dim(k_dim), k_t, k_seed, k_samples,
                             k_shift, k_json);
        }

        if (suite->parsed()) {
            if (u_print) {
                std::cout << to_json_string(default_config()) << "\n";
                return 0;
            }
            const SuiteConfig cfg =
                u_config.empty() ? default_config() : parse_config(slurp(u_config));
            const SuiteReport rep = run_suite(cfg);
            const std::string doc = to_json_string(rep);
            if (u_out.empty())
                std::cout << doc << "\n";
            else
                spit(u_out, doc);
            std::fprintf(stderr,
                         "suite: %d checks, %d passed, %d failed, %d skipped, %d expected-fail, "
                         "%d unexpected (%.1f ms)\n",
                         rep.total, rep.passed, rep.failed, rep.skipped, rep.expected_fails,
                         rep.unexpected, rep.total_ms);
            return rep.all_passed ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
