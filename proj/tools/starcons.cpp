// starcons: command-line front end for the star-topology consensus library.
//
// Machine-readable results go to stdout (and to files in the working
// directory for table/fig/optimize/simulate); human summaries go to stderr.
// Exit codes: 0 ok, 1 usage error, 2 numerical failure, 3 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reference_tables.hpp"
#include "starcons/starcons.hpp"

using namespace starcons;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

struct TopologyArgs {
    std::string family = "symmetric-star";
    int m = 2;
    int n = 3;
    int k = 2;
};

const std::vector<std::string> kFamilies = {"symmetric-star", "ccs-star", "kcs-star"};

Topology make_topology(const TopologyArgs& a) {
    Topology t;
    if (a.family == "symmetric-star") t = SymmetricStar{a.m, a.n};
    else if (a.family == "ccs-star") t = CcsStar{a.m, a.n};
    else if (a.family == "kcs-star") t = KcsStar{a.m, a.n, a.k};
    else throw ParameterError("unknown topology '" + a.family + "'");
    check_parameters(t);
    return t;
}

void add_topology_flags(CLI::App* cmd, TopologyArgs& a) {
    cmd->add_option("--topology", a.family, "Star family")->check(CLI::IsMember(kFamilies));
    cmd->add_option("--m", a.m, "Tail length (edges per branch)")->check(CLI::PositiveNumber);
    cmd->add_option("--n", a.n, "Number of branches")->check(CLI::PositiveNumber);
    cmd->add_option("--k", a.k, "Central nodes (kcs-star only)")->check(CLI::PositiveNumber);
}

std::vector<std::string> scheme_names() {
    std::vector<std::string> out;
    for (Scheme s : kAllSchemes) out.push_back(scheme_name(s));
    return out;
}

// stdout and, when a path is given, the same bytes to a file.
void emit(const std::string& content, const std::string& path) {
    std::cout << content << std::flush;
    if (!path.empty()) io::write_file(path, content);
}

unsigned resolve_threads(unsigned requested) { return requested ? requested : default_thread_count(); }

// ---------------------------------------------------------------------------
// Inspection commands
// ---------------------------------------------------------------------------

int cmd_graph(const TopologyArgs& a) {
    const Graph g = build(make_topology(a));
    std::cout << edge_list_csv(g);
    std::cerr << describe(make_topology(a)) << ": " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    return 0;
}

int cmd_weights(const TopologyArgs& a, const std::string& weighting) {
    const Topology t = make_topology(a);
    std::cout << io::weights_csv(build(t), weight_matrix(t, parse_scheme(weighting)));
    return 0;
}

int cmd_matrix(const TopologyArgs& a, const std::string& weighting) {
    const Topology t = make_topology(a);
    std::cout << io::matrix_csv(weight_matrix(t, parse_scheme(weighting)));
    return 0;
}

int cmd_spectrum(const TopologyArgs& a, const std::string& weighting) {
    const Topology t = make_topology(a);
    const Spectrum s = eig_symmetric(weight_matrix(t, parse_scheme(weighting)));
    std::cout << io::spectrum_csv(s);
    std::cerr << describe(t) << " " << weighting << ": SLEM " << io::num(slem(s)) << "\n";
    return 0;
}

int cmd_charfn(const TopologyArgs& a, int points) {
    const Topology t = make_topology(a);
    std::function<double(double)> f;
    if (const auto* s = std::get_if<SymmetricStar>(&t)) {
        f = [m = s->m, n = s->n](double th) { return symmetric_characteristic(m, n, th); };
    } else if (const auto* q = std::get_if<KcsStar>(&t)) {
        f = [m = q->m, n = q->n, k = q->k](double th) { return kcs_characteristic(m, n, k, th); };
    } else {
        throw UnsupportedError("charfn: ccs-star has a closed-form SLEM and no characteristic function");
    }
    std::cout << io::charfn_csv(sample_characteristic(f, 0.0, std::numbers::pi, points));
    return 0;
}

int cmd_slem(const TopologyArgs& a, const std::string& method, bool check) {
    const Topology t = make_topology(a);
    if (check) {
        const double closed = slem_closed_form(t);
        const double eigen = slem(weight_matrix(t, Scheme::Optimal));
        std::cout << "closed_form,eigen,diff\n"
                  << io::num(closed) << ',' << io::num(eigen) << ',' << io::num(std::abs(closed - eigen)) << '\n';
        std::cerr << describe(t) << ": |closed - eigen| = " << std::abs(closed - eigen) << "\n";
        return 0;
    }
    const double v = method == "eigen" ? slem(weight_matrix(t, Scheme::Optimal)) : slem_closed_form(t);
    std::cout << "slem\n" << io::num(v) << '\n';
    if (const auto* q = std::get_if<KcsStar>(&t); q && !kcs_closed_form_valid(q->m, q->n, q->k))
        std::cerr << "warning: k = " << q->k << " exceeds k_max = " << k_max(q->m, q->n)
                  << "; closed-form weights are not optimal here\n";
    return 0;
}

int cmd_optimize(const TopologyArgs& a, const OptimizeConfig& config, const std::string& history_path) {
    const Topology t = make_topology(a);
    const OptimizeResult r = minimize_slem(t, config);
    const WeightAssignment closed = optimal_weights(t);
    std::ostringstream out;
    out << "slem,closed_form_slem,iterations,converged\n"
        << io::num(r.slem) << ',' << io::num(slem(weight_matrix(t, Scheme::Optimal))) << ',' << r.iterations << ','
        << (r.converged ? "true" : "false") << "\n\nstratum,weight,closed_form_weight\n";
    for (const auto& [s, w] : r.class_weights) out << s << ',' << io::num(w) << ',' << io::num(closed.per_stratum.at(s)) << '\n';
    emit(out.str(), "");
    io::write_file(history_path, io::history_csv(r.history));
    std::cerr << describe(t) << ": optimized SLEM " << r.slem << " after " << r.iterations << " iterations"
              << (r.converged ? "" : " (not converged)") << "; history in " << history_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

int table1(const std::string& path) {
    std::ostringstream out;
    out << "m";
    for (int n = 1; n <= 8; ++n) out << ",n" << n;
    out << '\n';
    int matches = 0, swapped_plus_one = 0, cells = 0;
    for (int m = 2; m <= 11; ++m) {
        out << m;
        for (int n = 1; n <= 8; ++n) {
            const int k = k_max(m, n);
            out << ',' << k;
            const int printed = reference::kTable1[m - reference::kTable1FirstM][n - 1];
            matches += k == printed;
            ++cells;
        }
        out << '\n';
    }
    // Printed entry at row r, column c read as k_max(m = c, n = r) + 1.
    for (int r = 2; r <= 11; ++r)
        for (int c = 1; c <= 8; ++c)
            swapped_plus_one += k_max(c, r) + 1 == reference::kTable1[r - reference::kTable1FirstM][c - 1];
    emit(out.str(), path);
    std::cerr << "k_max grid: " << matches << "/" << cells << " cells equal the reference grid; "
              << swapped_plus_one << "/" << cells << " equal k_max(m=col, n=row) + 1\n";
    return 0;
}

int table2(const std::string& path) {
    std::ostringstream out;
    out << "topology,m,n,k,closed_form,eigen,reference,delta\n";
    double worst = 0.0;
    for (const auto& e : reference::kTable2) {
        const Topology t = make_topology({std::string(e.family), e.m, e.n, e.k});
        const double closed = slem_closed_form(t);
        const double eigen = slem(weight_matrix(t, Scheme::Optimal));
        worst = std::max(worst, std::abs(closed - e.slem));
        out << e.family << ',' << e.m << ',' << e.n << ',' << e.k << ',' << io::num(closed) << ','
            << io::num(eigen) << ',' << io::num(e.slem) << ',' << io::num(closed - e.slem) << '\n';
    }
    emit(out.str(), path);
    std::cerr << "max |closed form - reference| = " << worst << "\n";
    return 0;
}

struct McArgs {
    std::size_t trials = 10'000;
    std::uint64_t seed = 42;
    int bits = 0;
    std::string weighting;
    int max_iters = kDefaultMaxIterations;
    unsigned threads = 0;
};

int table_mc(int id, const McArgs& a, const std::string& path) {
    const Topology t = id == 3 ? Topology{SymmetricStar{2, 3}} : id == 4 ? Topology{CcsStar{2, 3}} : Topology{KcsStar{2, 3, 2}};
    const auto& ref = id == 3 ? reference::kTable3 : id == 4 ? reference::kTable4 : reference::kTable5;
    if (a.bits != 0 && a.bits != 4 && a.bits != 8 && a.bits != 16)
        throw ParameterError("--bits must be 4, 8 or 16 (0 for all)");
    std::ostringstream out;
    out << "bits,weighting,psi,eta,mu,rho,ref_psi,ref_eta,ref_mu,ref_rho,d_psi,d_eta,d_mu,d_rho\n";
    std::cerr << describe(t) << ", " << a.trials << " trials, seed " << a.seed << "\n";
    for (const auto& e : ref) {
        if (a.bits && e.bits != a.bits) continue;
        if (!a.weighting.empty() && e.weighting != a.weighting) continue;
        const QuantizerSpec q{e.bits, Quantizer::Probabilistic};
        const TrialStats s = monte_carlo(t, parse_scheme(std::string(e.weighting)), q, a.trials, a.seed, a.max_iters,
                                         resolve_threads(a.threads));
        out << e.bits << ',' << e.weighting << ',' << io::num(s.psi) << ',' << io::num(s.eta) << ',' << io::num(s.mu)
            << ',' << io::num(s.rho) << ',' << io::num(e.psi) << ',' << io::num(e.eta) << ',' << io::num(e.mu) << ','
            << io::num(e.rho) << ',' << io::num(s.psi - e.psi) << ',' << io::num(s.eta - e.eta) << ','
            << io::num(s.mu - e.mu) << ',' << io::num(s.rho - e.rho) << '\n';
        char line[160];
        std::snprintf(line, sizeof line, "  %2d bits %-13s psi %6.2f eta %8.2f (ref %7.2f) mu %+.2e rho %.3g\n", e.bits,
                      std::string(e.weighting).c_str(), s.psi, s.eta, e.eta, s.mu, s.rho);
        std::cerr << line;
    }
    emit(out.str(), path);
    return 0;
}

// ---------------------------------------------------------------------------
// Figures
// ---------------------------------------------------------------------------

int fig2(int m, int n, int k_first, int k_last, bool k_max_only, const OptimizeConfig& config, unsigned threads,
         const std::string& path) {
    if (k_max_only) {
        std::cout << k_max(m, n) << '\n';
        return 0;
    }
    const auto curve = kcs_slem_curve(n, m, k_first, k_last, config, resolve_threads(threads));
    emit(io::curve_csv(curve), path);
    std::cerr << "KcsStar{m=" << m << ", n=" << n << "}: k_max = " << k_max(m, n) << ", curve minimum at k = "
              << curve_argmin(curve) << "\n";
    return 0;
}

int fig4(std::uint64_t seed, int bits, int max_iters) {
    const Topology t = SymmetricStar{3, 5};
    const Matrix w = weight_matrix(t, Scheme::Optimal);
    std::ostringstream out;
    out << "scheme,consensus,iterations,consensus_value,file\n";
    for (Quantizer q : {Quantizer::Uniform, Quantizer::Probabilistic}) {
        std::vector<std::vector<double>> traj;
        const TrialOutcome o = seeded_trial(w, QuantizerSpec{bits, q}, seed, 0, max_iters, &traj);
        const std::string file = "fig4_" + quantizer_name(q) + ".csv";
        io::write_file(file, io::trajectory_csv(traj));
        out << quantizer_name(q) << ',' << (o.consensus_reached ? "true" : "false") << ',' << o.iterations << ','
            << io::num(o.consensus_value) << ',' << file << '\n';
        std::cerr << quantizer_name(q) << ": " << (o.consensus_reached ? "consensus" : "no consensus") << " after "
                  << o.iterations << " iterations, " << traj.size() << " states in " << file << "\n";
    }
    std::cout << out.str();
    return 0;
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

struct Checker {
    std::ostringstream out;
    std::vector<std::string> failures;

    Checker() { out << "case,metric,value,tolerance,pass\n"; }

    void check(const std::string& name, const std::string& metric, double value, double tol) {
        const bool ok = value <= tol;
        out << name << ',' << metric << ',' << io::num(value) << ',' << io::num(tol) << ',' << (ok ? "true" : "false")
            << '\n';
        if (!ok) failures.push_back(name + " " + metric + " = " + io::num(value));
    }
};

std::string label(const Topology& t, Scheme s) {
    std::string d = describe(t);
    for (char& c : d)
        if (c == ',') c = ';';
    return d + " " + scheme_name(s);
}

void suite_stratification(Checker& c) {
    for (int m = 1; m <= 6; ++m)
        for (int n = 1; n <= 8; ++n) {
            const SymmetricStar t{m, n};
            const Graph g = build(t);
            for (Scheme s : kAllSchemes) {
                const Matrix w = weight_matrix(t, s);
                const auto blocks = stratify(t, assignment_from_matrix(g, w));
                c.check(label(t, s), "spectrum_union", spectrum_union_defect(eig_symmetric(w), blocks), 1e-10);
            }
        }
}

void suite_interlacing(Checker& c) {
    for (int m = 1; m <= 6; ++m)
        for (int n = 1; n <= 8; ++n) {
            const SymmetricStar t{m, n};
            const Graph g = build(t);
            for (Scheme s : kAllSchemes) {
                const Matrix w = weight_matrix(t, s);
                const auto blocks = stratify(t, assignment_from_matrix(g, w));
                const auto r = interlacing_check(blocks, eig_symmetric(w));
                c.check(label(t, s), "cauchy", r.worst_violation, 1e-10);
                if (r.second_largest_gap) c.check(label(t, s), "lambda2_is_w1_top", *r.second_largest_gap, 1e-10);
                if (r.smallest_gap) c.check(label(t, s), "lambda_min_is_w0_min", *r.smallest_gap, 1e-10);
            }
        }
}

void suite_slackness(Checker& c) {
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n <= 8; ++n) {
            const auto r = slackness_residuals(m, n);
            const std::string name = "m=" + std::to_string(m) + " n=" + std::to_string(n);
            for (const auto& [key, v] : r.residuals) c.check(name, key, v, 1e-9);
        }
}

void suite_optimizer(Checker& c) {
    const std::vector<std::pair<Topology, int>> anchors = {
        {SymmetricStar{2, 3}, 1}, {CcsStar{2, 4}, 0}, {KcsStar{2, 3, 2}, 1}};
    for (const auto& [t, central] : anchors) {
        const OptimizeResult r = minimize_slem(t);
        const std::string name = describe(t);
        std::string safe = name;
        for (char& ch : safe)
            if (ch == ',') ch = ';';
        c.check(safe, "slem_gap", std::abs(r.slem - slem_closed_form(t)), 1e-3);
        c.check(safe, "central_weight_gap",
                std::abs(r.class_weights.at(central) - optimal_weights(t).per_stratum.at(central)), 1e-2);
    }
}

void suite_invariance(Checker& c) {
    const std::vector<std::pair<CoreKind, std::vector<Branch>>> cases = {
        {CoreKind::StarCenter, {triangle_branch(), triangle_branch(), triangle_branch()}},
        {CoreKind::StarCenter, {lollipop_branch(), lollipop_branch(), lollipop_branch()}},
        {CoreKind::StarCenter, {complete_branch(4), complete_branch(4), complete_branch(4), complete_branch(4)}},
        {CoreKind::CompleteCore, {triangle_branch(), triangle_branch(), triangle_branch()}},
        {CoreKind::CompleteCore, {lollipop_branch(), lollipop_branch(), lollipop_branch()}},
        {CoreKind::CompleteCore, {path_branch(2), path_branch(2), triangle_branch(), triangle_branch()}},
    };
    for (const auto& [core, branches] : cases) {
        std::string name = core == CoreKind::StarCenter ? "star-center" : "complete-core";
        for (const Branch& b : branches) name += " " + b.name;
        c.check(name, "central_weight_gap", central_weight_invariance(core, branches).error, 1e-2);
    }
}

int cmd_verify(const std::string& suite) {
    Checker c;
    if (suite == "stratification") suite_stratification(c);
    else if (suite == "interlacing") suite_interlacing(c);
    else if (suite == "slackness") suite_slackness(c);
    else if (suite == "optimizer") suite_optimizer(c);
    else if (suite == "invariance") suite_invariance(c);
    else throw ParameterError("unknown suite '" + suite + "'");
    std::cout << c.out.str();
    if (c.failures.empty()) {
        std::cerr << "verify " << suite << ": all checks pass\n";
        return 0;
    }
    std::cerr << "verify " << suite << ": " << c.failures.size() << " failing checks\n";
    for (const auto& f : c.failures) std::cerr << "  " << f << "\n";
    return kExitVerification;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    TopologyArgs topology;
    std::string weighting = "optimal";
    int bits = 8;
    std::string scheme = "probabilistic";
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    int max_iters = kDefaultMaxIterations;
    std::string output;  // empty: simulate.<format>
    std::string format = "csv";
};

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ParameterError(where + " must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ParameterError("unknown field '" + key + "' in " + where);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot read config '" + path + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ParameterError("config '" + path + "': " + e.what());
    }
    reject_unknown(j, {"topology", "weighting", "bits", "scheme", "trials", "seed", "max_iters", "output", "format"},
                   "config");
    ExperimentConfig c;
    try {
        if (j.contains("topology")) {
            const json& t = j["topology"];
            reject_unknown(t, {"family", "m", "n", "k"}, "topology");
            c.topology.family = t.value("family", c.topology.family);
            c.topology.m = t.value("m", c.topology.m);
            c.topology.n = t.value("n", c.topology.n);
            c.topology.k = t.value("k", c.topology.k);
        }
        c.weighting = j.value("weighting", c.weighting);
        c.bits = j.value("bits", c.bits);
        c.scheme = j.value("scheme", c.scheme);
        c.trials = j.value("trials", c.trials);
        c.seed = j.value("seed", c.seed);
        c.max_iters = j.value("max_iters", c.max_iters);
        c.output = j.value("output", c.output);
        c.format = j.value("format", c.format);
    } catch (const json::exception& e) {
        throw ParameterError("config '" + path + "': " + e.what());
    }
    return c;
}

int cmd_simulate(const ExperimentConfig& c, unsigned threads) {
    if (c.format != "csv" && c.format != "json") throw ParameterError("format must be csv or json");
    if (c.trials < 1) throw ParameterError("trials must be >= 1");
    const Topology t = make_topology(c.topology);
    const Scheme w = parse_scheme(c.weighting);
    const QuantizerSpec q{c.bits, parse_quantizer(c.scheme)};
    const TrialStats s = monte_carlo(t, w, q, c.trials, c.seed, c.max_iters, resolve_threads(threads));
    std::string content;
    if (c.format == "json") {
        json j = {{"topology", describe(t)}, {"weighting", c.weighting}, {"scheme", c.scheme},
                  {"bits", c.bits},          {"trials", c.trials},       {"seed", c.seed},
                  {"max_iters", c.max_iters}};
        auto put = [&](const char* k, double v) { j[k] = std::isfinite(v) ? json(v) : json(nullptr); };
        put("psi", s.psi);
        put("eta", s.eta);
        put("mu", s.mu);
        put("rho", s.rho);
        content = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "bits,weighting,psi,eta,mu,rho\n"
            << c.bits << ',' << c.weighting << ',' << io::num(s.psi) << ',' << io::num(s.eta) << ',' << io::num(s.mu)
            << ',' << io::num(s.rho) << '\n';
        content = out.str();
    }
    emit(content, c.output.empty() ? "simulate." + c.format : c.output);
    std::cerr << describe(t) << " " << c.weighting << ", " << c.bits << "-bit " << c.scheme << ": psi " << s.psi
              << ", eta " << s.eta << ", mu " << s.mu << ", rho " << s.rho << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"starcons: optimal weights, spectra and quantized consensus on star topologies"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.footer("Environment: STARCONS_THREADS sets the default worker count.\n"
               "Exit codes: 0 ok, 1 usage error, 2 numerical failure, 3 verification failure.");

    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (0: STARCONS_THREADS or hardware)");

    TopologyArgs topo;
    std::string weighting = "optimal";

    auto* graph = app.add_subcommand("graph", "Edge list of a topology");
    add_topology_flags(graph, topo);

    auto* weights = app.add_subcommand("weights", "Edge and self weights");
    add_topology_flags(weights, topo);
    weights->add_option("--weighting", weighting, "Weighting scheme")->check(CLI::IsMember(scheme_names()));

    auto* matrix = app.add_subcommand("matrix", "Dense weight matrix");
    add_topology_flags(matrix, topo);
    matrix->add_option("--weighting", weighting, "Weighting scheme")->check(CLI::IsMember(scheme_names()));

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the weight matrix");
    add_topology_flags(spectrum, topo);
    spectrum->add_option("--weighting", weighting, "Weighting scheme")->check(CLI::IsMember(scheme_names()));

    int points = 1001;
    auto* charfn = app.add_subcommand("charfn", "Characteristic function sampled on [0, pi]");
    add_topology_flags(charfn, topo);
    charfn->add_option("--points", points, "Sample count")->check(CLI::Range(2, 10'000'000));

    std::string method = "closed-form";
    bool check = false;
    auto* slem_cmd = app.add_subcommand("slem", "SLEM under optimal weights");
    add_topology_flags(slem_cmd, topo);
    slem_cmd->add_option("--method", method, "closed-form or eigen")
        ->check(CLI::IsMember({"closed-form", "eigen"}));
    slem_cmd->add_flag("--check", check, "Print both methods and their difference");

    OptimizeConfig oc;
    std::string history = "optimize_history.csv";
    auto* optimize = app.add_subcommand("optimize", "Subgradient SLEM minimization with strata tied");
    add_topology_flags(optimize, topo);
    optimize->add_option("--max-iters", oc.max_iterations, "Iteration budget")->check(CLI::PositiveNumber);
    optimize->add_option("--step", oc.step_scale, "Step scale c in c/sqrt(t)")->check(CLI::PositiveNumber);
    optimize->add_option("--history", history, "Best-so-far SLEM per iteration (CSV)");

    int table_id = 0;
    McArgs mc;
    std::string table_out;
    auto* table = app.add_subcommand("table", "Reproduce a results table as CSV (file tableN.csv)");
    table->add_option("--id", table_id, "Table 1..5")->required()->check(CLI::Range(1, 5));
    table->add_option("--trials", mc.trials, "Monte Carlo trials per cell (tables 3-5)")->check(CLI::PositiveNumber);
    table->add_option("--seed", mc.seed, "Master seed (tables 3-5)");
    table->add_option("--bits", mc.bits, "Only this bit depth: 4, 8 or 16 (0: all)");
    table->add_option("--weighting", mc.weighting, "Only this weighting (empty: all)");
    table->add_option("--max-iters", mc.max_iters, "Iteration cap per trial")->check(CLI::PositiveNumber);
    table->add_option("--output", table_out, "Output file (empty: tableN.csv)");

    int fig_id = 0;
    std::uint64_t fig_seed = 7;
    int fig_m = 2, fig_n = 3, k_first = 1, k_last = 30, fig_bits = 6;
    bool k_max_only = false;
    auto* fig = app.add_subcommand("fig", "Reproduce figure data as CSV (fig2.csv or fig4_<scheme>.csv)");
    fig->add_option("--id", fig_id, "Figure 2 or 4")->required()->check(CLI::IsMember({2, 4}));
    fig->add_option("--seed", fig_seed, "Seed of the figure 4 trial");
    fig->add_option("--bits", fig_bits, "Quantizer bits (figure 4)")->check(CLI::Range(1, 30));
    fig->add_option("--m", fig_m, "Tail length (figure 2)")->check(CLI::PositiveNumber);
    fig->add_option("--n", fig_n, "Branches (figure 2)")->check(CLI::PositiveNumber);
    fig->add_option("--k-first", k_first, "First k (figure 2)")->check(CLI::PositiveNumber);
    fig->add_option("--k-last", k_last, "Last k (figure 2)")->check(CLI::PositiveNumber);
    fig->add_flag("--k-max-only", k_max_only, "Print k_max and exit (figure 2)");
    fig->add_option("--max-iters", mc.max_iters, "Iteration cap (figure 4)")->check(CLI::PositiveNumber);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "Run a property suite; exit 3 if any check fails");
    verify->add_option("--suite", suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"stratification", "interlacing", "slackness", "optimizer", "invariance"}));

    ExperimentConfig ec;
    std::string config_path;
    auto* simulate = app.add_subcommand("simulate", "Quantized consensus Monte Carlo (file simulate.<format>)");
    simulate->add_option("--config", config_path, "JSON experiment config; flags given explicitly override it");
    add_topology_flags(simulate, ec.topology);
    auto* o_weighting =
        simulate->add_option("--weighting", ec.weighting, "Weighting scheme")->check(CLI::IsMember(scheme_names()));
    auto* o_bits = simulate->add_option("--bits", ec.bits, "Quantizer bits")->check(CLI::Range(1, 30));
    auto* o_scheme = simulate->add_option("--scheme", ec.scheme, "Quantizer")
                         ->check(CLI::IsMember({"none", "uniform", "probabilistic"}));
    auto* o_trials = simulate->add_option("--trials", ec.trials, "Trials")->check(CLI::PositiveNumber);
    auto* o_seed = simulate->add_option("--seed", ec.seed, "Master seed");
    auto* o_iters = simulate->add_option("--max-iters", ec.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
    auto* o_output = simulate->add_option("--output", ec.output, "Output file (empty: simulate.<format>)");
    auto* o_format = simulate->add_option("--format", ec.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*graph) return cmd_graph(topo);
        if (*weights) return cmd_weights(topo, weighting);
        if (*matrix) return cmd_matrix(topo, weighting);
        if (*spectrum) return cmd_spectrum(topo, weighting);
        if (*charfn) return cmd_charfn(topo, points);
        if (*slem_cmd) return cmd_slem(topo, method, check);
        if (*optimize) return cmd_optimize(topo, oc, history);
        if (*table) {
            const std::string path = table_out.empty() ? "table" + std::to_string(table_id) + ".csv" : table_out;
            mc.threads = threads;
            if (table_id == 1) return table1(path);
            if (table_id == 2) return table2(path);
            return table_mc(table_id, mc, path);
        }
        if (*fig) {
            if (fig_id == 2) return fig2(fig_m, fig_n, k_first, k_last, k_max_only, {}, threads, "fig2.csv");
            return fig4(fig_seed, fig_bits, mc.max_iters);
        }
        if (*verify) return cmd_verify(suite);
        if (*simulate) {
            ExperimentConfig c = ec;
            if (!config_path.empty()) {
                c = load_config(config_path);
                auto* t = simulate;
                if (t->count("--topology")) c.topology.family = ec.topology.family;
                if (t->count("--m")) c.topology.m = ec.topology.m;
                if (t->count("--n")) c.topology.n = ec.topology.n;
                if (t->count("--k")) c.topology.k = ec.topology.k;
                if (o_weighting->count()) c.weighting = ec.weighting;
                if (o_bits->count()) c.bits = ec.bits;
                if (o_scheme->count()) c.scheme = ec.scheme;
                if (o_trials->count()) c.trials = ec.trials;
                if (o_seed->count()) c.seed = ec.seed;
                if (o_iters->count()) c.max_iters = ec.max_iters;
                if (o_output->count()) c.output = ec.output;
                if (o_format->count()) c.format = ec.format;
            }
            return cmd_simulate(c, threads);
        }
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
