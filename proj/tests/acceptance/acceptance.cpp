// Acceptance suite: one PASS/FAIL line per criterion.
//
//   starcons_acceptance                 run every criterion
//   starcons_acceptance --criterion N   run criterion N only
//
// Exit status is 0 iff every criterion that ran passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "starcons/starcons.hpp"

using namespace starcons;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void note(const std::string& s) { std::cout << "    " << s << "\n"; }

// ---------------------------------------------------------------------------

Outcome criterion1() {
    struct Row {
        Topology t;
        double printed;
    };
    const Row rows[] = {
        {SymmetricStar{3, 3}, 0.91294}, {CcsStar{2, 3}, 0.866025},  {KcsStar{3, 3, 2}, 0.893816},
        {SymmetricStar{3, 40}, 0.984946}, {CcsStar{2, 40}, 0.866025}, {KcsStar{3, 40, 2}, 0.972613},
    };
    const auto t0 = Clock::now();
    double worst_ref = 0.0, worst_eig = 0.0;
    for (const Row& r : rows) {
        const double closed = slem_closed_form(r.t);
        const double eig = slem(weight_matrix(r.t, Scheme::Optimal));
        worst_ref = std::max(worst_ref, std::abs(closed - r.printed));
        worst_eig = std::max(worst_eig, std::abs(eig - closed));
    }
    const double secs = seconds_since(t0);
    return {worst_ref <= 1e-4 && worst_eig <= 1e-8 && secs < 1.0,
            fmt("max|closed-printed| %.2e (tol 1e-4), max|eigen-closed| %.2e (tol 1e-8), %.3f s (limit 1 s)",
                worst_ref, worst_eig, secs)};
}

// Printed k_max grid, rows m = 2..11, columns n = 1..8.
constexpr int kPrintedKmax[10][8] = {
    {2, 7, 15, 26, 41, 58, 79, 104},      {3, 10, 22, 39, 61, 87, 119, 155},
    {4, 13, 29, 52, 81, 116, 158, 207},   {5, 16, 36, 64, 101, 145, 198, 259},
    {6, 20, 43, 77, 121, 174, 237, 310},  {7, 23, 50, 90, 141, 203, 277, 362},
    {8, 26, 58, 103, 161, 232, 316, 413}, {9, 29, 65, 115, 181, 261, 356, 465},
    {10, 32, 72, 128, 201, 290, 395, 517}, {11, 36, 79, 141, 221, 319, 435, 568},
};

Outcome criterion2() {
    const auto t0 = Clock::now();
    int match = 0, swapped = 0;
    std::string first;
    for (int m = 2; m <= 11; ++m)
        for (int n = 1; n <= 8; ++n) {
            const int k = k_max(m, n);
            const int printed = kPrintedKmax[m - 2][n - 1];
            if (k == printed) ++match;
            else if (first.empty()) first = fmt("m=%d n=%d: computed %d, printed %d", m, n, k, printed);
        }
    // Diagnostic only: printed cell (row r, column c) against k_max(m = c, n = r) + 1.
    for (int r = 2; r <= 11; ++r)
        for (int c = 1; c <= 8; ++c) swapped += k_max(c, r) + 1 == kPrintedKmax[r - 2][c - 1];
    const double secs = seconds_since(t0);
    note(fmt("diagnostic: %d/80 printed cells equal k_max(m=column, n=row) + 1", swapped));
    if (!first.empty()) note("first mismatch " + first);
    return {match == 80 && secs < 30.0, fmt("%d/80 cells match exactly, %.3f s (limit 30 s)", match, secs)};
}

Outcome criterion3() {
    double worst = 0.0, spread = 0.0;
    for (int m = 1; m <= 6; ++m) {
        const double expect = std::cos(std::numbers::pi / (2.0 * (m + 1)));
        double lo = 2.0, hi = -2.0;
        for (int n = 2; n <= 8; ++n) {
            const double s = slem(weight_matrix(CcsStar{m, n}, Scheme::Optimal));
            worst = std::max(worst, std::abs(s - expect));
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        spread = std::max(spread, hi - lo);
    }
    return {worst <= 1e-8 && spread <= 1e-8,
            fmt("max|slem - cos(pi/(2(m+1)))| %.2e, max spread over n %.2e (tol 1e-8)", worst, spread)};
}

Outcome criterion4() {
    double union_defect = 0.0, interlace = 0.0;
    int cases = 0, failing = 0;
    for (int m = 1; m <= 6; ++m)
        for (int n = 1; n <= 8; ++n) {
            const SymmetricStar t{m, n};
            const Graph g = build(t);
            for (Scheme s : kAllSchemes) {
                const Matrix w = weight_matrix(t, s);
                const auto blocks = stratify(t, assignment_from_matrix(g, w));
                const Spectrum full = eig_symmetric(w);
                const double d = spectrum_union_defect(full, blocks);
                const auto r = interlacing_check(blocks, full);
                union_defect = std::max(union_defect, d);
                interlace = std::max(interlace, r.worst_violation);
                ++cases;
                if (d > 1e-10 || !r.holds) ++failing;
            }
        }
    return {failing == 0, fmt("%d cases, max spectrum defect %.2e (tol 1e-10), max interlacing violation %.2e, "
                              "%d failing",
                              cases, union_defect, interlace, failing)};
}

Outcome criterion5() {
    double main_worst = 0.0, c_worst = 0.0;
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n <= 8; ++n) {
            const auto r = slackness_residuals(m, n);
            for (const auto& [key, v] : r.residuals) {
                if (key == "a_last" || key == "b_last") c_worst = std::max(c_worst, v);
                else main_worst = std::max(main_worst, v);
            }
        }
    note(fmt("endpoint recursions (coefficient-2 forms) reported separately: max residual %.2e", c_worst));
    return {main_worst <= 1e-9 && c_worst <= 1e-9,
            fmt("m,n <= 8: max residual %.2e, endpoint forms %.2e (tol 1e-9)", main_worst, c_worst)};
}

Outcome criterion6() {
    struct Anchor {
        Topology t;
        int central;
    };
    const Anchor anchors[] = {{SymmetricStar{2, 3}, 1}, {CcsStar{2, 4}, 0}, {KcsStar{2, 3, 2}, 1}};
    const auto t0 = Clock::now();
    bool ok = true;
    for (const Anchor& a : anchors) {
        const OptimizeResult r = minimize_slem(a.t);
        const double ds = std::abs(r.slem - slem_closed_form(a.t));
        const double dw = std::abs(r.class_weights.at(a.central) - optimal_weights(a.t).per_stratum.at(a.central));
        note(fmt("%s: |slem gap| %.2e (tol 1e-3), |central weight gap| %.2e (tol 1e-2)", describe(a.t).c_str(), ds,
                 dw));
        ok = ok && ds <= 1e-3 && dw <= 1e-2;
    }
    const double secs = seconds_since(t0);
    return {ok && secs < 60.0, fmt("3 anchors, %.2f s (limit 60 s)", secs)};
}

Outcome criterion7() {
    const std::vector<std::pair<CoreKind, std::vector<Branch>>> cases = {
        {CoreKind::StarCenter, {triangle_branch(), triangle_branch(), triangle_branch()}},
        {CoreKind::StarCenter, {lollipop_branch(), lollipop_branch(), lollipop_branch()}},
        {CoreKind::StarCenter, {complete_branch(4), complete_branch(4), complete_branch(4), complete_branch(4)}},
        {CoreKind::CompleteCore, {triangle_branch(), triangle_branch(), triangle_branch()}},
        {CoreKind::CompleteCore, {lollipop_branch(), lollipop_branch(), lollipop_branch()}},
    };
    int passing = 0;
    for (const auto& [core, branches] : cases) {
        const auto r = central_weight_invariance(core, branches);
        note(fmt("%s, %zu x %s: central weight %.5f, expected %.5f, error %.2e",
                 core == CoreKind::StarCenter ? "star center" : "complete core", branches.size(),
                 branches.front().name.c_str(), r.central_weight, r.expected, r.error));
        passing += r.error <= 1e-2;
    }
    return {passing == static_cast<int>(cases.size()),
            fmt("%d/%zu non-path constructions within 1e-2 (need >= 3, all run)", passing, cases.size())};
}

Outcome criterion8() {
    const auto curve = kcs_slem_curve(3, 2, 1, 30);
    const int arg = curve_argmin(curve);
    note(fmt("k_max(2, 3) = %d; slem at k=10 %.6f, k=15 %.6f", k_max(2, 3), curve[9].slem, curve[14].slem));
    return {arg == 15, fmt("curve minimum at k = %d (required 15)", arg)};
}

struct StatRef {
    int bits;
    Scheme scheme;
    double psi, eta;
};

struct TableRef {
    const char* name;
    Topology topology;
    std::vector<StatRef> cells;
};

Outcome criterion9() {
    using S = Scheme;
    const std::vector<TableRef> tables = {
        {"symmetric", SymmetricStar{2, 3},
         {{4, S::Metropolis, 100, 31.25}, {4, S::MaxDegree, 100, 27.17}, {4, S::BestConstant, 100, 31.18},
          {4, S::Optimal, 100, 30.78}, {8, S::Metropolis, 100, 56.71}, {8, S::MaxDegree, 100, 46.98},
          {8, S::BestConstant, 100, 47.22}, {8, S::Optimal, 100, 46}}},
        {"ccs", CcsStar{2, 3},
         {{4, S::Metropolis, 100, 41}, {4, S::MaxDegree, 100, 34.76}, {4, S::BestConstant, 99, 55.3},
          {4, S::Optimal, 99.7, 42.88}, {8, S::Metropolis, 100, 73.86}, {8, S::MaxDegree, 100, 60.56},
          {8, S::BestConstant, 98.52, 75.57}, {8, S::Optimal, 99.31, 67.94}}},
        {"kcs", KcsStar{2, 3, 2},
         {{4, S::Metropolis, 100, 24.98}, {4, S::MaxDegree, 100, 27.2}, {4, S::BestConstant, 100, 24.8},
          {4, S::Optimal, 100, 24.58}, {8, S::Metropolis, 100, 42.17}, {8, S::MaxDegree, 100, 42.77},
          {8, S::BestConstant, 100, 37.96}, {8, S::Optimal, 100, 36}}},
    };
    constexpr std::size_t trials = 10'000;
    constexpr std::uint64_t seed = 42;
    const auto t0 = Clock::now();
    bool a = true, b = true, c = true;
    for (const TableRef& t : tables) {
        double eta_opt8 = 0.0, eta_met8 = 0.0;
        for (const StatRef& cell : t.cells) {
            const TrialStats s = monte_carlo(t.topology, cell.scheme, QuantizerSpec{cell.bits, Quantizer::Probabilistic},
                                             trials, seed);
            std::string flags;
            if (cell.psi == 100 && s.psi < 99) a = false, flags += " [psi]";
            if (cell.scheme == S::Optimal && !(std::abs(s.eta - cell.eta) <= 0.35 * cell.eta)) b = false, flags += " [eta]";
            if (!(std::abs(s.mu) <= 0.1)) c = false, flags += " [mu]";
            if (cell.bits == 8 && cell.scheme == S::Optimal) eta_opt8 = s.eta;
            if (cell.bits == 8 && cell.scheme == S::Metropolis) eta_met8 = s.eta;
            note(fmt("%-9s %2d bits %-13s psi %6.2f eta %7.2f (printed %6.2f) mu %+.3e rho %.3f%s", t.name, cell.bits,
                     scheme_name(cell.scheme).c_str(), s.psi, s.eta, cell.eta, s.mu, s.rho, flags.c_str()));
        }
        if (!(eta_opt8 <= eta_met8)) b = false;
        note(fmt("%-9s 8-bit eta optimal %.2f vs metropolis %.2f", t.name, eta_opt8, eta_met8));
    }
    // 16-bit cells complete the table sweep for the runtime budget.
    for (const TableRef& t : tables)
        for (Scheme s : kAllSchemes)
            monte_carlo(t.topology, s, QuantizerSpec{16, Quantizer::Probabilistic}, trials, seed);
    const double sweep_secs = seconds_since(t0);

    const Matrix w = weight_matrix(SymmetricStar{3, 5}, Scheme::Optimal);
    const TrialStats uni = monte_carlo(w, QuantizerSpec{6, Quantizer::Uniform}, trials, seed);
    const TrialStats prob = monte_carlo(w, QuantizerSpec{6, Quantizer::Probabilistic}, trials, seed);
    const bool d = uni.psi < 10 && prob.psi >= 99;

    note(fmt("9a psi >= 99 on printed psi = 100 cells: %s", a ? "pass" : "FAIL"));
    note(fmt("9b optimal eta within 35%%, optimal <= metropolis at 8 bits: %s", b ? "pass" : "FAIL"));
    note(fmt("9c |mu| <= 0.1: %s", c ? "pass" : "FAIL"));
    note(fmt("9d 6-bit SymmetricStar{3,5}: uniform psi %.2f (< 10), probabilistic psi %.2f (>= 99): %s", uni.psi,
             prob.psi, d ? "pass" : "FAIL"));
    return {a && b && c && d && sweep_secs < 600.0,
            fmt("10000 trials per cell, full 3-table sweep %.1f s (limit 600 s)", sweep_secs)};
}

std::string read_all(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Runs the CLI in a fresh directory; returns every produced file (stdout included).
std::vector<std::pair<std::string, std::string>> run_cli(const std::string& cli, const std::string& args,
                                                         const std::filesystem::path& dir, int threads) {
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const std::string cmd = "cd '" + dir.string() + "' && STARCONS_THREADS=" + std::to_string(threads) + " '" + cli +
                            "' " + args + " > stdout.txt 2> /dev/null";
    if (std::system(cmd.c_str()) != 0) throw Error("command failed: " + cmd);
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        files.emplace_back(e.path().filename().string(), read_all(e.path()));
    std::sort(files.begin(), files.end());
    return files;
}

Outcome criterion10() {
    bool ok = true;
    const Matrix w = weight_matrix(KcsStar{2, 3, 2}, Scheme::Optimal);
    for (int bits : {4, 8}) {
        const QuantizerSpec q{bits, Quantizer::Probabilistic};
        const TrialStats one = monte_carlo(w, q, 2000, 99, kDefaultMaxIterations, 1);
        const TrialStats four = monte_carlo(w, q, 2000, 99, kDefaultMaxIterations, 4);
        const TrialStats again = monte_carlo(w, q, 2000, 99, kDefaultMaxIterations, 3);
        const bool same = std::memcmp(&one.eta, &four.eta, sizeof(double)) == 0 &&
                          std::memcmp(&one.mu, &four.mu, sizeof(double)) == 0 &&
                          std::memcmp(&one.rho, &again.rho, sizeof(double)) == 0 && one.psi == four.psi;
        note(fmt("monte carlo %d bits, threads 1/4/3: %s", bits, same ? "identical" : "DIFFER"));
        ok = ok && same;
    }
#ifdef STARCONS_CLI_PATH
    const auto base = std::filesystem::temp_directory_path() / "starcons_acceptance_determinism";
    const std::vector<std::string> commands = {"table --id 3 --trials 500 --seed 42", "fig --id 4 --seed 7",
                                               "optimize --topology kcs-star --m 2 --n 3 --k 2",
                                               "simulate --topology ccs-star --trials 500 --seed 5"};
    for (const auto& args : commands) {
        const auto a = run_cli(STARCONS_CLI_PATH, args, base / "a", 1);
        const auto b = run_cli(STARCONS_CLI_PATH, args, base / "b", 4);
        const bool same = a == b;
        note(fmt("cli `%s`: %zu files, %s", args.c_str(), a.size(), same ? "byte-identical" : "DIFFER"));
        ok = ok && same;
    }
    std::filesystem::remove_all(base);
#else
    note("cli not built; file-level check skipped");
#endif
    return {ok, "repeated seeded runs byte-identical across thread counts"};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {"table of six SLEM values", criterion1},
    {"k_max grid exact match", criterion2},
    {"CCS SLEM closed form and branch independence", criterion3},
    {"stratification and interlacing", criterion4},
    {"complementary slackness residuals", criterion5},
    {"optimizer against closed form", criterion6},
    {"central weight invariance", criterion7},
    {"KCS curve minimum at k = 15", criterion8},
    {"quantized Monte Carlo properties", criterion9},
    {"determinism", criterion10},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: starcons_acceptance [--criterion N]\n";
            return 1;
        }
    }
    if (only < 0 || only > static_cast<int>(kCriteria.size())) {
        std::cerr << "criterion must be in 1.." << kCriteria.size() << "\n";
        return 1;
    }
    bool all = true;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        Outcome o;
        try {
            o = kCriteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << kCriteria[i].first << " -- "
                  << o.detail << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
