#pragma once

// CSV writers. Numbers use %.17g so values round-trip exactly; every file
// starts with a header line and uses LF line endings.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "starcons/characteristic.hpp"
#include "starcons/eigen.hpp"
#include "starcons/error.hpp"
#include "starcons/matrix.hpp"
#include "starcons/optimality.hpp"
#include "starcons/topology.hpp"

namespace starcons::io {

inline std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Edge weights, then a blank line and the self-weights W_ii.
inline std::string weights_csv(const Graph& g, const Matrix& w) {
    std::ostringstream out;
    out << "u,v,weight\n";
    for (const Edge& e : g.edges()) out << e.u << ',' << e.v << ',' << num(w(e.u, e.v)) << '\n';
    out << "\nnode,self_weight\n";
    for (std::size_t i = 0; i < w.order(); ++i) out << i << ',' << num(w(i, i)) << '\n';
    return out.str();
}

inline std::string matrix_csv(const Matrix& w) {
    std::ostringstream out;
    for (std::size_t j = 0; j < w.order(); ++j) out << (j ? "," : "") << "col" << j;
    out << '\n';
    for (std::size_t i = 0; i < w.order(); ++i) {
        for (std::size_t j = 0; j < w.order(); ++j) out << (j ? "," : "") << num(w(i, j));
        out << '\n';
    }
    return out.str();
}

/// Eigenvalues in decreasing order, 1-based index.
inline std::string spectrum_csv(const Spectrum& s) {
    std::ostringstream out;
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < s.size(); ++i) out << i + 1 << ',' << num(s.eigenvalues[i]) << '\n';
    return out.str();
}

inline std::string charfn_csv(std::span<const ResidualSample> samples) {
    std::ostringstream out;
    out << "theta,residual\n";
    for (const auto& s : samples) out << num(s.theta) << ',' << num(s.residual) << '\n';
    return out.str();
}

inline std::string curve_csv(std::span<const CurvePoint> curve) {
    std::ostringstream out;
    out << "k,slem,method\n";
    for (const auto& p : curve) out << p.k << ',' << num(p.slem) << ',' << (p.closed_form ? "closed-form" : "optimized") << '\n';
    return out.str();
}

inline std::string history_csv(std::span<const double> history) {
    std::ostringstream out;
    out << "iteration,best_slem\n";
    for (std::size_t i = 0; i < history.size(); ++i) out << i + 1 << ',' << num(history[i]) << '\n';
    return out.str();
}

/// States x(0), x(1), ... one row per iteration.
inline std::string trajectory_csv(const std::vector<std::vector<double>>& states) {
    std::ostringstream out;
    out << 't';
    const std::size_t nodes = states.empty() ? 0 : states.front().size();
    for (std::size_t i = 0; i < nodes; ++i) out << ",node" << i;
    out << '\n';
    for (std::size_t t = 0; t < states.size(); ++t) {
        out << t;
        for (double v : states[t]) out << ',' << num(v);
        out << '\n';
    }
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw Error("failed writing '" + path + "'");
}

} // namespace starcons::io
