#pragma once

// Published reference values for the `table` and `fig` commands.

#include <array>
#include <string_view>

namespace starcons::reference {

// k_max grid as printed: rows m = 2..11, columns n = 1..8.
inline constexpr int kTable1FirstM = 2;
inline constexpr std::array<std::array<int, 8>, 10> kTable1 = {{
    {2, 7, 15, 26, 41, 58, 79, 104},
    {3, 10, 22, 39, 61, 87, 119, 155},
    {4, 13, 29, 52, 81, 116, 158, 207},
    {5, 16, 36, 64, 101, 145, 198, 259},
    {6, 20, 43, 77, 121, 174, 237, 310},
    {7, 23, 50, 90, 141, 203, 277, 362},
    {8, 26, 58, 103, 161, 232, 316, 413},
    {9, 29, 65, 115, 181, 261, 356, 465},
    {10, 32, 72, 128, 201, 290, 395, 517},
    {11, 36, 79, 141, 221, 319, 435, 568},
}};

struct SlemEntry {
    std::string_view family;
    int m, n, k;
    double slem;
};

inline constexpr std::array<SlemEntry, 6> kTable2 = {{
    {"symmetric-star", 3, 3, 1, 0.91294},
    {"ccs-star", 2, 3, 1, 0.866025},
    {"kcs-star", 3, 3, 2, 0.893816},
    {"symmetric-star", 3, 40, 1, 0.984946},
    {"ccs-star", 2, 40, 1, 0.866025},
    {"kcs-star", 3, 40, 2, 0.972613},
}};

struct StatEntry {
    int bits;
    std::string_view weighting;
    double psi, eta, mu, rho;
};

// Quantized consensus statistics, probabilistic quantizer, n = 3, m = 2.
inline constexpr std::array<StatEntry, 12> kTable3 = {{
    {4, "metropolis", 100, 31.25, 4.7e-3, 0.48},
    {4, "max-degree", 100, 27.17, 1.4e-2, 0.43},
    {4, "best-constant", 100, 31.18, 3.1e-3, 0.594},
    {4, "optimal", 100, 30.78, 3.7e-3, 0.563},
    {8, "metropolis", 100, 56.71, 1.46e-2, 1.022},
    {8, "max-degree", 100, 46.98, 2.54e-3, 0.86},
    {8, "best-constant", 100, 47.22, 2.34e-3, 1.04},
    {8, "optimal", 100, 46, 1.21e-2, 0.9},
    {16, "metropolis", 100, 107.94, 3.4e-3, 2.16},
    {16, "max-degree", 100, 87.43, 9.23e-3, 1.73},
    {16, "best-constant", 100, 78.98, 1.2, 4.7e3},
    {16, "optimal", 100, 77.72, 0.6, 1.57e3},
}};

inline constexpr std::array<StatEntry, 12> kTable4 = {{
    {4, "metropolis", 100, 41, 4e-3, 0.464},
    {4, "max-degree", 100, 34.76, 5.18e-4, 0.42},
    {4, "best-constant", 99, 55.3, 5.3e-3, 0.81},
    {4, "optimal", 99.7, 42.88, 2.4e-3, 0.654},
    {8, "metropolis", 100, 73.86, 1.14e-3, 1.02},
    {8, "max-degree", 100, 60.56, 2.45e-2, 0.82},
    {8, "best-constant", 98.52, 75.57, 1.58e-2, 1.36},
    {8, "optimal", 99.31, 67.94, 1.06e-2, 0.97},
    {16, "metropolis", 97.6, 139.7, 6.1e-3, 2.215},
    {16, "max-degree", 100, 112.98, 1.82e-3, 1.71},
    {16, "best-constant", 94.95, 112.8, -0.66, 1.4e4},
    {16, "optimal", 100, 104.6, 0.576, 2.14e3},
}};

// k = 2 central nodes.
inline constexpr std::array<StatEntry, 12> kTable5 = {{
    {4, "metropolis", 100, 24.98, 4.62e-4, 0.4},
    {4, "max-degree", 100, 27.2, 3.93e-3, 0.402},
    {4, "best-constant", 100, 24.8, 4.8e-3, 0.39},
    {4, "optimal", 100, 24.58, 4.23e-3, 0.41},
    {8, "metropolis", 100, 42.17, 8.25e-4, 0.72},
    {8, "max-degree", 100, 42.77, 18e-3, 0.68},
    {8, "best-constant", 100, 37.96, 2.67e-3, 0.66},
    {8, "optimal", 100, 36, 13.7e-3, 0.62},
    {16, "metropolis", 100, 77.04, 8.27e-3, 1.4},
    {16, "max-degree", 100, 76.08, 15.4e-3, 1.32},
    {16, "best-constant", 100, 64.08, 2.53e-3, 1.2},
    {16, "optimal", 100, 59.41, 93.9e-3, 52.7},
}};

// Curve minimum for KcsStar{m = 2, n = 3, k}, k in [1, 30].
inline constexpr int kFig2Argmin = 15;

} // namespace starcons::reference
