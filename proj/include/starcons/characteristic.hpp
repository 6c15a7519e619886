#pragma once

// Characteristic equations of the optimally weighted star families and the
// root finders built on them. With s = cos(theta):
//
//   symmetric star:  (n-2) cos((m-1/2) theta) - (n+2) cos((m+1/2) theta) = 0
//   KCS star:        (cos(theta) (n+2k) - n) sin(m theta) - 2k sin((m-1) theta) = 0
//
// where m counts the nodes of each tail. The KCS form reduces to the
// symmetric one at k = 1. The SLEM is cos of the smallest root in (0, pi).

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "starcons/error.hpp"

namespace starcons {

/// Grid step used to bracket the first sign change in (0, pi).
inline constexpr double kRootScanStep = std::numbers::pi / 1e4;
/// Bracket width at which bisection stops.
inline constexpr double kRootTolerance = 1e-13;

inline double symmetric_characteristic(int m, int n, double theta) {
    return (n - 2.0) * std::cos((m - 0.5) * theta) - (n + 2.0) * std::cos((m + 0.5) * theta);
}

inline double kcs_characteristic(int m, int n, int k, double theta) {
    return (std::cos(theta) * (n + 2.0 * k) - n) * std::sin(m * theta) -
           2.0 * k * std::sin((m - 1.0) * theta);
}

/// Smallest root of f in (0, pi): scan with kRootScanStep for the first sign
/// change, then bisect. Throws NumericalError if no bracket is found.
template <class F>
double smallest_root_in_zero_pi(F&& f) {
    const int steps = static_cast<int>(std::lround(std::numbers::pi / kRootScanStep));
    double a = 0.0;
    double fa = f(a);
    if (fa == 0.0) {
        a = kRootScanStep;
        fa = f(a);
    }
    for (int i = (a == 0.0 ? 1 : 2); i < steps; ++i) {
        const double b = i * kRootScanStep;
        const double fb = f(b);
        if (fa == 0.0) return a;
        if ((fa < 0.0) != (fb < 0.0)) {
            double lo = a, hi = b, flo = fa;
            while (hi - lo > kRootTolerance) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double fm = f(mid);
                if (fm == 0.0) return mid;
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        a = b;
        fa = fb;
    }
    throw NumericalError("characteristic equation: no sign change found in (0, pi)");
}

/// Smallest root of the symmetric-star characteristic equation.
inline double theta_root_symmetric(int m, int n) {
    if (m < 1 || n < 1) throw ParameterError("theta_root_symmetric requires m >= 1, n >= 1");
    return smallest_root_in_zero_pi([=](double t) { return symmetric_characteristic(m, n, t); });
}

/// Smallest root of the KCS characteristic equation, no k_max check.
inline double kcs_root(int m, int n, int k) {
    if (m < 1 || n < 1 || k < 1) throw ParameterError("kcs root requires m, n, k >= 1");
    return smallest_root_in_zero_pi([=](double t) { return kcs_characteristic(m, n, k, t); });
}

/// The eigenvalue 1 - n w1 = (2k - n)/(2k + n) carried by the k - 1 modes
/// that are antisymmetric across the central nodes.
inline double kcs_central_eigenvalue(int n, int k) {
    return (2.0 * k - n) / (2.0 * k + n);
}

/// True when (2k - n)/(2k + n) <= cos(theta_k), i.e. the closed form applies.
/// Always true for k = 1, which has no antisymmetric central modes.
inline bool kcs_closed_form_valid(int m, int n, int k) {
    if (k == 1) return true;
    return kcs_central_eigenvalue(n, k) <= std::cos(kcs_root(m, n, k));
}

/// Largest k >= 1 for which the closed-form KCS weights stay optimal:
/// increase k from 1 until the validity inequality first fails.
inline int k_max(int m, int n) {
    if (m < 1 || n < 1) throw ParameterError("k_max requires m >= 1, n >= 1");
    constexpr int kSearchCap = 1'000'000;
    int k = 1;
    while (kcs_closed_form_valid(m, n, k + 1)) {
        if (++k >= kSearchCap) throw NumericalError("k_max search did not terminate");
    }
    return k;
}

struct KcsRoot {
    double theta = 0.0;
    bool beyond_k_max = false;  ///< k > k_max(m, n): optimality not guaranteed
};

inline KcsRoot theta_root_kcs(int m, int n, int k) {
    KcsRoot r;
    r.theta = kcs_root(m, n, k);
    r.beyond_k_max = k > k_max(m, n);
    return r;
}

/// SLEM of the optimally weighted CCS star, independent of n.
inline double ccs_slem(int m) {
    if (m < 1) throw ParameterError("ccs_slem requires m >= 1");
    return std::cos(std::numbers::pi / (2.0 * (m + 1)));
}

/// Residual samples of a characteristic function on a uniform theta grid,
/// endpoints included.
struct ResidualSample {
    double theta;
    double residual;
};

inline std::vector<ResidualSample> sample_characteristic(const std::function<double(double)>& f,
                                                         double lo, double hi, int points) {
    if (points < 2) throw ParameterError("need at least two grid points");
    std::vector<ResidualSample> out;
    out.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double t = lo + (hi - lo) * i / (points - 1);
        out.push_back({t, f(t)});
    }
    return out;
}

} // namespace starcons
