// SLEM of KCS stars as the number of central nodes grows. Beyond k_max the
// closed form stops being optimal and the curve comes from the optimizer.

#include <cstdio>

#include "starcons/starcons.hpp"

using namespace starcons;

int main() {
    const int m = 2, n = 3;
    std::printf("KcsStar m=%d n=%d: k_max = %d\n", m, n, k_max(m, n));
    const auto curve = kcs_slem_curve(n, m, 1, 14);
    for (const CurvePoint& p : curve)
        std::printf("  k=%2d  slem %.6f  %s\n", p.k, p.slem, p.closed_form ? "closed form" : "optimized");
    std::printf("minimum at k = %d\n", curve_argmin(curve));
}
