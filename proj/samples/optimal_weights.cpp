// Closed-form optimal weights of the three star families compared with the
// common heuristics.

#include <cstdio>

#include "starcons/starcons.hpp"

using namespace starcons;

int main() {
    const Topology topologies[] = {SymmetricStar{3, 5}, CcsStar{2, 5}, KcsStar{3, 5, 2}};
    for (const Topology& t : topologies) {
        std::printf("%s\n", describe(t).c_str());
        for (const auto& [stratum, w] : optimal_weights(t).per_stratum) std::printf("  w%d = %.6f\n", stratum, w);
        std::printf("  closed-form SLEM %.6f\n", slem_closed_form(t));
        for (Scheme s : kAllSchemes) std::printf("  %-14s SLEM %.6f\n", scheme_name(s).c_str(), slem(weight_matrix(t, s)));
    }
}
