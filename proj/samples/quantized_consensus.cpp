// One quantized consensus run on a symmetric star, then batch statistics.

#include <cstdio>

#include "starcons/starcons.hpp"

using namespace starcons;

int main() {
    const Matrix w = weight_matrix(SymmetricStar{3, 5}, Scheme::Optimal);

    for (Quantizer q : {Quantizer::Uniform, Quantizer::Probabilistic}) {
        std::vector<std::vector<double>> states;
        const TrialOutcome o = seeded_trial(w, QuantizerSpec{6, q}, 7, 0, kDefaultMaxIterations, &states);
        std::printf("%-13s consensus=%d iterations=%d", quantizer_name(q).c_str(), o.consensus_reached, o.iterations);
        if (o.consensus_reached) std::printf(" value=%.6f error=%.3f levels", o.consensus_value, o.normalized_error);
        std::printf("\n");
    }

    std::printf("\nbits  psi     eta     mu        rho\n");
    for (int bits : {4, 8, 12}) {
        const TrialStats s = monte_carlo(w, QuantizerSpec{bits, Quantizer::Probabilistic}, 2000, 1);
        std::printf("%-5d %-7.2f %-7.2f %+.2e %.3f\n", bits, s.psi, s.eta, s.mu, s.rho);
    }
}
