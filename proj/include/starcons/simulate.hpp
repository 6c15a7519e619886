#pragma once

// Consensus iteration x(t+1) = Q(W x(t)) with uniform or probabilistic
// quantization on 2^b evenly spaced levels in [-1, 1], and Monte Carlo
// statistics over independent random initial states.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "starcons/error.hpp"
#include "starcons/matrix.hpp"
#include "starcons/parallel.hpp"
#include "starcons/random.hpp"
#include "starcons/topology.hpp"
#include "starcons/weights.hpp"

namespace starcons {

enum class Quantizer { None, Uniform, Probabilistic };

inline std::string quantizer_name(Quantizer q) {
    switch (q) {
        case Quantizer::None: return "none";
        case Quantizer::Uniform: return "uniform";
        case Quantizer::Probabilistic: return "probabilistic";
    }
    return "?";
}

inline Quantizer parse_quantizer(const std::string& s) {
    for (Quantizer q : {Quantizer::None, Quantizer::Uniform, Quantizer::Probabilistic})
        if (quantizer_name(q) == s) return q;
    throw ParameterError("unknown quantizer '" + s + "'");
}

/// Unquantized runs stop when every state is within this of the mean.
inline constexpr double kExactConsensusTolerance = 1e-9;
inline constexpr int kDefaultMaxIterations = 10'000;

struct QuantizerSpec {
    int bits = 8;
    Quantizer scheme = Quantizer::Probabilistic;

    void validate() const {
        if (scheme != Quantizer::None && (bits < 1 || bits > 30))
            throw ParameterError("quantizer bits must be in [1, 30]");
    }
    /// Index of the top level, 2^b - 1.
    std::int64_t top() const { return (std::int64_t{1} << bits) - 1; }
    std::int64_t level_count() const { return top() + 1; }
    double resolution() const { return 2.0 / static_cast<double>(top()); }
    /// Value of level i: -1 + 2i/(2^b - 1), computed so both ends are exact.
    double level(std::int64_t i) const {
        const double t = static_cast<double>(top());
        return (2.0 * static_cast<double>(i) - t) / t;
    }
};

/// Level index of Q(x). `rng` is used by the probabilistic scheme only.
inline std::int64_t quantize_index(double x, const QuantizerSpec& spec, CounterRng& rng) {
    const std::int64_t top = spec.top();
    if (!(x > -1.0)) return 0;  // also maps NaN to the bottom level
    if (x >= 1.0) return top;
    std::int64_t lo = static_cast<std::int64_t>(std::floor((x + 1.0) * 0.5 * static_cast<double>(top)));
    lo = std::clamp<std::int64_t>(lo, 0, top - 1);
    // The scaled position can round across a level; settle on level(lo) <= x < level(lo+1).
    while (lo > 0 && x < spec.level(lo)) --lo;
    while (lo + 1 < top && x >= spec.level(lo + 1)) ++lo;
    const double below = spec.level(lo);
    const double above = spec.level(lo + 1);
    if (x == below) return lo;
    if (x == above) return lo + 1;
    switch (spec.scheme) {
        case Quantizer::Uniform: return x >= 0.5 * (below + above) ? lo + 1 : lo;
        case Quantizer::Probabilistic: return rng.uniform() < (x - below) / (above - below) ? lo + 1 : lo;
        case Quantizer::None: break;
    }
    throw ParameterError("quantize_index needs a quantizing scheme");
}

/// Q(x); identity when the scheme is None.
inline double quantize(double x, const QuantizerSpec& spec, CounterRng& rng) {
    if (spec.scheme == Quantizer::None) return x;
    return spec.level(quantize_index(x, spec, rng));
}

/// Unquantized trajectory x(0), ..., x(steps) of x(t+1) = W x(t).
inline std::vector<std::vector<double>> iterate(const Matrix& w, std::span<const double> x0, int steps) {
    if (x0.size() != w.order()) throw ParameterError("iterate: state dimension does not match W");
    if (steps < 0) throw ParameterError("iterate: steps must be >= 0");
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.emplace_back(x0.begin(), x0.end());
    for (int t = 0; t < steps; ++t) out.push_back(w.apply(out.back()));
    return out;
}

struct TrialOutcome {
    bool consensus_reached = false;
    int iterations = 0;  ///< update steps performed (max_iters when the cap is hit)
    double consensus_value = std::numeric_limits<double>::quiet_NaN();
    /// (consensus value - mean of the unquantized x0) / resolution; the
    /// resolution is 1 for unquantized runs. NaN without consensus.
    double normalized_error = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

inline bool all_equal(const std::vector<std::int64_t>& idx) {
    return std::all_of(idx.begin(), idx.end(), [&](std::int64_t v) { return v == idx.front(); });
}

inline bool near_mean(std::span<const double> x, double tol) {
    const double m = mean(x);
    return std::all_of(x.begin(), x.end(), [&](double v) { return std::abs(v - m) <= tol; });
}

} // namespace detail

/// One consensus run. x0 is quantized once (with the same scheme) before the
/// first update. Quantized consensus means all states on the same level;
/// unquantized consensus means max |x_i - mean| <= kExactConsensusTolerance.
/// A uniform-quantizer run that revisits its previous state or the one
/// before can never change again and is reported as hitting the cap.
/// If `trajectory` is given, every state x(0), x(1), ... is appended to it.
inline TrialOutcome run_trial(const Matrix& w, std::span<const double> x0, const QuantizerSpec& spec,
                              CounterRng& rng, int max_iters = kDefaultMaxIterations,
                              std::vector<std::vector<double>>* trajectory = nullptr) {
    spec.validate();
    const std::size_t nn = w.order();
    if (x0.size() != nn) throw ParameterError("run_trial: state dimension does not match W");
    if (nn == 0) throw ParameterError("run_trial: empty network");
    if (max_iters < 0) throw ParameterError("run_trial: max_iters must be >= 0");
    const double true_mean = detail::mean(x0);

    TrialOutcome out;
    auto finish = [&](int t, std::span<const double> x) {
        out.consensus_reached = true;
        out.iterations = t;
        out.consensus_value = spec.scheme == Quantizer::None ? detail::mean(x) : x.front();
        const double scale = spec.scheme == Quantizer::None ? 1.0 : spec.resolution();
        out.normalized_error = (out.consensus_value - true_mean) / scale;
        return out;
    };
    auto record = [&](const std::vector<double>& x) {
        if (trajectory) trajectory->push_back(x);
    };

    if (spec.scheme == Quantizer::None) {
        std::vector<double> x(x0.begin(), x0.end());
        record(x);
        if (detail::near_mean(x, kExactConsensusTolerance)) return finish(0, x);
        for (int t = 1; t <= max_iters; ++t) {
            x = w.apply(x);
            record(x);
            if (detail::near_mean(x, kExactConsensusTolerance)) return finish(t, x);
        }
        out.iterations = max_iters;
        return out;
    }

    std::vector<std::int64_t> idx(nn), prev(nn), prev2(nn);
    std::vector<double> x(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        idx[i] = quantize_index(x0[i], spec, rng);
        x[i] = spec.level(idx[i]);
    }
    record(x);
    if (detail::all_equal(idx)) return finish(0, x);

    for (int t = 1; t <= max_iters; ++t) {
        prev2.swap(prev);
        prev = idx;
        const std::vector<double> y = w.apply(x);
        for (std::size_t i = 0; i < nn; ++i) {
            idx[i] = quantize_index(y[i], spec, rng);
            x[i] = spec.level(idx[i]);
        }
        record(x);
        if (detail::all_equal(idx)) return finish(t, x);
        if (spec.scheme == Quantizer::Uniform && (idx == prev || (t >= 2 && idx == prev2))) break;
    }
    out.iterations = max_iters;
    return out;
}

/// Aggregate of a batch of trials. eta, mu and rho cover consensus trials
/// only and are NaN when there are none; rho is the population variance.
struct TrialStats {
    double psi = 0.0;  ///< percentage of trials reaching consensus
    double eta = std::numeric_limits<double>::quiet_NaN();
    double mu = std::numeric_limits<double>::quiet_NaN();
    double rho = std::numeric_limits<double>::quiet_NaN();
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

/// Reduces outcomes in index order.
inline TrialStats aggregate(std::span<const TrialOutcome> outcomes, std::uint64_t seed) {
    TrialStats s;
    s.trials = outcomes.size();
    s.seed = seed;
    std::size_t hits = 0;
    double iters = 0.0, err = 0.0;
    for (const TrialOutcome& o : outcomes)
        if (o.consensus_reached) {
            ++hits;
            iters += o.iterations;
            err += o.normalized_error;
        }
    if (s.trials > 0) s.psi = 100.0 * static_cast<double>(hits) / static_cast<double>(s.trials);
    if (hits == 0) return s;
    s.eta = iters / static_cast<double>(hits);
    s.mu = err / static_cast<double>(hits);
    double var = 0.0;
    for (const TrialOutcome& o : outcomes)
        if (o.consensus_reached) var += (o.normalized_error - s.mu) * (o.normalized_error - s.mu);
    s.rho = var / static_cast<double>(hits);
    return s;
}

/// Trial `trial` of a batch: initial states uniform in [-1, 1) drawn from the
/// stream (master_seed, trial), followed by that trial's quantizer draws.
inline TrialOutcome seeded_trial(const Matrix& w, const QuantizerSpec& spec, std::uint64_t master_seed,
                                 std::uint64_t trial, int max_iters = kDefaultMaxIterations,
                                 std::vector<std::vector<double>>* trajectory = nullptr) {
    CounterRng rng(master_seed, trial);
    std::vector<double> x0(w.order());
    for (double& v : x0) v = rng.uniform(-1.0, 1.0);
    return run_trial(w, x0, spec, rng, max_iters, trajectory);
}

inline TrialStats monte_carlo(const Matrix& w, const QuantizerSpec& spec, std::size_t trials,
                              std::uint64_t master_seed, int max_iters = kDefaultMaxIterations,
                              unsigned threads = default_thread_count()) {
    if (trials < 1) throw ParameterError("monte_carlo requires trials >= 1");
    spec.validate();
    std::vector<TrialOutcome> outcomes(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
        outcomes[i] = seeded_trial(w, spec, master_seed, i, max_iters);
    });
    return aggregate(outcomes, master_seed);
}

inline TrialStats monte_carlo(const Topology& topology, Scheme scheme, const QuantizerSpec& spec,
                              std::size_t trials, std::uint64_t master_seed,
                              int max_iters = kDefaultMaxIterations, unsigned threads = default_thread_count()) {
    return monte_carlo(weight_matrix(topology, scheme), spec, trials, master_seed, max_iters, threads);
}

} // namespace starcons
