#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ptfhard {

// Deterministic generator with independent streams: (seed, stream) fully
// determines the draw sequence, regardless of platform. Gaussians use
// Box-Muller on 53-bit uniforms rather than std::normal_distribution so the
// byte-for-byte output of a run is reproducible across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{seed, stream};
        engine_.seed(seq);
    }

    std::uint64_t bits() { return engine_(); }

    // uniform on (0,1)
    double uniform01() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform on {0, ..., n-1} via rejection (unbiased)
    std::uint64_t uniform_int(std::uint64_t n);

    bool bernoulli(double p) { return uniform01() < p; }

    int rademacher() { return (engine_() >> 63) ? 1 : -1; }

    double normal();

    // (sum of n independent signs) / sqrt(n): the discretized Gaussian
    double rademacher_avg(int n);

    std::vector<int> permutation(int n);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Comonotone coupling of N(0,1) with the rademacher_avg(n) lattice: both
// margins are driven by the same uniform, so sign disagreements of a smooth
// function shrink as n grows.
struct PairedDraw {
    double gauss;
    double discrete;
};
PairedDraw paired_gaussian_discrete(Rng& rng, int n);

// Quantile of (2*Binomial(n,1/2) - n)/sqrt(n) at u, via the exact CDF.
double rademacher_avg_quantile(int n, double u);

} // namespace ptfhard
