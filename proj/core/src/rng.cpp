#include "ptfhard/rng.hpp"

#include "ptfhard/errors.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>

namespace ptfhard {

std::uint64_t Rng::uniform_int(std::uint64_t n) {
    if (n == 0) throw InvalidInputError("uniform_int(0)");
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double Rng::rademacher_avg(int n) {
    if (n <= 0) throw InvalidInputError("rademacher_avg needs n >= 1");
    long long ones = 0;
    int left = n;
    while (left >= 64) {
        ones += std::popcount(engine_());
        left -= 64;
    }
    if (left > 0) ones += std::popcount(engine_() & ((std::uint64_t(1) << left) - 1));
    return (2.0 * static_cast<double>(ones) - n) / std::sqrt(static_cast<double>(n));
}

std::vector<int> Rng::permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(uniform_int(i + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

namespace {

// CDF of Binomial(n, 1/2) as a dense table, cached per n.
const std::vector<double>& binomial_half_cdf(int n) {
    static std::map<int, std::vector<double>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> cdf(n + 1);
    double acc = 0.0;
    for (int c = 0; c <= n; ++c) {
        const double logp = std::lgamma(n + 1.0) - std::lgamma(c + 1.0) -
                            std::lgamma(n - c + 1.0) - n * std::numbers::ln2;
        acc += std::exp(logp);
        cdf[c] = acc;
    }
    cdf[n] = 1.0;
    return cache.emplace(n, std::move(cdf)).first->second;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

} // namespace

double rademacher_avg_quantile(int n, double u) {
    const auto& cdf = binomial_half_cdf(n);
    int lo = 0, hi = n;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (cdf[mid] >= u)
            hi = mid;
        else
            lo = mid + 1;
    }
    return (2.0 * lo - n) / std::sqrt(static_cast<double>(n));
}

PairedDraw paired_gaussian_discrete(Rng& rng, int n) {
    const double g = rng.normal();
    return {g, rademacher_avg_quantile(n, normal_cdf(g))};
}

} // namespace ptfhard
