#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptfhard/hermite.hpp"
#include "ptfhard/rng.hpp"

#include <cmath>
#include <set>
#include <vector>

using namespace ptfhard;

namespace {

const VarId g0 = VarId::abstract(0);
const VarId g1 = VarId::abstract(1);

double eval_univariate(const PolyD& p, double x) { return p.evaluate({{g0, x}}); }

} // namespace

TEST_CASE("integer recurrence tables") {
    CHECK(he_coeffs(0) == std::vector<long long>{1});
    CHECK(he_coeffs(1) == std::vector<long long>{0, 1});
    CHECK(he_coeffs(2) == std::vector<long long>{-1, 0, 1});
    CHECK(he_coeffs(3) == std::vector<long long>{0, -3, 0, 1});
    CHECK(he_coeffs(4) == std::vector<long long>{3, 0, -6, 0, 1});

    CHECK(power_to_he(2) == std::vector<long long>{1, 0, 1});
    CHECK(power_to_he(3) == std::vector<long long>{0, 3, 0, 1});
    CHECK(power_to_he(4) == std::vector<long long>{3, 0, 6, 0, 1});

    // composing the two tables gives the identity
    for (int n = 0; n <= 6; ++n) {
        const auto row = power_to_he(n);
        for (int p = 0; p <= n; ++p) {
            long long total = 0;
            for (int d = p; d <= n; ++d) {
                const auto he = he_coeffs(d);
                if (d < static_cast<int>(row.size()) && p < static_cast<int>(he.size()))
                    total += row[d] * he[p];
            }
            CHECK(total == (p == n ? 1 : 0));
        }
    }
}

TEST_CASE("normalized basis polynomials have the closed forms") {
    const PolyD h2 = hermite_univariate(2, g0);
    CHECK(h2.coefficient(Monomial{{g0, 2}}) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(h2.coefficient(Monomial{}) == doctest::Approx(-1.0 / std::sqrt(2.0)));

    const PolyD h3 = hermite_univariate(3, g0);
    CHECK(h3.coefficient(Monomial{{g0, 3}}) == doctest::Approx(1.0 / std::sqrt(6.0)));
    CHECK(h3.coefficient(Monomial(g0)) == doctest::Approx(-3.0 / std::sqrt(6.0)));

    const PolyD h4 = hermite_univariate(4, g0);
    CHECK(h4.coefficient(Monomial{{g0, 4}}) == doctest::Approx(1.0 / std::sqrt(24.0)));
    CHECK(h4.coefficient(Monomial{{g0, 2}}) == doctest::Approx(-6.0 / std::sqrt(24.0)));
    CHECK(h4.coefficient(Monomial{}) == doctest::Approx(3.0 / std::sqrt(24.0)));

    // frozen point values
    const double tol = 1e-12;
    CHECK(eval_univariate(hermite_univariate(2, g0), 1.5) ==
          doctest::Approx(0.883883476483184).epsilon(tol));
    CHECK(eval_univariate(hermite_univariate(3, g0), 1.5) ==
          doctest::Approx(-0.459279326771846).epsilon(tol));
    CHECK(eval_univariate(hermite_univariate(4, g0), 1.5) ==
          doctest::Approx(-1.109925039698628).epsilon(tol));
    CHECK(eval_univariate(hermite_univariate(2, g0), -2.25) ==
          doctest::Approx(2.872621298570349).epsilon(tol));
    CHECK(eval_univariate(hermite_univariate(3, g0), -2.25) ==
          doctest::Approx(-1.894527222933865).epsilon(tol));
    CHECK(eval_univariate(hermite_univariate(4, g0), -2.25) ==
          doctest::Approx(-0.356419894213568).epsilon(tol));
}

TEST_CASE("exact basis polynomials are the integer recurrences") {
    for (int d = 0; d <= 6; ++d) {
        const PolyQ he = hermite_univariate_exact(d, g0);
        const auto coeffs = he_coeffs(d);
        for (int p = 0; p <= d; ++p)
            CHECK(he.coefficient(p == 0 ? Monomial{} : Monomial{{g0, p}}) == Rational(coeffs[p]));
    }
}

TEST_CASE("expansion round trip is exact over rationals") {
    Rng rng(21, 0);
    const std::set<VarId> gaussians{g0, g1};
    const VarId w = VarId::w(0, 0);
    for (int t = 0; t < 25; ++t) {
        PolyQ p;
        for (int i = 0; i < 10; ++i) {
            Monomial m;
            const int deg = static_cast<int>(rng.uniform_int(5));
            for (int e = 0; e < deg; ++e) {
                const auto pick = rng.uniform_int(3);
                m = m.times(pick == 0 ? g0 : pick == 1 ? g1 : w);
            }
            p.add_term(m, Rational(static_cast<long>(rng.uniform_int(19)) - 9));
        }
        const auto exp = to_hermite(p, gaussians);
        CHECK(from_hermite(exp) == p);
        for (const auto& [idx, coef] : exp.coeffs) {
            CHECK_FALSE(coef.is_zero());
            for (const VarId& v : coef.vars()) CHECK(gaussians.count(v) == 0);
        }
    }
}

TEST_CASE("squared gaussian norm of x^2 is 3 in both coefficient modes") {
    const PolyD x2d = PolyD(Monomial{{g0, 2}});
    CHECK(l2_norm(to_hermite(x2d, {g0})) == doctest::Approx(std::sqrt(3.0)));

    const PolyQ x2q = PolyQ(Monomial{{g0, 2}});
    CHECK(l2_norm_sq_exact(to_hermite(x2q, {g0})) == Rational(3));
}

TEST_CASE("orthonormality under the gaussian measure, self-calibrated tolerance") {
    Rng rng(5, 0);
    const int N = 400000;
    std::vector<PolyD> h;
    for (int d = 0; d <= 4; ++d) h.push_back(hermite_univariate(d, g0));

    double sums[5][5] = {};
    double sq_sums[5][5] = {};
    for (int s = 0; s < N; ++s) {
        const double x = rng.normal();
        double vals[5];
        for (int d = 0; d <= 4; ++d) vals[d] = eval_univariate(h[d], x);
        for (int a = 0; a <= 4; ++a)
            for (int b = a; b <= 4; ++b) {
                const double v = vals[a] * vals[b];
                sums[a][b] += v;
                sq_sums[a][b] += v * v;
            }
    }
    for (int a = 0; a <= 4; ++a)
        for (int b = a; b <= 4; ++b) {
            const double mean = sums[a][b] / N;
            const double var = sq_sums[a][b] / N - mean * mean;
            const double tol = std::max(0.02, 5.0 * std::sqrt(var / N));
            CHECK(std::abs(mean - (a == b ? 1.0 : 0.0)) < tol);
        }
}

TEST_CASE("gaussian norm matches a monte carlo second moment") {
    Rng rng(9, 0);
    const std::set<VarId> gaussians{g0, g1};
    for (int t = 0; t < 10; ++t) {
        PolyD p;
        for (int i = 0; i < 6; ++i) {
            Monomial m;
            const int deg = static_cast<int>(rng.uniform_int(4));
            for (int e = 0; e < deg; ++e) m = m.times(rng.uniform_int(2) == 0 ? g0 : g1);
            p.add_term(m, rng.uniform(-2.0, 2.0));
        }
        const double l2sq = std::pow(l2_norm(to_hermite(p, gaussians)), 2);

        const int N = 200000;
        double sum = 0, sq = 0;
        for (int s = 0; s < N; ++s) {
            const double v = p.evaluate({{g0, rng.normal()}, {g1, rng.normal()}});
            sum += v * v;
            sq += v * v * v * v;
        }
        const double mean = sum / N;
        const double sd = std::sqrt(std::max(0.0, sq / N - mean * mean) / N);
        CHECK(std::abs(mean - l2sq) <= std::max(1e-9, 4.0 * sd));
    }
}

TEST_CASE("coefficient-mass norms over the W variables") {
    const VarId w00 = VarId::w(0, 0);
    PolyD p = PolyD::constant(2.0);
    p += PolyD(Monomial(w00)) * PolyD(Monomial(g0));
    const auto exp = to_hermite(p, {g0});
    CHECK(basisB_norm(exp) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("partial singleton mass in the mixed expansion") {
    MixedExpansion<double> m;
    m[{Monomial{}, Monomial(VarId::block(0, 0))}] = PolyD::constant(3.0);
    m[{Monomial(VarId::z(0, 1)), Monomial(VarId::block(1, 0))}] =
        PolyD(Monomial(VarId::w(0, 1)), 2.0);
    m[{Monomial{}, Monomial{{VarId::block(0, 0), 1}, {VarId::block(1, 0), 1}}}] =
        PolyD::constant(1.0);

    CHECK(basisB_partial_norm(m, 0, {0}, 0) == doctest::Approx(3.0));
    CHECK(basisB_partial_norm(m, 1, {1}, 0) == doctest::Approx(2.0));
    CHECK(basisB_partial_norm(m, 0, {1}, 0) == doctest::Approx(0.0));
    CHECK(basisB_partial_norm(m, 0, {0, 1}, 0) == doctest::Approx(3.0));
}
