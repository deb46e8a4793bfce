#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptfhard/gauss.hpp"
#include "ptfhard/rng.hpp"

#include <cmath>
#include <vector>

using namespace ptfhard;

TEST_CASE("delta draws sum to zero exactly and have the pinned moments") {
    for (int T : {2, 5, 10}) {
        Rng rng(31, T);
        const int N = 200000;
        double mean0 = 0, var0 = 0, cov01 = 0;
        for (int s = 0; s < N; ++s) {
            const auto d = sample_deltas(T, rng);
            double sum = 0;
            for (double x : d) sum += x;
            CHECK(std::abs(sum) < 1e-10);
            mean0 += d[0];
            var0 += d[0] * d[0];
            cov01 += d[0] * d[1];
        }
        CHECK(std::abs(mean0 / N) < 0.02);
        CHECK(var0 / N == doctest::Approx(1.0).epsilon(0.02));
        CHECK(std::abs(cov01 / N + 1.0 / (T - 1)) < 0.02);
    }
    Rng rng(1, 0);
    CHECK_THROWS_AS(sample_deltas(1, rng), InvalidInputError);
}

TEST_CASE("block rotation rows are orthogonal with the stated norms") {
    for (int k : {1, 2, 3, 6}) {
        const auto t = build_w_transform(k);
        REQUIRE(t.size() == k);
        for (int l = 0; l < k; ++l) CHECK(t.rows[0][l] == doctest::Approx(1.0 / k));
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                double dot = 0;
                for (int l = 0; l < k; ++l) dot += t.rows[i][l] * t.rows[j][l];
                if (i == j) {
                    CHECK(dot == doctest::Approx(t.row_norm_sq[i]));
                    CHECK(t.row_norm_sq[i] == doctest::Approx(1.0 / k));
                } else {
                    CHECK(std::abs(dot) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("exact block rotation inverts exactly") {
    for (int k : {2, 4, 6}) {
        const auto t = build_w_transform_exact(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                Rational dot = 0;
                for (int l = 0; l < k; ++l) dot += t.rows[i][l] * t.rows[j][l];
                CHECK(dot == 0);
            }
        for (int i = 0; i < k; ++i) {
            Rational nsq = 0;
            for (int l = 0; l < k; ++l) nsq += t.rows[i][l] * t.rows[i][l];
            CHECK(nsq == t.row_norm_sq[i]);
        }

        std::vector<Rational> x;
        for (int l = 0; l < k; ++l) x.emplace_back(2 * l - 3, l + 2);
        const auto w = t.apply(x);
        for (int l = 0; l < k; ++l) {
            Rational back = 0;
            for (int i = 0; i < k; ++i) back += w[i] * t.rows[i][l] / t.row_norm_sq[i];
            CHECK(back == x[l]);
        }
    }
}

TEST_CASE("cross-block rotation is orthonormal in float mode, orthogonal in exact mode") {
    const int T = 7;
    const auto t = build_u_transform(T);
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j) {
            double dot = 0;
            for (int l = 0; l < T; ++l) dot += t.rows[i][l] * t.rows[j][l];
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
    for (int l = 0; l < T; ++l) CHECK(t.rows[0][l] == doctest::Approx(1.0 / std::sqrt(7.0)));

    const auto te = build_u_transform_exact(T);
    CHECK(te.row_norm_sq[0] == Rational(T));
    for (int l = 0; l < T; ++l) CHECK(te.rows[0][l] == 1);
    std::vector<Rational> x;
    for (int l = 0; l < T; ++l) x.emplace_back(l * l - 5, 3);
    const auto u = te.apply(x);
    for (int l = 0; l < T; ++l) {
        Rational back = 0;
        for (int i = 0; i < T; ++i) back += u[i] * te.rows[i][l] / te.row_norm_sq[i];
        CHECK(back == x[l]);
    }
}

TEST_CASE("forward and inverse polynomials compose to the identity") {
    const int k = 4;
    const auto t = build_w_transform(k);
    std::vector<VarId> yv, wv;
    for (int i = 0; i < k; ++i) {
        yv.push_back(VarId::block(i, 0));
        wv.push_back(VarId::w(i, 0));
    }
    std::map<VarId, PolyD> y_to_w, w_to_y;
    for (int l = 0; l < k; ++l) y_to_w.emplace(yv[l], t.inverse_poly(l, wv));
    for (int i = 0; i < k; ++i) w_to_y.emplace(wv[i], t.forward_poly(i, yv));

    PolyD p;
    p.add_term(Monomial{{yv[0], 2}}, 1.5);
    p.add_term(Monomial{{yv[1], 1}, {yv[3], 1}}, -2.0);
    p.add_term(Monomial(yv[2]), 0.25);
    const PolyD round = p.substitute(y_to_w).substitute(w_to_y);
    CHECK((round - p).mon_norm(2) < 1e-12);
}

TEST_CASE("projections orthogonal to the mean direction act like independent gaussians") {
    Rng rng(13, 0);
    for (int T : {3, 5, 10}) {
        const auto st = verify_ortho_transform_lemma(T, 200000, rng);
        const double want = static_cast<double>(T) / (T - 1);
        CHECK(st.expected_var == doctest::Approx(want));
        CHECK(st.var_f == doctest::Approx(want).epsilon(0.02));
        CHECK(st.var_h == doctest::Approx(want).epsilon(0.02));
        CHECK(std::abs(st.cov_fh) < 0.02);
    }
    CHECK_THROWS_AS(verify_ortho_transform_lemma(2, 10, rng), InvalidInputError);
}
