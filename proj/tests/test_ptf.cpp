#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptfhard/ptf.hpp"

#include <cmath>

using namespace ptfhard;

namespace {

struct Fixture {
    PlantedInstance pl;
    TestParams params;
    Dataset raw;
    Dataset folded;

    Fixture() {
        Rng rng(53, 0);
        pl = generate_yes_instance(10, 4, 4, 3, rng);
        params = TestParams::make(1, 0.1, 4);
        params.eta_override = 1e-3;
        EmitOptions opts;
        opts.seed = 101;
        opts.stream = 0;
        opts.n_points = 4000;
        opts.fold = false;
        raw = emit_instance(pl.instance, params, opts).dataset;
        opts.fold = true;
        folded = emit_instance(pl.instance, params, opts).dataset;
    }
};

} // namespace

TEST_CASE("sign convention puts zero on the positive side") {
    CHECK(sign_of(0.0) == 1);
    CHECK(sign_of(3.5) == 1);
    CHECK(sign_of(-1e-12) == -1);
}

TEST_CASE("row evaluation supports bare column variables") {
    PTFHypothesis h;
    h.poly.add_term(Monomial(coord_var(0)), 2.0);
    h.poly.add_term(Monomial(coord_var(1)), -1.0);
    h.degree = 1;
    h.space = PTFHypothesis::Space::Raw;
    h.dim = 2;
    const double row[2] = {1.0, 3.0};
    CHECK(evaluate_on_row(h, row, 2) == doctest::Approx(-1.0));
}

TEST_CASE("planted linear form scores high on both raw and folded datasets") {
    const Fixture f;
    const PTFHypothesis raw_h = dictator_linear_form(f.pl.instance, f.pl.planted);
    CHECK(raw_h.space == PTFHypothesis::Space::Raw);
    CHECK(raw_h.degree == 1);

    const double acc_raw = accuracy(raw_h, f.raw);
    const double eps_t = f.params.eps * f.params.T;
    CHECK(acc_raw >= 1 - eps_t - 3 * std::sqrt(eps_t / 4000));

    const FoldingBasis fb = build_folding_basis(f.pl.instance);
    const PTFHypothesis folded_h = to_folded(raw_h, fb);
    CHECK(folded_h.space == PTFHypothesis::Space::Folded);
    CHECK(folded_h.dim == fb.dim_f());

    // same seed, so the folded points are the folded raw points and the
    // witness response is unchanged by folding
    CHECK(accuracy(folded_h, f.folded) == doctest::Approx(acc_raw));

    CHECK(accuracy(raw_h.negated(), f.raw) == doctest::Approx(1.0 - acc_raw));
}

TEST_CASE("space and dimension mismatches are rejected") {
    const Fixture f;
    const PTFHypothesis raw_h = dictator_linear_form(f.pl.instance, f.pl.planted);
    CHECK_THROWS_AS(accuracy(raw_h, f.folded), DimensionMismatchError);

    PTFHypothesis wrong_dim = raw_h;
    wrong_dim.dim = 7;
    CHECK_THROWS_AS(accuracy(wrong_dim, f.raw), DimensionMismatchError);
}

TEST_CASE("least squares probe recovers a linearly separable gaussian dataset") {
    Rng rng(77, 0);
    Dataset ds;
    ds.dim = 5;
    const std::vector<double> w = {1.0, -2.0, 0.5, 0.0, 3.0};
    for (int i = 0; i < 2000; ++i) {
        std::vector<double> x(ds.dim);
        double dot = 0.0;
        for (std::size_t c = 0; c < ds.dim; ++c) {
            x[c] = rng.normal();
            dot += w[c] * x[c];
        }
        ds.append(x, sign_of(dot));
    }
    const FitResult fit = fit_probe(ds, 1);
    CHECK(fit.n_monomials == static_cast<int>(ds.dim) + 1);
    CHECK_FALSE(fit.rank_deficient);
    CHECK(accuracy(fit.hypothesis, ds) >= 0.95);
}

TEST_CASE("least squares probe tolerates collinear reduction coordinates") {
    const Fixture f;
    // non-noisy coordinates inside a block coincide, so the gram matrix is
    // expected to lose rank; the pseudo-inverse fit must still separate well
    const FitResult fit = fit_probe(f.raw, 1);
    CHECK(fit.n_monomials == static_cast<int>(f.raw.dim) + 1);
    CHECK(accuracy(fit.hypothesis, f.raw) >= 0.8);
}
