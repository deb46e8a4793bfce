#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptfhard/lemma_lab.hpp"

#include <json.hpp>

#include <algorithm>

using namespace ptfhard;

namespace {

std::vector<VarId> mean_rows(int T) {
    std::vector<VarId> v;
    for (int j = 0; j < T; ++j) v.push_back(VarId::w(0, j));
    return v;
}

} // namespace

TEST_CASE("random rational polynomials respect the requested shape") {
    Rng rng(83, 0);
    const auto vars = mean_rows(4);
    for (int t = 0; t < 20; ++t) {
        const PolyQ p = random_rational_poly(vars, 3, rng);
        CHECK(p.degree() <= 3);
        for (const VarId& v : p.vars())
            CHECK(std::find(vars.begin(), vars.end(), v) != vars.end());
        for (const auto& [m, c] : p.terms()) {
            CHECK(abs(numerator(c)) <= 100);
            CHECK(denominator(c) <= 16);
        }
    }
}

TEST_CASE("multiplying by the variable sum leaves heavy linear slices") {
    PolyQ one = PolyQ::constant(Rational(1));
    const auto rep = verify_robust_polynomial(one, 1, 4);
    CHECK(rep.ok());
    CHECK(rep.verdict == "holds");
    CHECK(rep.stats.at("qualifying") == doctest::Approx(4.0));

    Rng rng(89, 0);
    for (int t = 0; t < 25; ++t) {
        const PolyQ s = random_rational_poly(mean_rows(5), 2, rng);
        CHECK(verify_robust_polynomial(s, 2, 5).ok());
    }
}

TEST_CASE("variable removal decomposition") {
    Rng rng(97, 0);
    for (int t = 0; t < 20; ++t) {
        const Rational a(1 + static_cast<long>(t % 3));
        const auto inst = random_varred_instance(3, a, rng);
        const auto rep = verify_variable_removal(inst);
        CHECK(rep.ok());
        CHECK(rep.verdict == "holds");
    }
    for (int t = 0; t < 10; ++t) {
        const auto inst = zero_delta_varred_instance(3, Rational(2), rng);
        CHECK(inst.dx.is_zero());
        CHECK(inst.dy.is_zero());
        const auto rep = verify_variable_removal(inst);
        CHECK(rep.ok());
        CHECK(rep.stats.at("delta_mass") == doctest::Approx(0.0));
    }
}

TEST_CASE("some variable always leaves a significant square-free slice") {
    const PolyQ p(Monomial{{VarId::w(0, 0), 1}, {VarId::w(0, 1), 1}});
    const auto rep = verify_lower_bound(p, 2, 3);
    CHECK(rep.ok());
    CHECK(rep.verdict == "holds");

    Rng rng(101, 0);
    for (int t = 0; t < 20; ++t) {
        PolyQ q = random_rational_poly(mean_rows(3), 2, rng);
        if (q.is_zero()) q += PolyQ::constant(Rational(1));
        CHECK(verify_lower_bound(q, 2, 3).ok());
    }
}

TEST_CASE("norm comparison through the cross-block rotation") {
    Rng rng(103, 0);
    std::vector<VarId> uvars;
    for (int t = 1; t <= 5; ++t) uvars.push_back(VarId::u(t));
    for (int t = 0; t < 10; ++t) {
        const PolyD q = to_double_poly(random_rational_poly(uvars, 2, rng));
        const auto rep = verify_coeff_bounds(q, 2, 20, 1e-3);
        CHECK(rep.ok());
        CHECK(rep.verdict == "holds");
        if (!q.is_zero()) CHECK(rep.stats.at("part2_bound") >= rep.stats.at("mon2"));
    }
}

TEST_CASE("coefficient norm of a product is submultiplicative, exactly") {
    PolyQ p1;
    p1.add_term(Monomial(VarId::w(0, 0)), 1);
    p1.add_term(Monomial(VarId::w(0, 1)), 1);
    PolyQ p2;
    p2.add_term(Monomial(VarId::w(0, 0)), 1);
    p2.add_term(Monomial(VarId::w(0, 1)), -1);
    const auto rep = verify_mon_submult(p1, p2);
    CHECK(rep.ok());
    CHECK(rep.stats.at("product_mass") == doctest::Approx(2.0));
    CHECK(rep.stats.at("bound") == doctest::Approx(8.0));

    Rng rng(107, 0);
    for (int t = 0; t < 50; ++t) {
        const PolyQ a = random_rational_poly(mean_rows(3), 2, rng);
        const PolyQ b = random_rational_poly(mean_rows(3), 2, rng);
        CHECK(verify_mon_submult(a, b).ok());
    }
}

TEST_CASE("rotation decomposition reassembles and the omitted part vanishes") {
    Rng rng(109, 0);
    const int k = 4, T = 5;
    for (int t = 0; t < 5; ++t) {
        PolyD p;
        for (int i = 0; i < 8; ++i) {
            Monomial m;
            const int deg = static_cast<int>(rng.uniform_int(3));
            for (int e = 0; e < deg; ++e)
                m = m.times(VarId::block(static_cast<int>(rng.uniform_int(k)),
                                         static_cast<int>(rng.uniform_int(T))));
            p.add_term(m, rng.uniform(-1.0, 1.0));
        }
        const NoiseSet ns = NoiseSet::sample(k, T, 0.2, rng);
        const auto rep = verify_q_decomposition(p, ns, 1e-3, 50, rng);
        CHECK(rep.ok());
        CHECK(rep.stats.at("reassembly_gap") <= 1e-9);
        CHECK(rep.stats.at("max_omit_eval") <= 1e-9);
    }
}

TEST_CASE("small-ball estimates are reported but never judged") {
    Rng rng(113, 0);
    PolyD p;
    p.add_term(Monomial(VarId::abstract(4, 0)), 1.0);
    p.add_term(Monomial{{VarId::abstract(4, 1), 2}}, -0.5);
    const auto rep = empirical_carbery_wright(p, 0.1, 5000, rng);
    CHECK(rep.verdict == "inconclusive");
    CHECK(rep.ok());
    CHECK(rep.stats.count("small_ball_prob") == 1);
    CHECK(rep.stats.at("ratio") > 0);
}

TEST_CASE("noisy-share tail bound holds for flat tensors and is vacuous for spikes") {
    Rng rng(127, 0);
    const std::vector<double> flat(200, 1.0);
    const auto rep = chernoff_decoding_probe(flat, 0.2, 4000, rng);
    CHECK(rep.ok());
    CHECK(rep.stats.at("envelope") < 1.0);
    CHECK(rep.stats.at("small_noisy_mass_prob") <= rep.stats.at("envelope"));

    std::vector<double> spike(8, 0.0);
    spike[3] = 10.0;
    const auto spiked = chernoff_decoding_probe(spike, 0.2, 2000, rng);
    CHECK(spiked.ok());
    CHECK(spiked.stats.at("envelope") >= 1.0);
}

TEST_CASE("named batteries run clean and serialize") {
    const auto ids = lemma_battery_ids();
    CHECK(ids.size() == 8);
    for (const std::string& id : ids) {
        const auto rep = run_lemma_battery(id, 4, 7);
        CHECK(rep.lemma == id);
        CHECK(rep.trials == 4);
        CHECK(rep.ok());
        CHECK(rep.violations == 0);
        if (id == "carbery-wright")
            CHECK(rep.verdict == "inconclusive");
        else
            CHECK(rep.verdict == "holds");

        const auto j = nlohmann::json::parse(rep.to_json());
        CHECK(j.at("lemma") == id);
        CHECK(j.at("verdict") == rep.verdict);
    }
    CHECK_THROWS_AS(run_lemma_battery("unknown", 1, 1), InvalidInputError);
}
