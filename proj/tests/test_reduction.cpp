#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptfhard/label_cover.hpp"
#include "ptfhard/reduction.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <set>

using namespace ptfhard;

TEST_CASE("derived parameters match independently computed values") {
    const TestParams p = TestParams::make(1, 0.1, 6);
    CHECK(p.T == 10);
    CHECK(p.eps == doctest::Approx(3.125e-4).epsilon(1e-12));
    CHECK(p.log_eta == doctest::Approx(-3772.130691792518).epsilon(1e-9));
    CHECK(p.log_rho == doctest::Approx(-267.967572823715).epsilon(1e-9));
    CHECK(p.degree_cap() == 4);
    CHECK(p.eta() == doctest::Approx(std::exp(p.log_eta)));

    TestParams q = p;
    q.eta_override = 1e-3;
    CHECK(q.eta() == doctest::Approx(1e-3));

    const TestParams d2 = TestParams::make(2, 0.05, 4);
    CHECK(d2.T == 20);
    CHECK(d2.eps == doctest::Approx(0.05 / (32.0 * 20 * 2)).epsilon(1e-12));
    CHECK(d2.degree_cap() == 6);
}

TEST_CASE("test draws keep the planted response at T b eta when no witness cell is noisy") {
    Rng gen(19, 0);
    const auto pl = generate_yes_instance(14, 4, 5, 3, gen);
    TestParams params = TestParams::make(1, 0.2, 5);
    params.eta_override = 0.05;
    const int nv = pl.instance.nv;
    const int k = pl.instance.k;

    Rng rng(23, 0);
    int clean_draws = 0;
    for (int t = 0; t < 400; ++t) {
        const BasicTestSample s = sample_basic_test(nv, params, rng);
        REQUIRE(s.y.size() == static_cast<std::size_t>(nv * k));
        REQUIRE(s.vertices.size() == static_cast<std::size_t>(params.T));
        REQUIRE(s.deltas.size() == static_cast<std::size_t>(params.T));
        CHECK((s.b == 1 || s.b == -1));
        double dsum = 0;
        for (double d : s.deltas) dsum += d;
        CHECK(std::abs(dsum) < 1e-9);
        for (const auto& [i, j] : s.noise) {
            CHECK((0 <= i && i < k));
            CHECK((0 <= j && j < params.T));
        }
        // coordinates of unchosen vertices stay zero
        const std::set<int> chosen(s.vertices.begin(), s.vertices.end());
        for (int v = 0; v < nv; ++v)
            if (!chosen.count(v))
                for (int i = 0; i < k; ++i) CHECK(s.y[v * k + i] == 0.0);

        bool witness_clean = true;
        for (int j = 0; j < params.T; ++j)
            if (s.noise.count({pl.planted[s.vertices[j]], j})) witness_clean = false;
        if (!witness_clean) continue;
        ++clean_draws;
        double response = 0;
        for (int v = 0; v < nv; ++v) response += s.y[v * k + pl.planted[v]];
        CHECK(response == doctest::Approx(params.T * s.b * params.eta()).epsilon(1e-9));
    }
    CHECK(clean_draws > 300);
}

TEST_CASE("single-block draws give the dictator accuracy 1 - eps/2") {
    Rng rng(29, 0);
    const double eps = 0.2, eta = 0.05;
    const int N = 100000;
    int hits = 0;
    for (int t = 0; t < N; ++t) {
        const P0Sample s = sample_p0(6, eta, eps, rng);
        REQUIRE(s.y.size() == 6);
        for (int i = 0; i < 6; ++i)
            if (!s.noise.count(i)) CHECK(s.y[i] == doctest::Approx(s.b * eta));
        if ((s.y[0] >= 0 ? 1 : -1) == s.b) ++hits;
    }
    const double acc = static_cast<double>(hits) / N;
    const double sd = std::sqrt(0.9 * 0.1 / N);
    CHECK(std::abs(acc - (1 - eps / 2)) < 4 * sd);
}

TEST_CASE("folding basis is orthonormal and kills every constraint vector") {
    Rng rng(37, 0);
    const auto pl = generate_yes_instance(10, 4, 4, 3, rng);
    const FoldingBasis fb = build_folding_basis(pl.instance);
    CHECK(fb.dim == 10 * 4);
    CHECK(fb.dim_f() >= 1);
    CHECK(fb.dim_f() < fb.dim);

    for (int r = 0; r < fb.dim_f(); ++r)
        for (int s = r; s < fb.dim_f(); ++s) {
            double dot = 0;
            for (int c = 0; c < fb.dim; ++c) dot += fb.basis[r][c] * fb.basis[s][c];
            CHECK(std::abs(dot - (r == s ? 1.0 : 0.0)) < 1e-9);
        }
    for (const auto& h : fb.constraints)
        for (int r = 0; r < fb.dim_f(); ++r) {
            double dot = 0;
            for (const auto& [c, val] : h) dot += val * fb.basis[r][c];
            CHECK(std::abs(dot) < 1e-9);
        }

    // folding is a projection, and the planted witness direction survives it
    std::vector<double> y(fb.dim);
    for (double& v : y) v = rng.normal();
    const auto once = fb.unfold(fb.fold(y));
    const auto twice = fb.unfold(fb.fold(once));
    for (int c = 0; c < fb.dim; ++c) CHECK(once[c] == doctest::Approx(twice[c]).epsilon(1e-9));

    std::vector<double> witness(fb.dim, 0.0);
    for (int v = 0; v < pl.instance.nv; ++v) witness[v * pl.instance.k + pl.planted[v]] = 1.0;
    const auto folded_witness = fb.unfold(fb.fold(witness));
    double gap = 0;
    for (int c = 0; c < fb.dim; ++c) gap += std::pow(folded_witness[c] - witness[c], 2);
    CHECK(std::sqrt(gap) < 1e-8);
}

TEST_CASE("the planted linear form satisfies every folding identity") {
    Rng rng(41, 0);
    const auto pl = generate_yes_instance(8, 4, 4, 3, rng);
    PolyD witness;
    for (int v = 0; v < pl.instance.nv; ++v)
        witness.add_term(Monomial(VarId::point(v, pl.planted[v])), 1.0);

    for (std::size_t e = 0; e < pl.instance.edges.size(); ++e)
        for (int ell = 0; ell < pl.instance.L; ++ell)
            CHECK(check_valid_constraint(witness, pl.instance, static_cast<int>(e), ell,
                                         Monomial{}));
    CHECK(folding_violations(witness, pl.instance).empty());

    // breaking one coefficient breaks at least one identity
    PolyD off = witness;
    off.add_term(Monomial(VarId::point(0, pl.planted[0])), 0.5);
    CHECK_FALSE(folding_violations(off, pl.instance).empty());
}

TEST_CASE("emitted datasets are deterministic and thread-count independent") {
    Rng rng(43, 0);
    const auto pl = generate_yes_instance(8, 4, 4, 3, rng);
    TestParams params = TestParams::make(1, 0.1, 4);
    params.eta_override = 1e-3;

    EmitOptions a;
    a.seed = 11;
    a.stream = 2;
    a.n_points = 500;
    a.fold = false;
    a.threads = 1;
    EmitOptions b = a;
    b.threads = 4;

    const EmitResult ra = emit_instance(pl.instance, params, a);
    const EmitResult rb = emit_instance(pl.instance, params, b);
    REQUIRE(ra.dataset.size() == 500);
    CHECK(ra.dataset.values == rb.dataset.values);
    CHECK(ra.dataset.signs == rb.dataset.signs);

    const auto manifest = nlohmann::json::parse(ra.manifest_json);
    CHECK(manifest.at("command") == "reduce");
    CHECK(manifest.at("seed") == 11);
    const std::string hash = manifest.at("instance_hash");
    CHECK(hash.rfind("fnv1a64:", 0) == 0);
    CHECK(manifest.at("params").at("T") == params.T);

    const std::string path = "test_reduction_tmp.bin";
    write_dataset(path, ra.dataset);
    const Dataset back = read_dataset(path);
    CHECK(back.dim == ra.dataset.dim);
    CHECK(back.flags == ra.dataset.flags);
    CHECK(back.values == ra.dataset.values);
    CHECK(back.signs == ra.dataset.signs);
    std::remove(path.c_str());

    const std::string csv = dataset_to_csv(ra.dataset);
    CHECK(csv.rfind("x0,", 0) == 0);
    CHECK(csv.find("sign") != std::string::npos);
}

TEST_CASE("paired draws share the blind randomness") {
    TestParams params = TestParams::make(1, 0.1, 4);
    params.eta_override = 1e-3;
    Rng rng(47, 0);
    for (int t = 0; t < 50; ++t) {
        const auto [g, h] = sample_basic_test_paired(8, params, 16, rng);
        CHECK(g.b == h.b);
        CHECK(g.vertices == h.vertices);
        CHECK(g.noise == h.noise);
        CHECK(g.y.size() == h.y.size());
    }
}
