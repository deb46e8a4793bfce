#pragma once

#include "ptfhard/dataset.hpp"
#include "ptfhard/label_cover.hpp"
#include "ptfhard/polynomial.hpp"
#include "ptfhard/rng.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ptfhard {

// Derived test parameters for target threshold degree d. The completeness
// shift eta underflows a double long before d gets interesting, so only its
// log is kept; eta_override supplies a usable value for desk-scale runs and
// the manifest records both.
struct TestParams {
    int d = 1;
    double xi = 0.1;
    int k = 2;
    int T = 10;
    double eps = 0;
    double log_eta = 0;     // natural log of the honest eta
    double log_rho = 0;     // natural log of the honest decoder threshold
    std::optional<double> eta_override;
    std::optional<int> discretize_n; // replace every Gaussian draw by a +-1 average over n signs

    static TestParams make(int d, double xi, int k);

    double eta() const { return eta_override ? *eta_override : std::exp(log_eta); }
    int degree_cap() const { return 2 * d + 2; }
};

// One labeled point over the coordinates {(v, i) : v in V, i in [k]},
// flattened as v * k + i, together with the draw that produced it.
struct BasicTestSample {
    std::vector<double> y;
    int b = 1;
    std::vector<int> vertices;              // block j sits on vertices[j]
    std::vector<double> deltas;             // block means before the eta shift
    std::set<std::pair<int, int>> noise;    // noisy (i, j) cells
};

// Blockwise test draw embedded on T random vertices (with replacement;
// when two blocks land on the same vertex their contributions add, which
// keeps the planted witness's response equal to b exactly).
BasicTestSample sample_basic_test(int nv, const TestParams& params, Rng& rng);

// Paired Gaussian/discretized draw sharing all randomness, for measuring
// how sign agreement improves with the discretization resolution.
std::pair<BasicTestSample, BasicTestSample> sample_basic_test_paired(int nv,
                                                                     const TestParams& params,
                                                                     int discretize_n, Rng& rng);

// Single-block preliminary test over R^k.
struct P0Sample {
    std::vector<double> y;
    int b = 1;
    std::set<int> noise;
};
P0Sample sample_p0(int k, double eta, double eps, Rng& rng);

// Orthonormal basis of the subspace where all per-edge, per-answer
// matching-sum functionals vanish. Points projected there ("folded") are
// invariant under adding any multiple of a constraint vector.
struct FoldingBasis {
    int nv = 0;
    int k = 0;
    int dim = 0;                                        // nv * k
    std::vector<std::vector<double>> basis;             // dim_f rows, orthonormal, length dim
    std::vector<std::vector<std::pair<int, double>>> constraints; // sparse h vectors

    int dim_f() const { return static_cast<int>(basis.size()); }
    std::vector<double> fold(const std::vector<double>& y) const;
    std::vector<double> unfold(const std::vector<double>& c) const;
};

FoldingBasis build_folding_basis(const LabelCoverInstance& inst, double rank_tol = 1e-9);

// Coefficient identity a folded polynomial must satisfy for edge e and
// answer ell, relative to a monomial M that avoids both preimages:
// the M*Y(u,i) coefficients summed over the u-preimage must match the
// w-side sum.
bool check_valid_constraint(const PolyD& q, const LabelCoverInstance& inst, int edge_index, int ell,
                            const Monomial& m, double tol = 1e-9);

struct FoldingViolation {
    int edge_index;
    int ell;
    Monomial m;
    double gap;
};
// Scans every monomial of q for applicable (edge, answer, M) triples.
std::vector<FoldingViolation> folding_violations(const PolyD& q, const LabelCoverInstance& inst,
                                                 double tol = 1e-9);

struct EmitOptions {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    long long n_points = 0;
    bool fold = false;
    int threads = 1;
};

struct EmitResult {
    Dataset dataset;
    std::string manifest_json;
};

// Samples n_points test draws (independent per-point streams, so the
// output is identical for any thread count) and packages them with a
// manifest that pins every derived parameter and the instance hash.
EmitResult emit_instance(const LabelCoverInstance& inst, const TestParams& params,
                         const EmitOptions& options);

} // namespace ptfhard
