#pragma once

#include "ptfhard/gauss.hpp"
#include "ptfhard/hermite.hpp"
#include "ptfhard/label_cover.hpp"
#include "ptfhard/polynomial.hpp"
#include "ptfhard/reduction.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ptfhard {

// Noisy cells (i, j) of the k x T block layout, with per-block bookkeeping
// of the surviving (non-noisy) coordinates in sorted order.
class NoiseSet {
  public:
    NoiseSet() = default;
    NoiseSet(int k, int T, std::set<std::pair<int, int>> noisy);

    int k() const { return k_; }
    int T() const { return T_; }
    const std::set<std::pair<int, int>>& noisy() const { return noisy_; }
    bool is_noisy(int i, int j) const { return noisy_.count({i, j}) > 0; }
    int k_j(int j) const { return static_cast<int>(non_noisy_[j].size()); }
    const std::vector<int>& non_noisy(int j) const { return non_noisy_[j]; }
    std::set<int> noisy_in_block(int j) const;

    // Draws each cell independently with probability eps.
    static NoiseSet sample(int k, int T, double eps, Rng& rng);

  private:
    int k_ = 0;
    int T_ = 0;
    std::set<std::pair<int, int>> noisy_;
    std::vector<std::vector<int>> non_noisy_;
};

struct NicenessReport {
    bool structural = false;       // every block keeps at least half its coordinates
    int worst_block = -1;
    int worst_noisy_count = 0;
    bool flip_checked = false;     // second condition needs a polynomial
    double flip_prob = 0.0;
    bool flip_ok = false;
};

// Structural half-per-block condition, plus (when a polynomial over the
// block coordinates is supplied) a Monte Carlo estimate of how often its
// sign flips when the hidden bit flips.
NicenessReport is_nice(const NoiseSet& ns);
NicenessReport is_nice(const NoiseSet& ns, const PolyD& p, const TestParams& params, int trials,
                       Rng& rng);

// Exact rewrite of a polynomial over block coordinates B(i,j), relative to
// a designated block j*:
//   - non-noisy coordinates of blocks != j* pass through the block rotation;
//     rows >= 1 of the rotation are collected into p_omit,
//   - noisy coordinates of blocks != j* become Z variables and are expanded
//     in the Gaussian product basis,
//   - block-j* coordinates stay raw,
// leaving coefficients over the mean rows W(0,j).
template <class C>
struct HybridRepresentation {
    int jstar = -1;
    int degree = 0;
    NoiseSet ns;
    Polynomial<C> p_omit;
    MixedExpansion<C> terms;
};

template <class C>
HybridRepresentation<C> hybrid_rewrite(const Polynomial<C>& p, const NoiseSet& ns, int jstar);

template <class C>
Polynomial<C> reassemble(const HybridRepresentation<C>& rep);

// Root-sum-square linear masses of block j* at basis degree d_star.
struct CoefficientTensor {
    int jstar = -1;
    int dstar = 0;
    std::vector<double> c; // size k, entries >= 0

    double total_sq() const;
};

CoefficientTensor coefficient_tensor(const HybridRepresentation<double>& rep, int d_star);

// Coefficient vector of the singleton slice S = {(i, j*)}, keyed by the
// accompanying basis element (Gaussian part, mean-row monomial).
struct BasisElem {
    Monomial herm;
    Monomial wmon;
    friend bool operator<(const BasisElem& x, const BasisElem& y) {
        GradedLexLess lt;
        if (lt(x.herm, y.herm)) return true;
        if (lt(y.herm, x.herm)) return false;
        return lt(x.wmon, y.wmon);
    }
};
std::map<BasisElem, double> singleton_coefficients(const HybridRepresentation<double>& rep, int i);

// Noisy mass must be a (eps^4/4)-fraction of the non-noisy mass, and the
// non-noisy mass must be positive.
bool is_distinguished(const CoefficientTensor& t, const NoiseSet& ns, double eps);

struct DecodeConfig {
    double nu = 0.5;
    int R = 1;
    static DecodeConfig from(const TestParams& params);
    // the analysis needs nu^2 <= eps^2 / (2 ln(2/eps)); callers may warn
    bool nu_in_range(double eps) const;
};

struct GammaSets {
    std::set<int> g0;
    std::set<int> g1;
};
GammaSets gamma_sets(const CoefficientTensor& t, const DecodeConfig& cfg);

// Restriction of a polynomial over point coordinates to the draw where
// block j != j* sits on other_vertices[j] (the j* entry is ignored) and
// block j* sits on v. Point coordinates of unchosen vertices become 0; a
// chosen vertex's coordinate i becomes the sum of B(i, j) over the blocks
// sitting on it.
PolyD restrict_to_blocks(const PolyD& p_global, const std::vector<int>& other_vertices, int jstar,
                         int v, int k);

struct DecodeResult {
    Labeling labeling;                    // -1 where gamma0 came up empty
    std::vector<std::set<int>> gamma0;    // per vertex
    std::vector<std::set<int>> gamma1;
    int jstar = -1;
    int dstar = 0;
    std::vector<int> other_vertices;      // vertex of each block != j*
    NoiseSet noise;
};

// Draws (j*, d*), vertices for the other blocks and their noise cells, then
// for every vertex v: restricts p_global to the chosen vertices (all other
// coordinates set to 0), rewrites, reads the d* tensor, and labels v
// uniformly from gamma0 when non-empty.
DecodeResult randomized_partial_labeling(const PolyD& p_global, const LabelCoverInstance& inst,
                                         const TestParams& params, const DecodeConfig& cfg,
                                         Rng& rng);

struct IntersectReport {
    std::vector<int> checked_edges;    // members of E' (both projections injective on gamma1)
    std::vector<int> violating_edges;  // E' edges whose gamma0 projections do not meet
};
IntersectReport projection_intersection_check(const LabelCoverInstance& inst,
                                              const std::vector<std::set<int>>& gamma0,
                                              const std::vector<std::set<int>>& gamma1);

} // namespace ptfhard
