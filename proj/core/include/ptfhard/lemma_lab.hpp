#pragma once

#include "ptfhard/decode.hpp"
#include "ptfhard/polynomial.hpp"
#include "ptfhard/rng.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ptfhard {

// Outcome of one verification run. A "violated" verdict always carries a
// witness string (serialized inputs plus the seed) that reproduces it.
struct LemmaReport {
    std::string lemma;
    std::string verdict = "holds"; // holds | violated | inconclusive
    int trials = 1;
    int violations = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
    std::map<std::string, double> stats;
    std::vector<std::string> notes;
    std::string witness;

    bool ok() const { return verdict != "violated"; }
    std::string to_json() const;
};

// Random sparse polynomial with rational coefficients p/q, |p| <= 100,
// q <= 16; each monomial of degree <= max_degree kept with probability 1/2.
PolyQ random_rational_poly(const std::vector<VarId>& vars, int max_degree, Rng& rng);
PolyD to_double_poly(const PolyQ& p);

// Multiplying S (degree <= d, T > 2d variables) by the sum of all variables
// leaves, for at least T/2 of the variables, an exactly-linear slice whose
// mass is at least (20dT)^{-3^d} of S's.
LemmaReport verify_robust_polynomial(const PolyQ& s, int d, int T);

// Identity instance over the abstract symbols X, Y, Z:
//   (aX - Y - Z) S1(Y,Z) + DX + X^2 R1 = (aY - X - Z) S2(X,Z) + DY + Y^2 R2
// with deg S = d-1, deg R = d-2, deg D = d.
struct VariableRemovalInstance {
    Rational a = 1;
    int d = 3;
    PolyQ s1, s2, r1, r2, dx, dy;
};

inline VarId varred_x() { return VarId::abstract(0); }
inline VarId varred_y() { return VarId::abstract(1); }
inline VarId varred_z() { return VarId::abstract(2); }

// Random instance: S1, S2, R1, R2, DX drawn, DY solved from the identity.
VariableRemovalInstance random_varred_instance(int d, const Rational& a, Rng& rng);
// Instance with DX = DY = 0 built from the consistency constraints.
VariableRemovalInstance zero_delta_varred_instance(int d, const Rational& a, Rng& rng);

// Checks the coefficient-matching consequences of the identity and the
// structural decomposition S1 = ((a+1)Y - Z) C + Y^2 A1 + Delta with
// deg C <= d-2, deg A1 <= d-3, deg Delta <= d-1 and
// |Delta|^2 <= 400 a^2 max(|DX|^2, |DY|^2).
LemmaReport verify_variable_removal(const VariableRemovalInstance& inst);

// For degree <= d over T > d variables, some variable W_j leaves a
// W_j^2-free slice R_j with |R_j| > 4^{-2^d} |P|; also checks the chain
// bound |L_j| <= 4 (4^{-2^d})^{1/2^{j-1}} |P| whenever all of R_1..R_j are
// small, where P = W_1^2...W_j^2 H_j + L_j.
LemmaReport verify_lower_bound(const PolyQ& p, int d, int T);

// Norm comparison through the cross-block rotation, where U(0) is pinned
// to b * eta * sqrt(T) and the remaining U's are independent Gaussians:
//   part 1: l2(Q) <= (20dT)^{5d} mon2(Q-as-W)
//   part 2 (Q free of U(0)): mon2(Q-as-W) <= (10dT)^{7d} l2(Q)
LemmaReport verify_coeff_bounds(const PolyD& q, int d, int T, double eta);

// mon2(P1 * P2) <= mon1(P1) * mon2(P2), exactly.
LemmaReport verify_mon_submult(const PolyQ& p1, const PolyQ& p2);

// Runs the block and cross-block rotations on a polynomial over block
// coordinates and splits the result into the omitted part (rows >= 1 of a
// block rotation), a U(0)-free part Q0, and U(0) * Q1; checks exact
// reassembly, that the omitted part vanishes on test draws, and that Q0 is
// U(0)-free.
LemmaReport verify_q_decomposition(const PolyD& p, const NoiseSet& ns, double eta, int n_draws,
                                   Rng& rng);

// Monte Carlo small-ball probability Pr[|P| <= eps_cw * l2(P)] against the
// d * eps_cw^(1/d) shape; inconclusive by design (the constant is unknown).
LemmaReport empirical_carbery_wright(const PolyD& p, double eps_cw, int n_samples, Rng& rng);

// Random noisy subsets against a mass tensor: the probability that the
// noisy share falls below eps/2 is compared to the Hoeffding envelope
// 2 exp(-eps^2 / (2 sum_i share_i^2)), which is vacuous for spiky tensors.
LemmaReport chernoff_decoding_probe(const std::vector<double>& tensor, double eps, int trials,
                                    Rng& rng);

// Named randomized batteries behind the `verify` command; lemma ids:
// robust-poly, var-removal, lower-bound, coeff-bounds, mon-submult,
// q-decomp, carbery-wright, chernoff-probe.
LemmaReport run_lemma_battery(const std::string& lemma, int trials, std::uint64_t seed);
std::vector<std::string> lemma_battery_ids();

} // namespace ptfhard
