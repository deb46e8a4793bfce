#pragma once

#include "ptfhard/polynomial.hpp"

#include <set>
#include <vector>

namespace ptfhard {

// Degree-indexed product basis over designated Gaussian variables. A key
// maps each Gaussian variable to its basis degree (absent = degree 0).
using HermiteIndex = Monomial;

struct HermiteOptions {
    int degree_cap = 8; // univariate conversion tables are built up to this degree
};
HermiteOptions& hermite_options();

// Integer tables for the probabilists' polynomials He_d:
//   he_coeffs(d)[p]   = coefficient of x^p in He_d(x)
//   power_to_he(n)[d] = coefficient of He_d in the expansion of x^n
const std::vector<long long>& he_coeffs(int d);
const std::vector<long long>& power_to_he(int n);

// Orthonormal version H_d = He_d / sqrt(d!), E[H_a H_b] = [a == b] under N(0,1).
PolyD hermite_univariate(int deg, VarId v = VarId::abstract(0));

// Exact-mode basis: He_d itself (integer coefficients, E[He_d^2] = d!).
PolyQ hermite_univariate_exact(int deg, VarId v = VarId::abstract(0));

// Float expansions use the orthonormal basis; exact expansions use the
// integer basis and carry the factorial weights in the norm instead, which
// keeps every conversion rational.
template <class C>
struct HermiteBasisTraits;

template <>
struct HermiteBasisTraits<double> {
    static std::vector<double> conversion_row(int n);
    static PolyD basis_poly(int d, VarId v) { return hermite_univariate(d, v); }
    static double index_weight(const HermiteIndex&) { return 1.0; }
};

template <>
struct HermiteBasisTraits<Rational> {
    static std::vector<Rational> conversion_row(int n);
    static PolyQ basis_poly(int d, VarId v) { return hermite_univariate_exact(d, v); }
    static Rational index_weight(const HermiteIndex& idx);
};

template <class C>
struct HermiteExpansion {
    std::set<VarId> gaussian_vars;
    std::map<HermiteIndex, Polynomial<C>, GradedLexLess> coeffs; // coefficient polys are free of gaussian_vars
};

template <class C>
HermiteExpansion<C> to_hermite(const Polynomial<C>& p, const std::set<VarId>& gaussian_vars) {
    HermiteExpansion<C> e;
    e.gaussian_vars = gaussian_vars;
    for (const auto& [m, c] : p.terms()) {
        auto [gpart, rest] = m.split([&](const VarId& v) { return gaussian_vars.count(v) > 0; });
        std::vector<std::pair<HermiteIndex, C>> expanded{{HermiteIndex{}, c}};
        for (const auto& [v, n] : gpart.factors()) {
            const auto row = HermiteBasisTraits<C>::conversion_row(n);
            std::vector<std::pair<HermiteIndex, C>> next;
            for (const auto& [idx, coef] : expanded)
                for (int d = 0; d <= n; ++d) {
                    if (CoeffTraits<C>::is_zero(row[d], 0.0)) continue;
                    next.emplace_back(idx.times(v, d), C(coef * row[d]));
                }
            expanded = std::move(next);
        }
        for (const auto& [idx, coef] : expanded) {
            auto it = e.coeffs.find(idx);
            if (it == e.coeffs.end()) it = e.coeffs.emplace(idx, Polynomial<C>{}).first;
            it->second.add_term(rest, coef);
        }
    }
    for (auto it = e.coeffs.begin(); it != e.coeffs.end();)
        it = it->second.is_zero() ? e.coeffs.erase(it) : std::next(it);
    return e;
}

template <class C>
Polynomial<C> from_hermite(const HermiteExpansion<C>& e) {
    Polynomial<C> p;
    for (const auto& [idx, coef] : e.coeffs) {
        Polynomial<C> basis = Polynomial<C>::constant(C(1));
        for (const auto& [v, d] : idx.factors())
            basis = basis * HermiteBasisTraits<C>::basis_poly(d, v);
        p += coef * basis;
    }
    return p;
}

// Gaussian L2 norm of an expansion whose coefficients are all constants.
double l2_norm(const HermiteExpansion<double>& e);
Rational l2_norm_sq_exact(const HermiteExpansion<Rational>& e);

// sqrt of the sum over basis indices of the squared mon-2 norm of each
// coefficient polynomial; coefficients must live on W variables only.
double basisB_norm(const HermiteExpansion<double>& e);

// Mixed expansion: basis index over designated Gaussians, times a raw
// monomial over one block's coordinates, with coefficients over W variables.
struct MixedKey {
    HermiteIndex herm;
    Monomial ys;
};
struct MixedKeyLess {
    bool operator()(const MixedKey& x, const MixedKey& y) const {
        GradedLexLess lt;
        if (lt(x.herm, y.herm)) return true;
        if (lt(y.herm, x.herm)) return false;
        return lt(x.ys, y.ys);
    }
};
template <class C>
using MixedExpansion = std::map<MixedKey, Polynomial<C>, MixedKeyLess>;

// Mass of the singleton slices { basis degree = d_star, ys = B(i, j_star) }
// over i in J: sqrt of the summed squared mon-2 norms of their coefficients.
double basisB_partial_norm(const MixedExpansion<double>& m, int d_star, const std::set<int>& J,
                           int j_star);

} // namespace ptfhard
