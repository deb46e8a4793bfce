#pragma once

#include "ptfhard/polynomial.hpp"
#include "ptfhard/rng.hpp"

#include <vector>

namespace ptfhard {

// Exchangeable Gaussians with unit marginals, pairwise correlation
// -1/(T-1), and exact zero sum: sqrt(T/(T-1)) * (g - mean(g)𝟙).
std::vector<double> sample_deltas(int T, Rng& rng);

// Row-orthogonal change of coordinates new_i = sum_l rows[i][l] old_l.
// Rows need not be unit; the inverse divides by the squared row norms,
// so the exact-rational builds below invert exactly.
template <class C>
struct LinearTransform {
    std::vector<std::vector<C>> rows;
    std::vector<C> row_norm_sq;

    int size() const { return static_cast<int>(rows.size()); }

    Polynomial<C> forward_poly(int i, const std::vector<VarId>& old_vars) const {
        Polynomial<C> p;
        for (std::size_t l = 0; l < old_vars.size(); ++l)
            p.add_term(Monomial(old_vars[l]), rows[i][l]);
        return p;
    }

    Polynomial<C> inverse_poly(int l, const std::vector<VarId>& new_vars) const {
        Polynomial<C> p;
        for (std::size_t i = 0; i < new_vars.size(); ++i)
            p.add_term(Monomial(new_vars[i]), C(rows[i][l] / row_norm_sq[i]));
        return p;
    }

    std::vector<C> apply(const std::vector<C>& x) const {
        std::vector<C> y(rows.size(), C(0));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t l = 0; l < x.size(); ++l) y[i] += rows[i][l] * x[l];
        return y;
    }
};

// Block rotation on k coordinates: row 0 is the mean row (1/k)𝟙, rows
// i >= 1 are pairwise orthogonal, orthogonal to 𝟙, and all rows have
// squared norm 1/k. The float build realizes exactly that; the exact
// build keeps rows 1.. as integer vectors instead (the normalization is
// a per-row rescale that the inverse absorbs).
LinearTransform<double> build_w_transform(int k);
LinearTransform<Rational> build_w_transform_exact(int k);

// Cross-block rotation on T coordinates: row 0 is 𝟙/sqrt(T), the rest an
// orthonormal completion orthogonal to 𝟙 (float); integer rows (exact).
LinearTransform<double> build_u_transform(int T);
LinearTransform<Rational> build_u_transform_exact(int T);

// Empirical check that projections of the delta vector onto two
// orthonormal directions orthogonal to 𝟙 behave as independent
// N(0, T/(T-1)) variables.
struct OrthoStats {
    double var_f = 0;
    double var_h = 0;
    double cov_fh = 0;
    double expected_var = 0;
};
OrthoStats verify_ortho_transform_lemma(int T, int n_samples, Rng& rng);

} // namespace ptfhard
