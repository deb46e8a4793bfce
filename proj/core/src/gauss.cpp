#include "ptfhard/gauss.hpp"

#include "ptfhard/errors.hpp"

#include <cmath>

namespace ptfhard {

std::vector<double> sample_deltas(int T, Rng& rng) {
    if (T < 2) throw InvalidInputError("sample_deltas needs T >= 2");
    std::vector<double> g(T);
    double mean = 0.0;
    for (double& x : g) {
        x = rng.normal();
        mean += x;
    }
    mean /= T;
    const double scale = std::sqrt(static_cast<double>(T) / (T - 1));
    for (double& x : g) x = scale * (x - mean);
    return g;
}

namespace {

// Helmert-style integer row i (1-based among the non-mean rows):
// (1, ..., 1, -i, 0, ..., 0) with i ones; orthogonal to 𝟙 and to each other.
template <class C>
std::vector<C> helmert_int_row(int i, int n) {
    std::vector<C> row(n, C(0));
    for (int l = 0; l < i; ++l) row[l] = C(1);
    row[i] = C(-i);
    return row;
}

} // namespace

LinearTransform<double> build_w_transform(int k) {
    if (k < 1) throw InvalidInputError("block size must be >= 1");
    LinearTransform<double> t;
    t.rows.assign(k, std::vector<double>(k, 0.0));
    t.row_norm_sq.assign(k, 1.0 / k);
    for (int l = 0; l < k; ++l) t.rows[0][l] = 1.0 / k;
    for (int i = 1; i < k; ++i) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(i) * (i + 1) * k);
        for (int l = 0; l < i; ++l) t.rows[i][l] = scale;
        t.rows[i][i] = -i * scale;
    }
    return t;
}

LinearTransform<Rational> build_w_transform_exact(int k) {
    if (k < 1) throw InvalidInputError("block size must be >= 1");
    LinearTransform<Rational> t;
    t.rows.reserve(k);
    t.row_norm_sq.reserve(k);
    t.rows.emplace_back(k, Rational(1, k));
    t.row_norm_sq.emplace_back(Rational(1, k));
    for (int i = 1; i < k; ++i) {
        t.rows.push_back(helmert_int_row<Rational>(i, k));
        t.row_norm_sq.emplace_back(Rational(static_cast<long long>(i) * (i + 1)));
    }
    return t;
}

LinearTransform<double> build_u_transform(int T) {
    if (T < 1) throw InvalidInputError("block count must be >= 1");
    LinearTransform<double> t;
    t.rows.assign(T, std::vector<double>(T, 0.0));
    t.row_norm_sq.assign(T, 1.0);
    const double mean_entry = 1.0 / std::sqrt(static_cast<double>(T));
    for (int l = 0; l < T; ++l) t.rows[0][l] = mean_entry;
    for (int i = 1; i < T; ++i) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(i) * (i + 1));
        for (int l = 0; l < i; ++l) t.rows[i][l] = scale;
        t.rows[i][i] = -i * scale;
    }
    return t;
}

LinearTransform<Rational> build_u_transform_exact(int T) {
    if (T < 1) throw InvalidInputError("block count must be >= 1");
    LinearTransform<Rational> t;
    t.rows.reserve(T);
    t.row_norm_sq.reserve(T);
    t.rows.emplace_back(T, Rational(1));
    t.row_norm_sq.emplace_back(Rational(T));
    for (int i = 1; i < T; ++i) {
        t.rows.push_back(helmert_int_row<Rational>(i, T));
        t.row_norm_sq.emplace_back(Rational(static_cast<long long>(i) * (i + 1)));
    }
    return t;
}

OrthoStats verify_ortho_transform_lemma(int T, int n_samples, Rng& rng) {
    if (T < 3) throw InvalidInputError("need T >= 3 for two directions orthogonal to 1");
    // two random orthonormal directions orthogonal to 𝟙
    std::vector<double> x(T), y(T);
    for (;;) {
        double mx = 0, my = 0;
        for (int l = 0; l < T; ++l) {
            x[l] = rng.normal();
            y[l] = rng.normal();
            mx += x[l];
            my += y[l];
        }
        mx /= T;
        my /= T;
        double nx = 0;
        for (int l = 0; l < T; ++l) {
            x[l] -= mx;
            y[l] -= my;
            nx += x[l] * x[l];
        }
        if (nx < 1e-12) continue;
        nx = std::sqrt(nx);
        double dot = 0;
        for (int l = 0; l < T; ++l) {
            x[l] /= nx;
            dot += x[l] * y[l];
        }
        double ny = 0;
        for (int l = 0; l < T; ++l) {
            y[l] -= dot * x[l];
            ny += y[l] * y[l];
        }
        if (ny < 1e-12) continue;
        ny = std::sqrt(ny);
        for (int l = 0; l < T; ++l) y[l] /= ny;
        break;
    }

    double sf = 0, sh = 0, sff = 0, shh = 0, sfh = 0;
    for (int s = 0; s < n_samples; ++s) {
        const auto d = sample_deltas(T, rng);
        double f = 0, h = 0;
        for (int l = 0; l < T; ++l) {
            f += x[l] * d[l];
            h += y[l] * d[l];
        }
        sf += f;
        sh += h;
        sff += f * f;
        shh += h * h;
        sfh += f * h;
    }
    const double n = n_samples;
    OrthoStats st;
    st.var_f = sff / n - (sf / n) * (sf / n);
    st.var_h = shh / n - (sh / n) * (sh / n);
    st.cov_fh = sfh / n - (sf / n) * (sh / n);
    st.expected_var = static_cast<double>(T) / (T - 1);
    return st;
}

} // namespace ptfhard
