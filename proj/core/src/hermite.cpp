#include "ptfhard/hermite.hpp"

#include "ptfhard/errors.hpp"

#include <cmath>
#include <map>

namespace ptfhard {

HermiteOptions& hermite_options() {
    static HermiteOptions opts;
    return opts;
}

namespace {

void check_cap(int d) {
    if (d < 0) throw InvalidInputError("negative basis degree");
    if (d > hermite_options().degree_cap)
        throw InvalidInputError("basis degree " + std::to_string(d) + " exceeds cap " +
                                std::to_string(hermite_options().degree_cap));
}

long long factorial_ll(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

// He_0 = 1, He_1 = x, He_{d+1} = x He_d - d He_{d-1}
const std::vector<long long>& he_coeffs(int d) {
    check_cap(d);
    static std::map<int, std::vector<long long>> cache;
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<long long>> rows;
    rows.push_back({1});
    rows.push_back({0, 1});
    for (int k = 1; static_cast<int>(rows.size()) <= d; ++k) {
        const auto& cur = rows[k];
        const auto& prev = rows[k - 1];
        std::vector<long long> next(k + 2, 0);
        for (int p = 0; p <= k; ++p) next[p + 1] += cur[p];
        for (int p = 0; p < static_cast<int>(prev.size()); ++p) next[p] -= k * prev[p];
        rows.push_back(std::move(next));
    }
    for (int k = 0; k < static_cast<int>(rows.size()); ++k) cache.emplace(k, rows[k]);
    return cache.at(d);
}

// x^n = sum_d power_to_he(n)[d] He_d(x); from x He_d = He_{d+1} + d He_{d-1}:
//   a(n, d) = a(n-1, d-1) + (d+1) a(n-1, d+1)
const std::vector<long long>& power_to_he(int n) {
    check_cap(n);
    static std::map<int, std::vector<long long>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<long long>> rows;
    rows.push_back({1});
    while (static_cast<int>(rows.size()) <= n) {
        const int m = static_cast<int>(rows.size());
        const auto& prev = rows.back();
        std::vector<long long> next(m + 1, 0);
        for (int d = 0; d < m; ++d) {
            next[d + 1] += prev[d];
            if (d >= 1) next[d - 1] += d * prev[d];
        }
        rows.push_back(std::move(next));
    }
    for (int k = 0; k < static_cast<int>(rows.size()); ++k) cache.emplace(k, rows[k]);
    return cache.at(n);
}

PolyD hermite_univariate(int deg, VarId v) {
    const auto& he = he_coeffs(deg);
    const double scale = 1.0 / std::sqrt(static_cast<double>(factorial_ll(deg)));
    PolyD p;
    for (int pw = 0; pw < static_cast<int>(he.size()); ++pw)
        if (he[pw] != 0) p.add_term(Monomial(v, pw), he[pw] * scale);
    return p;
}

PolyQ hermite_univariate_exact(int deg, VarId v) {
    const auto& he = he_coeffs(deg);
    PolyQ p;
    for (int pw = 0; pw < static_cast<int>(he.size()); ++pw)
        if (he[pw] != 0) p.add_term(Monomial(v, pw), Rational(he[pw]));
    return p;
}

std::vector<double> HermiteBasisTraits<double>::conversion_row(int n) {
    const auto& a = power_to_he(n);
    std::vector<double> row(n + 1, 0.0);
    for (int d = 0; d <= n; ++d)
        if (a[d] != 0) row[d] = a[d] * std::sqrt(static_cast<double>(factorial_ll(d)));
    return row;
}

std::vector<Rational> HermiteBasisTraits<Rational>::conversion_row(int n) {
    const auto& a = power_to_he(n);
    std::vector<Rational> row(n + 1, Rational(0));
    for (int d = 0; d <= n; ++d) row[d] = Rational(a[d]);
    return row;
}

Rational HermiteBasisTraits<Rational>::index_weight(const HermiteIndex& idx) {
    Rational w(1);
    for (const auto& [v, d] : idx.factors()) w *= Rational(factorial_ll(d));
    return w;
}

namespace {

template <class C>
C constant_of(const Polynomial<C>& p) {
    if (p.is_zero()) return C(0);
    if (p.support_size() != 1 || !p.terms().begin()->first.is_one())
        throw InvalidInputError("expansion coefficient is not a constant");
    return p.terms().begin()->second;
}

} // namespace

double l2_norm(const HermiteExpansion<double>& e) {
    double s = 0.0;
    for (const auto& [idx, poly] : e.coeffs) {
        const double c = constant_of(poly);
        s += c * c;
    }
    return std::sqrt(s);
}

Rational l2_norm_sq_exact(const HermiteExpansion<Rational>& e) {
    Rational s(0);
    for (const auto& [idx, poly] : e.coeffs) {
        const Rational c = constant_of(poly);
        s += c * c * HermiteBasisTraits<Rational>::index_weight(idx);
    }
    return s;
}

double basisB_norm(const HermiteExpansion<double>& e) {
    double s = 0.0;
    for (const auto& [idx, poly] : e.coeffs) {
        for (const VarId& v : poly.vars())
            if (v.kind != VarKind::W)
                throw InvalidInputError("coefficient contains non-W variable " + v.str());
        s += poly.mon_norm2_sq();
    }
    return std::sqrt(s);
}

double basisB_partial_norm(const MixedExpansion<double>& m, int d_star, const std::set<int>& J,
                           int j_star) {
    double s = 0.0;
    for (const auto& [key, poly] : m) {
        for (const auto& [v, e] : key.ys.factors())
            if (v.kind != VarKind::Block || v.b != j_star)
                throw InvalidInputError("raw factor off the designated block: " + v.str());
        if (key.herm.degree() != d_star) continue;
        const auto& fs = key.ys.factors();
        if (fs.size() != 1 || fs[0].second != 1) continue;
        if (J.count(fs[0].first.a) == 0) continue;
        s += poly.mon_norm2_sq();
    }
    return std::sqrt(s);
}

} // namespace ptfhard
