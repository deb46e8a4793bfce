#include "ptfhard/decode.hpp"

#include "ptfhard/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ptfhard {

NoiseSet::NoiseSet(int k, int T, std::set<std::pair<int, int>> noisy)
    : k_(k), T_(T), noisy_(std::move(noisy)) {
    if (k_ <= 0 || T_ <= 0) throw InvalidInputError("noise set needs k >= 1 and T >= 1");
    for (const auto& [i, j] : noisy_)
        if (i < 0 || i >= k_ || j < 0 || j >= T_)
            throw InvalidInputError("noisy cell out of range");
    non_noisy_.assign(T_, {});
    for (int j = 0; j < T_; ++j)
        for (int i = 0; i < k_; ++i)
            if (noisy_.count({i, j}) == 0) non_noisy_[j].push_back(i);
}

std::set<int> NoiseSet::noisy_in_block(int j) const {
    std::set<int> s;
    for (const auto& [i, jj] : noisy_)
        if (jj == j) s.insert(i);
    return s;
}

NoiseSet NoiseSet::sample(int k, int T, double eps, Rng& rng) {
    std::set<std::pair<int, int>> cells;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < T; ++j)
            if (rng.bernoulli(eps)) cells.insert({i, j});
    return NoiseSet(k, T, std::move(cells));
}

NicenessReport is_nice(const NoiseSet& ns) {
    NicenessReport r;
    r.structural = true;
    for (int j = 0; j < ns.T(); ++j) {
        int noisy = ns.k() - ns.k_j(j);
        if (noisy > r.worst_noisy_count) {
            r.worst_noisy_count = noisy;
            r.worst_block = j;
        }
        if (2 * noisy > ns.k()) r.structural = false;
    }
    return r;
}

NicenessReport is_nice(const NoiseSet& ns, const PolyD& p, const TestParams& params, int trials,
                       Rng& rng) {
    NicenessReport r = is_nice(ns);
    if (trials <= 0) throw InvalidInputError("flip estimate needs trials >= 1");
    const int k = ns.k();
    const int T = ns.T();
    const double eta = params.eta();
    const double scale = std::sqrt(static_cast<double>(T - 1) / T);
    int flips = 0;
    std::map<VarId, double> binding;
    for (int t = 0; t < trials; ++t) {
        const std::vector<double> deltas = sample_deltas(T, rng);
        for (int j = 0; j < T; ++j)
            for (int i = 0; i < k; ++i) {
                const VarId v = VarId::block(i, j);
                binding[v] = ns.is_noisy(i, j) ? rng.normal() : scale * deltas[j];
            }
        double plus = 0;
        double minus = 0;
        {
            auto b = binding;
            for (int j = 0; j < T; ++j)
                for (int i = 0; i < k; ++i)
                    if (!ns.is_noisy(i, j)) b[VarId::block(i, j)] += eta;
            plus = p.evaluate(b);
            for (int j = 0; j < T; ++j)
                for (int i = 0; i < k; ++i)
                    if (!ns.is_noisy(i, j)) b[VarId::block(i, j)] -= 2 * eta;
            minus = p.evaluate(b);
        }
        if ((plus >= 0) != (minus >= 0)) ++flips;
    }
    r.flip_checked = true;
    r.flip_prob = static_cast<double>(flips) / trials;
    r.flip_ok = r.flip_prob >= params.xi / 2;
    return r;
}

namespace {

template <class C>
struct mode_traits;

template <>
struct mode_traits<double> {
    static LinearTransform<double> w(int k) { return build_w_transform(k); }
};

template <>
struct mode_traits<Rational> {
    static LinearTransform<Rational> w(int k) { return build_w_transform_exact(k); }
};

} // namespace

template <class C>
HybridRepresentation<C> hybrid_rewrite(const Polynomial<C>& p, const NoiseSet& ns, int jstar) {
    if (jstar < 0 || jstar >= ns.T()) throw InvalidInputError("designated block out of range");
    for (const VarId& v : p.vars())
        if (v.kind != VarKind::Block || v.a >= ns.k() || v.b >= ns.T())
            throw InvalidInputError("hybrid rewrite expects in-range block variables");

    HybridRepresentation<C> rep;
    rep.jstar = jstar;
    rep.degree = p.degree();
    rep.ns = ns;

    std::map<VarId, Polynomial<C>> bind;
    std::set<VarId> zvars;
    for (int j = 0; j < ns.T(); ++j) {
        if (j == jstar) continue;
        const auto& nn = ns.non_noisy(j);
        if (!nn.empty()) {
            const auto tr = mode_traits<C>::w(static_cast<int>(nn.size()));
            std::vector<VarId> wvars;
            for (int r = 0; r < tr.size(); ++r) wvars.push_back(VarId::w(r, j));
            for (std::size_t l = 0; l < nn.size(); ++l)
                bind.emplace(VarId::block(nn[l], j), tr.inverse_poly(static_cast<int>(l), wvars));
        }
        for (int i : ns.noisy_in_block(j)) {
            const VarId z = VarId::z(i, j);
            bind.emplace(VarId::block(i, j), Polynomial<C>(Monomial(z)));
            zvars.insert(z);
        }
    }
    const Polynomial<C> q = p.substitute(bind);

    Polynomial<C> keep;
    for (const auto& [m, c] : q.terms()) {
        const bool omit =
            m.any_var([](const VarId& v) { return v.kind == VarKind::W && v.a >= 1; });
        if (omit)
            rep.p_omit.add_term(m, c);
        else
            keep.add_term(m, c);
    }

    const auto he = to_hermite(keep, zvars);
    for (const auto& [idx, coef] : he.coeffs) {
        for (const auto& [m, c] : coef.terms()) {
            auto [ys, rest] = m.split([](const VarId& v) { return v.kind == VarKind::Block; });
            const MixedKey key{idx, ys};
            auto it = rep.terms.find(key);
            if (it == rep.terms.end()) it = rep.terms.emplace(key, Polynomial<C>{}).first;
            it->second.add_term(rest, c);
        }
    }
    for (auto it = rep.terms.begin(); it != rep.terms.end();)
        it = it->second.is_zero() ? rep.terms.erase(it) : std::next(it);
    return rep;
}

template <class C>
Polynomial<C> reassemble(const HybridRepresentation<C>& rep) {
    const NoiseSet& ns = rep.ns;
    Polynomial<C> acc = rep.p_omit;
    for (const auto& [key, coef] : rep.terms) {
        Polynomial<C> basis = Polynomial<C>::constant(C(1));
        for (const auto& [v, d] : key.herm.factors())
            basis = basis * HermiteBasisTraits<C>::basis_poly(d, v);
        acc += (coef * basis) * Polynomial<C>(key.ys);
    }
    std::map<VarId, Polynomial<C>> back;
    for (int j = 0; j < ns.T(); ++j) {
        if (j == rep.jstar) continue;
        const auto& nn = ns.non_noisy(j);
        if (!nn.empty()) {
            const auto tr = mode_traits<C>::w(static_cast<int>(nn.size()));
            std::vector<VarId> yvars;
            for (int i : nn) yvars.push_back(VarId::block(i, j));
            for (int r = 0; r < tr.size(); ++r)
                back.emplace(VarId::w(r, j), tr.forward_poly(r, yvars));
        }
        for (int i : ns.noisy_in_block(j))
            back.emplace(VarId::z(i, j), Polynomial<C>(Monomial(VarId::block(i, j))));
    }
    return acc.substitute(back);
}

template HybridRepresentation<double> hybrid_rewrite(const PolyD&, const NoiseSet&, int);
template HybridRepresentation<Rational> hybrid_rewrite(const PolyQ&, const NoiseSet&, int);
template PolyD reassemble(const HybridRepresentation<double>&);
template PolyQ reassemble(const HybridRepresentation<Rational>&);

double CoefficientTensor::total_sq() const {
    double s = 0;
    for (double x : c) s += x * x;
    return s;
}

CoefficientTensor coefficient_tensor(const HybridRepresentation<double>& rep, int d_star) {
    if (d_star < 0) throw InvalidInputError("basis degree must be nonnegative");
    CoefficientTensor t;
    t.jstar = rep.jstar;
    t.dstar = d_star;
    t.c.assign(rep.ns.k(), 0.0);
    std::vector<double> sq(rep.ns.k(), 0.0);
    for (const auto& [key, coef] : rep.terms) {
        if (key.herm.degree() != d_star) continue;
        const auto& fs = key.ys.factors();
        if (fs.size() != 1 || fs[0].second != 1) continue;
        const VarId v = fs[0].first;
        if (v.b != rep.jstar) continue;
        sq[v.a] += coef.mon_norm2_sq();
    }
    for (int i = 0; i < rep.ns.k(); ++i) t.c[i] = std::sqrt(sq[i]);
    return t;
}

std::map<BasisElem, double> singleton_coefficients(const HybridRepresentation<double>& rep,
                                                   int i) {
    std::map<BasisElem, double> out;
    const Monomial want = Monomial(VarId::block(i, rep.jstar));
    for (const auto& [key, coef] : rep.terms) {
        if (!(key.ys == want)) continue;
        for (const auto& [m, c] : coef.terms()) out[BasisElem{key.herm, m}] += c;
    }
    return out;
}

bool is_distinguished(const CoefficientTensor& t, const NoiseSet& ns, double eps) {
    const std::set<int> noisy = ns.noisy_in_block(t.jstar);
    double noisy_sq = 0;
    double clean_sq = 0;
    for (int i = 0; i < static_cast<int>(t.c.size()); ++i) {
        const double s = t.c[i] * t.c[i];
        if (noisy.count(i))
            noisy_sq += s;
        else
            clean_sq += s;
    }
    if (clean_sq <= 0) return false;
    return noisy_sq <= (std::pow(eps, 4) / 4.0) * clean_sq;
}

DecodeConfig DecodeConfig::from(const TestParams& params) {
    DecodeConfig cfg;
    cfg.nu = params.eps * params.eps / 2.0;
    cfg.R = 1;
    return cfg;
}

bool DecodeConfig::nu_in_range(double eps) const {
    if (eps <= 0 || eps >= 2) return false;
    return nu * nu <= eps * eps / (2.0 * std::log(2.0 / eps));
}

GammaSets gamma_sets(const CoefficientTensor& t, const DecodeConfig& cfg) {
    if (cfg.nu <= 0) throw InvalidInputError("threshold parameter must be positive");
    GammaSets g;
    const double tot = t.total_sq();
    if (tot <= 0) return g;
    const double thr0 = (cfg.nu * cfg.nu / 4.0) * tot;
    const double thr1 = (cfg.nu * cfg.nu / (100.0 * std::pow(4.0, 2 * cfg.R))) * tot;
    for (int i = 0; i < static_cast<int>(t.c.size()); ++i) {
        const double s = t.c[i] * t.c[i];
        if (s > thr0) g.g0.insert(i);
        if (s > thr1) g.g1.insert(i);
    }
    return g;
}

PolyD restrict_to_blocks(const PolyD& p_global, const std::vector<int>& other_vertices, int jstar,
                         int v, int k) {
    if (k <= 0) throw InvalidInputError("arity must be positive");
    const int T = static_cast<int>(other_vertices.size());
    if (jstar < 0 || jstar >= T) throw InvalidInputError("designated block out of range");
    std::map<int, std::vector<int>> blocks_on;
    for (int j = 0; j < T; ++j)
        if (j != jstar) blocks_on[other_vertices[j]].push_back(j);
    blocks_on[v].push_back(jstar);

    std::map<VarId, PolyD> bind;
    for (const VarId& pv : p_global.vars()) {
        if (pv.kind != VarKind::Point || pv.b >= k)
            throw InvalidInputError("global polynomial must use point coordinates");
        PolyD sum;
        auto it = blocks_on.find(pv.a);
        if (it != blocks_on.end())
            for (int j : it->second) sum += PolyD(Monomial(VarId::block(pv.b, j)));
        bind.emplace(pv, std::move(sum));
    }
    return p_global.substitute(bind);
}

DecodeResult randomized_partial_labeling(const PolyD& p_global, const LabelCoverInstance& inst,
                                         const TestParams& params, const DecodeConfig& cfg,
                                         Rng& rng) {
    if (params.k != inst.k) throw InvalidInputError("parameter arity does not match instance");
    const int T = params.T;
    const int k = params.k;

    DecodeResult res;
    res.jstar = rng.uniform_int(T);
    res.dstar = params.d > 1 ? rng.uniform_int(params.d) : 0;
    res.other_vertices.assign(T, -1);
    for (int j = 0; j < T; ++j)
        if (j != res.jstar) res.other_vertices[j] = rng.uniform_int(inst.nv);
    std::set<std::pair<int, int>> cells;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < T; ++j)
            if (j != res.jstar && rng.bernoulli(params.eps)) cells.insert({i, j});
    res.noise = NoiseSet(k, T, std::move(cells));

    res.labeling.assign(inst.nv, -1);
    res.gamma0.assign(inst.nv, {});
    res.gamma1.assign(inst.nv, {});
    for (int v = 0; v < inst.nv; ++v) {
        const PolyD pv = restrict_to_blocks(p_global, res.other_vertices, res.jstar, v, k);
        const auto rep = hybrid_rewrite(pv, res.noise, res.jstar);
        const auto tensor = coefficient_tensor(rep, res.dstar);
        const GammaSets g = gamma_sets(tensor, cfg);
        res.gamma0[v] = g.g0;
        res.gamma1[v] = g.g1;
        if (!g.g0.empty()) {
            const int pick = rng.uniform_int(static_cast<int>(g.g0.size()));
            auto it = g.g0.begin();
            std::advance(it, pick);
            res.labeling[v] = *it;
        }
    }
    return res;
}

IntersectReport projection_intersection_check(const LabelCoverInstance& inst,
                                              const std::vector<std::set<int>>& gamma0,
                                              const std::vector<std::set<int>>& gamma1) {
    if (static_cast<int>(gamma0.size()) != inst.nv || static_cast<int>(gamma1.size()) != inst.nv)
        throw InvalidInputError("need one gamma set per vertex");
    IntersectReport rep;
    auto project = [](const std::vector<int>& pi, const std::set<int>& s) {
        std::set<int> out;
        for (int i : s) out.insert(pi[i]);
        return out;
    };
    for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        const LcEdge& edge = inst.edges[e];
        const auto p1u = project(edge.pi_u, gamma1[edge.u]);
        const auto p1w = project(edge.pi_w, gamma1[edge.w]);
        if (p1u.size() != gamma1[edge.u].size() || p1w.size() != gamma1[edge.w].size()) continue;
        if (gamma0[edge.u].empty() || gamma0[edge.w].empty()) continue;
        rep.checked_edges.push_back(e);
        const auto p0u = project(edge.pi_u, gamma0[edge.u]);
        const auto p0w = project(edge.pi_w, gamma0[edge.w]);
        bool meet = false;
        for (int l : p0u)
            if (p0w.count(l)) {
                meet = true;
                break;
            }
        if (!meet) rep.violating_edges.push_back(e);
    }
    return rep;
}

} // namespace ptfhard
