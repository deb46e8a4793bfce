#include "ptfhard/reduction.hpp"

#include "ptfhard/errors.hpp"
#include "ptfhard/version.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <thread>

namespace ptfhard {

using nlohmann::json;

TestParams TestParams::make(int d, double xi, int k) {
    if (d < 1) throw InvalidInputError("d must be >= 1");
    if (!(xi > 0.0) || xi > 1.0) throw InvalidInputError("xi must be in (0, 1]");
    if (k < 1) throw InvalidInputError("k must be >= 1");
    TestParams p;
    p.d = d;
    p.xi = xi;
    p.k = k;
    p.T = 10 * d;
    p.eps = xi / (32.0 * p.T * d);
    const double pow63d = std::pow(6.0, 3.0 * d);
    p.log_eta = d * pow63d * std::log(p.eps * xi / (20.0 * k * d * p.T));
    const double pow6d = std::pow(6.0, d);
    p.log_rho = -pow6d * std::log(20.0 * d * k * std::pow(p.T, 3) / std::pow(p.eps, 4)) -
                std::log(static_cast<double>(k) * p.T);
    return p;
}

namespace {

double gaussian_draw(const TestParams& params, Rng& rng) {
    return params.discretize_n ? rng.rademacher_avg(*params.discretize_n) : rng.normal();
}

std::vector<double> centered_deltas(std::vector<double> g) {
    const int T = static_cast<int>(g.size());
    double mean = 0.0;
    for (double x : g) mean += x;
    mean /= T;
    const double scale = std::sqrt(static_cast<double>(T) / (T - 1));
    for (double& x : g) x = scale * (x - mean);
    return g;
}

} // namespace

BasicTestSample sample_basic_test(int nv, const TestParams& params, Rng& rng) {
    if (nv < 1) throw InvalidInputError("nv must be >= 1");
    const int T = params.T, k = params.k;
    BasicTestSample s;
    s.y.assign(static_cast<std::size_t>(nv) * k, 0.0);
    s.vertices.resize(T);
    for (int j = 0; j < T; ++j) s.vertices[j] = static_cast<int>(rng.uniform_int(nv));
    std::vector<double> g(T);
    for (double& x : g) x = gaussian_draw(params, rng);
    s.deltas = centered_deltas(std::move(g));
    s.b = rng.rademacher();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < T; ++j)
            if (rng.bernoulli(params.eps)) s.noise.insert({i, j});
    const double shift_scale = std::sqrt((T - 1.0) / T);
    const double eta = params.eta();
    for (int j = 0; j < T; ++j) {
        const double base = shift_scale * s.deltas[j] + s.b * eta;
        for (int i = 0; i < k; ++i) {
            const double val = s.noise.count({i, j}) ? gaussian_draw(params, rng) : base;
            s.y[static_cast<std::size_t>(s.vertices[j]) * k + i] += val;
        }
    }
    return s;
}

std::pair<BasicTestSample, BasicTestSample> sample_basic_test_paired(int nv,
                                                                     const TestParams& params,
                                                                     int discretize_n, Rng& rng) {
    if (nv < 1) throw InvalidInputError("nv must be >= 1");
    const int T = params.T, k = params.k;
    BasicTestSample a, b;
    a.y.assign(static_cast<std::size_t>(nv) * k, 0.0);
    b.y.assign(static_cast<std::size_t>(nv) * k, 0.0);
    a.vertices.resize(T);
    for (int j = 0; j < T; ++j) a.vertices[j] = static_cast<int>(rng.uniform_int(nv));
    b.vertices = a.vertices;
    std::vector<double> ga(T), gb(T);
    for (int j = 0; j < T; ++j) {
        const auto p = paired_gaussian_discrete(rng, discretize_n);
        ga[j] = p.gauss;
        gb[j] = p.discrete;
    }
    a.deltas = centered_deltas(std::move(ga));
    b.deltas = centered_deltas(std::move(gb));
    a.b = b.b = rng.rademacher();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < T; ++j)
            if (rng.bernoulli(params.eps)) {
                a.noise.insert({i, j});
                b.noise.insert({i, j});
            }
    const double shift_scale = std::sqrt((T - 1.0) / T);
    const double eta = params.eta();
    for (int j = 0; j < T; ++j) {
        const double base_a = shift_scale * a.deltas[j] + a.b * eta;
        const double base_b = shift_scale * b.deltas[j] + b.b * eta;
        for (int i = 0; i < k; ++i) {
            double va = base_a, vb = base_b;
            if (a.noise.count({i, j})) {
                const auto p = paired_gaussian_discrete(rng, discretize_n);
                va = p.gauss;
                vb = p.discrete;
            }
            const std::size_t at = static_cast<std::size_t>(a.vertices[j]) * k + i;
            a.y[at] += va;
            b.y[at] += vb;
        }
    }
    return {std::move(a), std::move(b)};
}

P0Sample sample_p0(int k, double eta, double eps, Rng& rng) {
    if (k < 1) throw InvalidInputError("k must be >= 1");
    P0Sample s;
    s.b = rng.rademacher();
    s.y.resize(k);
    for (int i = 0; i < k; ++i)
        if (rng.bernoulli(eps)) s.noise.insert(i);
    for (int i = 0; i < k; ++i) s.y[i] = s.noise.count(i) ? rng.normal() : s.b * eta;
    return s;
}

std::vector<double> FoldingBasis::fold(const std::vector<double>& y) const {
    if (static_cast<int>(y.size()) != dim) throw DimensionMismatchError("fold: bad point dimension");
    std::vector<double> out(basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
        double s = 0.0;
        const auto& row = basis[r];
        for (int c = 0; c < dim; ++c) s += row[c] * y[c];
        out[r] = s;
    }
    return out;
}

std::vector<double> FoldingBasis::unfold(const std::vector<double>& c) const {
    if (c.size() != basis.size()) throw DimensionMismatchError("unfold: bad coordinate count");
    std::vector<double> out(dim, 0.0);
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (int col = 0; col < dim; ++col) out[col] += basis[r][col] * c[r];
    return out;
}

FoldingBasis build_folding_basis(const LabelCoverInstance& inst, double rank_tol) {
    inst.validate();
    FoldingBasis fb;
    fb.nv = inst.nv;
    fb.k = inst.k;
    fb.dim = inst.nv * inst.k;
    for (const auto& e : inst.edges) {
        for (int ell = 0; ell < inst.L; ++ell) {
            std::vector<std::pair<int, double>> h;
            for (int i = 0; i < inst.k; ++i) {
                if (e.pi_u[i] == ell) h.emplace_back(e.u * inst.k + i, 1.0);
                if (e.pi_w[i] == ell) h.emplace_back(e.w * inst.k + i, -1.0);
            }
            if (!h.empty()) fb.constraints.push_back(std::move(h));
        }
    }
    const int m = static_cast<int>(fb.constraints.size());
    if (m == 0) {
        fb.basis.assign(fb.dim, std::vector<double>(fb.dim, 0.0));
        for (int i = 0; i < fb.dim; ++i) fb.basis[i][i] = 1.0;
        return fb;
    }
    Eigen::MatrixXd ht = Eigen::MatrixXd::Zero(fb.dim, m);
    for (int c = 0; c < m; ++c)
        for (const auto& [row, val] : fb.constraints[c]) ht(row, c) = val;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ht);
    qr.setThreshold(rank_tol);
    const int rank = static_cast<int>(qr.rank());
    const Eigen::MatrixXd q = qr.householderQ();
    fb.basis.reserve(fb.dim - rank);
    for (int c = rank; c < fb.dim; ++c) {
        std::vector<double> row(fb.dim);
        for (int r = 0; r < fb.dim; ++r) row[r] = q(r, c);
        fb.basis.push_back(std::move(row));
    }
    return fb;
}

namespace {

std::pair<std::vector<int>, std::vector<int>> preimages(const LcEdge& e, int ell, int k) {
    std::vector<int> pu, pw;
    for (int i = 0; i < k; ++i) {
        if (e.pi_u[i] == ell) pu.push_back(i);
        if (e.pi_w[i] == ell) pw.push_back(i);
    }
    return {pu, pw};
}

} // namespace

bool check_valid_constraint(const PolyD& q, const LabelCoverInstance& inst, int edge_index, int ell,
                            const Monomial& m, double tol) {
    if (edge_index < 0 || edge_index >= static_cast<int>(inst.edges.size()))
        throw InvalidInputError("edge index out of range");
    if (ell < 0 || ell >= inst.L) throw InvalidInputError("answer out of range");
    const auto& e = inst.edges[edge_index];
    const auto [pu, pw] = preimages(e, ell, inst.k);
    for (int i : pu)
        if (m.contains(VarId::point(e.u, i)))
            throw InvalidInputError("monomial touches the u-side preimage");
    for (int i : pw)
        if (m.contains(VarId::point(e.w, i)))
            throw InvalidInputError("monomial touches the w-side preimage");
    double su = 0.0, sw = 0.0;
    for (int i : pu) su += q.coefficient(m.times(VarId::point(e.u, i)));
    for (int i : pw) sw += q.coefficient(m.times(VarId::point(e.w, i)));
    return std::abs(su - sw) <= tol;
}

std::vector<FoldingViolation> folding_violations(const PolyD& q, const LabelCoverInstance& inst,
                                                 double tol) {
    std::vector<FoldingViolation> out;
    for (int ei = 0; ei < static_cast<int>(inst.edges.size()); ++ei) {
        const auto& e = inst.edges[ei];
        for (int ell = 0; ell < inst.L; ++ell) {
            const auto [pu, pw] = preimages(e, ell, inst.k);
            auto in_preimage = [&](const VarId& v) {
                if (v.kind != VarKind::Point) return false;
                if (v.a == e.u)
                    for (int i : pu)
                        if (v.b == i) return true;
                if (v.a == e.w)
                    for (int i : pw)
                        if (v.b == i) return true;
                return false;
            };
            std::set<Monomial, GradedLexLess> candidates;
            for (const auto& [mon, c] : q.terms())
                for (const auto& [v, exp] : mon.factors())
                    if (in_preimage(v)) candidates.insert(mon.divided_by(v, 1));
            for (const auto& m : candidates) {
                if (m.any_var(in_preimage)) continue; // identity applies only off the preimages
                double su = 0.0, sw = 0.0;
                for (int i : pu) su += q.coefficient(m.times(VarId::point(e.u, i)));
                for (int i : pw) sw += q.coefficient(m.times(VarId::point(e.w, i)));
                if (std::abs(su - sw) > tol) out.push_back({ei, ell, m, std::abs(su - sw)});
            }
        }
    }
    return out;
}

EmitResult emit_instance(const LabelCoverInstance& inst, const TestParams& params,
                         const EmitOptions& options) {
    inst.validate();
    if (inst.k != params.k) throw InvalidInputError("instance k differs from params k");
    if (options.n_points < 1) throw InvalidInputError("n_points must be >= 1");
    if (options.n_points > (1ll << 32)) throw InvalidInputError("n_points too large");
    if (options.stream >= (1ull << 32)) throw InvalidInputError("stream id too large");

    FoldingBasis fb;
    if (options.fold) fb = build_folding_basis(inst);
    const std::size_t out_dim =
        options.fold ? static_cast<std::size_t>(fb.dim_f()) : static_cast<std::size_t>(inst.nv) * inst.k;

    Dataset ds;
    ds.dim = out_dim;
    ds.flags = (options.fold ? Dataset::kFlagFolded : 0u) |
               (params.discretize_n ? Dataset::kFlagDiscretized : 0u);
    ds.values.assign(out_dim * static_cast<std::size_t>(options.n_points), 0.0);
    ds.signs.assign(static_cast<std::size_t>(options.n_points), 0);

    auto fill_range = [&](long long lo, long long hi) {
        for (long long idx = lo; idx < hi; ++idx) {
            Rng rng(options.seed, (options.stream << 32) | static_cast<std::uint64_t>(idx));
            const auto s = sample_basic_test(inst.nv, params, rng);
            const std::vector<double>& row = options.fold ? fb.fold(s.y) : s.y;
            std::copy(row.begin(), row.end(), ds.values.begin() + idx * static_cast<long long>(out_dim));
            ds.signs[idx] = static_cast<std::int8_t>(s.b);
        }
    };
    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        fill_range(0, options.n_points);
    } else {
        std::vector<std::thread> pool;
        const long long chunk = (options.n_points + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long long lo = t * chunk;
            const long long hi = std::min<long long>(options.n_points, lo + chunk);
            if (lo < hi) pool.emplace_back(fill_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    json manifest;
    manifest["tool"] = "ptfhard";
    manifest["tool_version"] = kVersion;
    manifest["command"] = "reduce";
    manifest["seed"] = options.seed;
    manifest["stream"] = options.stream;
    manifest["n_points"] = options.n_points;
    manifest["fold"] = options.fold;
    manifest["dim"] = out_dim;
    manifest["instance_hash"] = "fnv1a64:" + std::to_string(fnv1a64(instance_to_json(inst)));
    json p;
    p["d"] = params.d;
    p["xi"] = params.xi;
    p["k"] = params.k;
    p["T"] = params.T;
    p["eps"] = params.eps;
    p["log_eta"] = params.log_eta;
    p["eta_used"] = params.eta();
    p["eta_override"] = params.eta_override ? json(*params.eta_override) : json(nullptr);
    p["log_rho"] = params.log_rho;
    p["discretize_n"] = params.discretize_n ? json(*params.discretize_n) : json(nullptr);
    manifest["params"] = p;

    EmitResult res;
    res.dataset = std::move(ds);
    res.manifest_json = manifest.dump(2) + "\n";
    return res;
}

} // namespace ptfhard
