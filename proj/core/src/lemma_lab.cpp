#include "ptfhard/lemma_lab.hpp"

#include "ptfhard/errors.hpp"
#include "ptfhard/gauss.hpp"
#include "ptfhard/hermite.hpp"
#include "ptfhard/poly_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <tuple>

namespace ptfhard {

using nlohmann::json;

std::string LemmaReport::to_json() const {
    json j;
    j["lemma"] = lemma;
    j["verdict"] = verdict;
    j["trials"] = trials;
    j["violations"] = violations;
    j["seed"] = seed;
    j["params"] = params;
    j["stats"] = stats;
    j["notes"] = notes;
    if (!witness.empty()) j["witness"] = witness;
    return j.dump(2) + "\n";
}

namespace {

Rational pow_rational(Rational base, long long e) {
    Rational r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<Monomial> monomials_up_to(const std::vector<VarId>& vars, int max_degree) {
    std::vector<Monomial> out{Monomial{}};
    std::vector<std::size_t> last{0};
    std::size_t lo = 0;
    std::size_t hi = out.size();
    for (int deg = 1; deg <= max_degree; ++deg) {
        for (std::size_t t = lo; t < hi; ++t)
            for (std::size_t v = last[t]; v < vars.size(); ++v) {
                out.push_back(out[t].times(vars[v], 1));
                last.push_back(v);
            }
        lo = hi;
        hi = out.size();
    }
    return out;
}

template <class C>
Polynomial<C> divide_once(const Polynomial<C>& p, VarId v) {
    Polynomial<C> q;
    for (const auto& [m, c] : p.terms()) q.add_term(m.divided_by(v, 1), c);
    return q;
}

template <class C>
Polynomial<C> sum_of_vars(const std::vector<VarId>& vars) {
    Polynomial<C> s;
    for (const VarId& v : vars) s.add_term(Monomial(v), C(1));
    return s;
}

std::vector<VarId> w_vars(int T) {
    std::vector<VarId> vs;
    for (int j = 0; j < T; ++j) vs.push_back(VarId::w(0, j));
    return vs;
}

std::vector<VarId> u_vars(int T) {
    std::vector<VarId> vs;
    for (int t = 0; t < T; ++t) vs.push_back(VarId::u(t));
    return vs;
}

void require_vars(const PolyQ& p, const std::vector<VarId>& allowed, const char* what) {
    const std::set<VarId> ok(allowed.begin(), allowed.end());
    for (const VarId& v : p.vars())
        if (ok.count(v) == 0)
            throw InvalidInputError(std::string(what) + ": unexpected variable " + v.str());
}

} // namespace

PolyQ random_rational_poly(const std::vector<VarId>& vars, int max_degree, Rng& rng) {
    PolyQ p;
    if (max_degree < 0) return p;
    for (const Monomial& m : monomials_up_to(vars, max_degree)) {
        if (!rng.bernoulli(0.5)) continue;
        const long long num = 1 + static_cast<long long>(rng.uniform_int(100));
        const long long den = 1 + static_cast<long long>(rng.uniform_int(16));
        const long long sign = rng.rademacher();
        p.add_term(m, Rational(sign * num, den));
    }
    return p;
}

PolyD to_double_poly(const PolyQ& p) {
    PolyD out;
    for (const auto& [m, c] : p.terms()) out.add_term(m, CoeffTraits<Rational>::to_double(c));
    return out;
}

LemmaReport verify_robust_polynomial(const PolyQ& s, int d, int T) {
    if (T <= 2 * d) throw InvalidInputError("need T > 2d");
    if (!s.is_zero() && s.degree() > d) throw InvalidInputError("degree of S exceeds d");
    const std::vector<VarId> vars = w_vars(T);
    require_vars(s, vars, "robust-polynomial");

    LemmaReport rep;
    rep.lemma = "robust-poly";
    rep.params = {{"d", double(d)}, {"T", double(T)}};
    if (s.is_zero()) {
        rep.notes.push_back("zero polynomial: vacuous");
        return rep;
    }

    const Rational s_mass = s.mon_norm2_sq();
    const Rational bound_sq = pow_rational(Rational(1, 20LL * d * T), 2 * ipow(3, d));
    const PolyQ total = sum_of_vars<Rational>(vars);
    DegreeCapGuard<Rational> guard(std::max(32, 2 * d + 2));
    const PolyQ q = total * s;

    int qualifying = 0;
    for (int j = 0; j < T; ++j) {
        const VarId wj = vars[j];
        auto qparts = q.partition_by_degree_in(wj);
        auto sparts = s.partition_by_degree_in(wj);
        const PolyQ qj1 = qparts.count(1) ? qparts[1] : PolyQ{};
        const PolyQ sj0 = sparts.count(0) ? sparts[0] : PolyQ{};
        const PolyQ sj1 = sparts.count(1) ? divide_once(sparts[1], wj) : PolyQ{};
        std::vector<VarId> others;
        for (int l = 0; l < T; ++l)
            if (l != j) others.push_back(vars[l]);
        const PolyQ expect = PolyQ(Monomial(wj)) * (sj0 + sj1 * sum_of_vars<Rational>(others));
        if (!(qj1 == expect)) {
            rep.verdict = "violated";
            rep.witness = poly_to_text(s);
            rep.notes.push_back("linear-slice identity failed at j=" + std::to_string(j));
            return rep;
        }
        if (qj1.mon_norm2_sq() >= bound_sq * s_mass) ++qualifying;
    }
    rep.stats["qualifying"] = qualifying;
    rep.stats["needed"] = T / 2.0;
    rep.stats["bound"] = std::sqrt(CoeffTraits<Rational>::to_double(bound_sq));
    if (2 * qualifying < T) {
        rep.verdict = "violated";
        rep.witness = poly_to_text(s);
        rep.notes.push_back("fewer than T/2 qualifying variables");
    }
    return rep;
}

namespace {

// Slices of a polynomial over X, Y, Z used by the coefficient matching:
// the X and Z linear coefficients, the pure-Z part of degree >= 2 divided
// by Z^2, and the Y^1 Z^(>=1) part divided by YZ.
struct DeltaParts {
    Rational x;
    Rational z;
    PolyQ z2;
    PolyQ yz;
};

DeltaParts extract_delta_parts(const PolyQ& p) {
    const VarId X = varred_x();
    const VarId Y = varred_y();
    const VarId Z = varred_z();
    DeltaParts out;
    out.x = p.coefficient(Monomial(X));
    out.z = p.coefficient(Monomial(Z));
    for (const auto& [m, c] : p.terms()) {
        const int dx = m.degree_in(X);
        const int dy = m.degree_in(Y);
        const int dz = m.degree_in(Z);
        if (dx == 0 && dy == 0 && dz >= 2 && dz == m.degree())
            out.z2.add_term(m.divided_by(Z, 2), c);
        if (dx == 0 && dy == 1 && dz >= 1 && dy + dz == m.degree())
            out.yz.add_term(m.divided_by(Y, 1).divided_by(Z, 1), c);
    }
    return out;
}

bool degree_at_most(const PolyQ& p, int d) { return p.is_zero() || p.degree() <= std::max(d, 0); }

} // namespace

VariableRemovalInstance random_varred_instance(int d, const Rational& a, Rng& rng) {
    if (d < 1) throw InvalidInputError("need d >= 1");
    const VarId X = varred_x();
    const VarId Y = varred_y();
    const VarId Z = varred_z();
    VariableRemovalInstance inst;
    inst.a = a;
    inst.d = d;
    inst.s1 = random_rational_poly({Y, Z}, d - 1, rng);
    inst.s2 = random_rational_poly({X, Z}, d - 1, rng);
    inst.r1 = random_rational_poly({X, Y, Z}, d - 2, rng);
    inst.r2 = random_rational_poly({X, Y, Z}, d - 2, rng);
    inst.dx = random_rational_poly({X, Y, Z}, d, rng);

    DegreeCapGuard<Rational> guard(std::max(32, d + 2));
    const PolyQ ax = PolyQ(Monomial(X), a);
    const PolyQ ay = PolyQ(Monomial(Y), a);
    const PolyQ yp = PolyQ(Monomial(Y));
    const PolyQ xp = PolyQ(Monomial(X));
    const PolyQ zp = PolyQ(Monomial(Z));
    const PolyQ x2 = PolyQ(Monomial(X, 2));
    const PolyQ y2 = PolyQ(Monomial(Y, 2));
    inst.dy = (ax - yp - zp) * inst.s1 + inst.dx + x2 * inst.r1 - (ay - xp - zp) * inst.s2 -
              y2 * inst.r2;
    return inst;
}

VariableRemovalInstance zero_delta_varred_instance(int d, const Rational& a, Rng& rng) {
    if (d < 1) throw InvalidInputError("need d >= 1");
    if (a == Rational(-1)) throw InvalidInputError("a must not be -1");
    const VarId X = varred_x();
    const VarId Y = varred_y();
    const VarId Z = varred_z();
    VariableRemovalInstance inst;
    inst.a = a;
    inst.d = d;

    const PolyQ s1_lin = random_rational_poly({Z}, d - 2, rng);       // coefficient of Y
    const PolyQ s1_quad = random_rational_poly({Y, Z}, d - 3, rng);   // coefficient of Y^2
    const PolyQ s2_quad = random_rational_poly({X, Z}, d - 3, rng);   // coefficient of X^2

    DegreeCapGuard<Rational> guard(std::max(32, d + 2));
    const PolyQ zp = PolyQ(Monomial(Z));
    const PolyQ s0 = Rational(-1) / (a + 1) * (zp * s1_lin);
    inst.s1 = s0 + PolyQ(Monomial(Y)) * s1_lin + PolyQ(Monomial(Y, 2)) * s1_quad;
    inst.s2 = s0 + PolyQ(Monomial(X)) * s1_lin + PolyQ(Monomial(X, 2)) * s2_quad;
    const PolyQ ax = PolyQ(Monomial(X), a);
    const PolyQ ay = PolyQ(Monomial(Y), a);
    // the linear slice leaves the residual s1_lin*(X^2 - Y^2); fold it into the quotients
    inst.r1 = (ay - PolyQ(Monomial(X)) - zp) * s2_quad - s1_lin;
    inst.r2 = (ax - PolyQ(Monomial(Y)) - zp) * s1_quad - s1_lin;
    return inst;
}

LemmaReport verify_variable_removal(const VariableRemovalInstance& inst) {
    const VarId X = varred_x();
    const VarId Y = varred_y();
    const VarId Z = varred_z();
    const int d = inst.d;
    if (d < 1) throw InvalidInputError("need d >= 1");
    if (inst.a < Rational(1)) throw InvalidInputError("need a >= 1");
    require_vars(inst.s1, {Y, Z}, "S1");
    require_vars(inst.s2, {X, Z}, "S2");
    for (const auto* p : {&inst.r1, &inst.r2, &inst.dx, &inst.dy})
        require_vars(*p, {X, Y, Z}, "instance");
    if (!degree_at_most(inst.s1, d - 1) || !degree_at_most(inst.s2, d - 1) ||
        !degree_at_most(inst.r1, d - 2) || !degree_at_most(inst.r2, d - 2) ||
        !degree_at_most(inst.dx, d) || !degree_at_most(inst.dy, d))
        throw InvalidInputError("instance degrees violate the hypothesis");

    DegreeCapGuard<Rational> guard(std::max(32, d + 2));
    const PolyQ xp = PolyQ(Monomial(X));
    const PolyQ yp = PolyQ(Monomial(Y));
    const PolyQ zp = PolyQ(Monomial(Z));
    const PolyQ lhs = (inst.a * xp - yp - zp) * inst.s1 + inst.dx + PolyQ(Monomial(X, 2)) * inst.r1;
    const PolyQ rhs = (inst.a * yp - xp - zp) * inst.s2 + inst.dy + PolyQ(Monomial(Y, 2)) * inst.r2;
    if (!(lhs == rhs)) throw InvalidInputError("identity hypothesis violated");

    LemmaReport rep;
    rep.lemma = "var-removal";
    rep.params = {{"d", double(d)}, {"a", CoeffTraits<Rational>::to_double(inst.a)}};

    auto slices = [&](const PolyQ& s, VarId head) {
        auto parts = s.partition_by_degree_in(head);
        const Rational cst = s.coefficient(Monomial{});
        PolyQ c_poly;
        if (parts.count(0)) {
            PolyQ tail = parts[0];
            tail.add_term(Monomial{}, -cst);
            c_poly = divide_once(tail, Z);
        }
        PolyQ b_poly = parts.count(1) ? divide_once(parts[1], head) : PolyQ{};
        PolyQ a_poly;
        for (const auto& [deg, part] : parts)
            if (deg >= 2)
                for (const auto& [m, c] : part.terms()) a_poly.add_term(m.divided_by(head, 2), c);
        return std::tuple<Rational, PolyQ, PolyQ, PolyQ>(cst, c_poly, b_poly, a_poly);
    };
    auto [d1, c1, b1, a1] = slices(inst.s1, Y);
    auto [d2, c2, b2, a2] = slices(inst.s2, X);
    (void)b2;
    (void)a2;
    const DeltaParts px = extract_delta_parts(inst.dx);
    const DeltaParts py = extract_delta_parts(inst.dy);

    std::vector<std::string> failures;
    if (!(c2 == c1 + py.z2 - px.z2)) failures.push_back("C2 matching");
    if (!(d2 == -inst.a * d1 + py.x - px.x)) failures.push_back("D2 (X-slice) matching");
    if (!(d2 == d1 + py.z - px.z)) failures.push_back("D2 (Z-slice) matching");
    if (!(d1 == Rational(-1) / (inst.a + 1) * (py.z - px.z - py.x + px.x)))
        failures.push_back("D1 formula");
    const PolyQ b1_expect =
        -((inst.a + 1) * c1 + inst.a * (py.z2 - px.z2) + py.yz - px.yz);
    if (!(b1 == b1_expect)) failures.push_back("B1 formula");

    const PolyQ c_out = -c1;
    const PolyQ delta =
        inst.s1 - ((inst.a + 1) * yp - zp) * c_out - PolyQ(Monomial(Y, 2)) * a1;
    PolyQ delta_expect = -(yp * (inst.a * (py.z2 - px.z2) + py.yz - px.yz));
    delta_expect.add_term(Monomial{}, d1);
    if (!(delta == delta_expect)) failures.push_back("Delta closed form");
    if (!degree_at_most(c_out, d - 2)) failures.push_back("deg C");
    if (!degree_at_most(a1, d - 3)) failures.push_back("deg A1");
    if (!degree_at_most(delta, d - 1)) failures.push_back("deg Delta");

    const Rational max_sq = std::max(inst.dx.mon_norm2_sq(), inst.dy.mon_norm2_sq());
    const Rational delta_sq = delta.mon_norm2_sq();
    if (delta_sq > 400 * inst.a * inst.a * max_sq) failures.push_back("norm bound");

    rep.stats["delta_mass"] = CoeffTraits<Rational>::to_double(delta_sq);
    rep.stats["error_mass"] = CoeffTraits<Rational>::to_double(max_sq);
    if (!failures.empty()) {
        rep.verdict = "violated";
        std::ostringstream os;
        os << "# failed:";
        for (const auto& f : failures) os << ' ' << f;
        os << "\n# S1\n" << poly_to_text(inst.s1) << "# S2\n" << poly_to_text(inst.s2) << "# DX\n"
           << poly_to_text(inst.dx) << "# DY\n" << poly_to_text(inst.dy);
        rep.witness = os.str();
        for (const auto& f : failures) rep.notes.push_back(f);
    }
    return rep;
}

LemmaReport verify_lower_bound(const PolyQ& p, int d, int T) {
    if (T <= d) throw InvalidInputError("need T > d");
    if (d < 1 || d > 16) throw InvalidInputError("need 1 <= d <= 16");
    if (p.is_zero()) throw InvalidInputError("need nonzero P");
    if (p.degree() > d) throw InvalidInputError("degree of P exceeds d");
    const std::vector<VarId> vars = w_vars(T);
    require_vars(p, vars, "lower-bound");

    LemmaReport rep;
    rep.lemma = "lower-bound";
    rep.params = {{"d", double(d)}, {"T", double(T)}};

    const Rational p_mass = p.mon_norm2_sq();
    const Rational eta_sq = pow_rational(Rational(1, 4), 2LL << d); // (4^{-2^d})^2
    bool found = false;
    std::vector<Rational> r_mass(T);
    for (int j = 0; j < T; ++j) {
        auto [quot, rem] = p.split_quadratic(vars[j]);
        r_mass[j] = rem.mon_norm2_sq();
        if (r_mass[j] > eta_sq * p_mass) found = true;
    }
    if (!found) {
        rep.verdict = "violated";
        rep.witness = poly_to_text(p);
        rep.notes.push_back("no variable leaves a significant square-free slice");
    }
    rep.stats["eta_mass"] = std::sqrt(CoeffTraits<Rational>::to_double(eta_sq));

    // chain probe: while every prefix slice is small, the remainder of P
    // after factoring out W_0^2..W_{j-1}^2 must stay small as well
    int chain_checked = 0;
    for (int j = 1; j <= std::min(d, T); ++j) {
        bool prefix_small = true;
        for (int i = 0; i < j; ++i)
            if (r_mass[i] > eta_sq * p_mass) prefix_small = false;
        if (!prefix_small) break;
        PolyQ lj;
        for (const auto& [m, c] : p.terms()) {
            bool divisible = true;
            for (int i = 0; i < j; ++i)
                if (m.degree_in(vars[i]) < 2) divisible = false;
            if (!divisible) lj.add_term(m, c);
        }
        const Rational chain_bound = 16 * pow_rational(Rational(1, 4), 1LL << (d - j + 2));
        ++chain_checked;
        if (lj.mon_norm2_sq() > chain_bound * p_mass) {
            rep.verdict = "violated";
            rep.witness = poly_to_text(p);
            rep.notes.push_back("chain bound failed at step " + std::to_string(j));
            break;
        }
    }
    rep.stats["chain_checked"] = chain_checked;
    return rep;
}

LemmaReport verify_coeff_bounds(const PolyD& q, int d, int T, double eta) {
    if (d < 1) throw InvalidInputError("need d >= 1");
    if (T < 2) throw InvalidInputError("need T >= 2");
    if (!q.is_zero() && q.degree() > d) throw InvalidInputError("degree of Q exceeds d");
    for (const VarId& v : q.vars())
        if (v.kind != VarKind::U || v.a >= T)
            throw InvalidInputError("coeff-bounds expects U variables");

    LemmaReport rep;
    rep.lemma = "coeff-bounds";
    rep.params = {{"d", double(d)}, {"T", double(T)}, {"eta", eta}};

    auto gaussian_l2 = [](const PolyD& p) {
        const std::set<VarId> vars = p.vars();
        return l2_norm(to_hermite(p, vars));
    };

    double l2_sq = 0;
    for (double b : {1.0, -1.0}) {
        const std::map<VarId, PolyD> bind{
            {VarId::u(0), PolyD::constant(b * eta * std::sqrt(double(T)))}};
        const double l = gaussian_l2(q.substitute(bind));
        l2_sq += 0.5 * l * l;
    }
    const double l2 = std::sqrt(l2_sq);

    const auto utr = build_u_transform(T);
    const std::vector<VarId> wv = w_vars(T);
    std::map<VarId, PolyD> to_w;
    for (int t = 0; t < T; ++t) to_w.emplace(VarId::u(t), utr.forward_poly(t, wv));
    const PolyD qt = q.substitute(to_w);
    const double mon2 = qt.mon_norm(2);

    const double c1 = std::pow(20.0 * d * T, 5.0 * d);
    rep.stats["l2"] = l2;
    rep.stats["mon2"] = mon2;
    rep.stats["part1_bound"] = c1 * mon2;
    bool ok = l2 <= c1 * mon2;
    if (!ok) rep.notes.push_back("part 1 failed");

    const bool u0_free = q.vars().count(VarId::u(0)) == 0;
    if (u0_free) {
        const double l2g = gaussian_l2(q);
        const double c2 = std::pow(10.0 * d * T, 7.0 * d);
        rep.stats["part2_bound"] = c2 * l2g;
        if (mon2 > c2 * l2g) {
            ok = false;
            rep.notes.push_back("part 2 failed");
        }
    } else {
        rep.notes.push_back("part 2 skipped: Q depends on U(0)");
    }
    if (!ok) {
        rep.verdict = "violated";
        rep.witness = poly_to_text(q);
    }
    return rep;
}

LemmaReport verify_mon_submult(const PolyQ& p1, const PolyQ& p2) {
    LemmaReport rep;
    rep.lemma = "mon-submult";
    DegreeCapGuard<Rational> guard(std::max(32, p1.degree() + p2.degree()));
    const Rational lhs = (p1 * p2).mon_norm2_sq();
    const Rational n1 = p1.mon_norm1();
    const Rational rhs = n1 * n1 * p2.mon_norm2_sq();
    rep.stats["product_mass"] = CoeffTraits<Rational>::to_double(lhs);
    rep.stats["bound"] = CoeffTraits<Rational>::to_double(rhs);
    if (lhs > rhs) {
        rep.verdict = "violated";
        rep.witness = "# P1\n" + poly_to_text(p1) + "# P2\n" + poly_to_text(p2);
    }
    return rep;
}

LemmaReport verify_q_decomposition(const PolyD& p, const NoiseSet& ns, double eta, int n_draws,
                                   Rng& rng) {
    const int k = ns.k();
    const int T = ns.T();
    for (const VarId& v : p.vars())
        if (v.kind != VarKind::Block || v.a >= k || v.b >= T)
            throw InvalidInputError("q-decomposition expects in-range block variables");

    LemmaReport rep;
    rep.lemma = "q-decomp";
    rep.params = {{"k", double(k)}, {"T", double(T)}, {"eta", eta}};

    // block rotations; noisy coordinates become independent Gaussians
    std::map<VarId, PolyD> to_wz;
    std::vector<LinearTransform<double>> wtr(T);
    for (int j = 0; j < T; ++j) {
        const auto& nn = ns.non_noisy(j);
        if (!nn.empty()) {
            wtr[j] = build_w_transform(static_cast<int>(nn.size()));
            std::vector<VarId> wv;
            for (int r = 0; r < wtr[j].size(); ++r) wv.push_back(VarId::w(r, j));
            for (std::size_t l = 0; l < nn.size(); ++l)
                to_wz.emplace(VarId::block(nn[l], j),
                              wtr[j].inverse_poly(static_cast<int>(l), wv));
        }
        for (int i : ns.noisy_in_block(j))
            to_wz.emplace(VarId::block(i, j), PolyD(Monomial(VarId::z(i, j))));
    }
    const PolyD in_wz = p.substitute(to_wz);

    PolyD pomit;
    PolyD rest;
    for (const auto& [m, c] : in_wz.terms()) {
        if (m.any_var([](const VarId& v) { return v.kind == VarKind::W && v.a >= 1; }))
            pomit.add_term(m, c);
        else
            rest.add_term(m, c);
    }

    // cross-block rotation of the mean rows
    const auto utr = build_u_transform(T);
    const std::vector<VarId> uv = u_vars(T);
    std::map<VarId, PolyD> to_u;
    for (int j = 0; j < T; ++j) to_u.emplace(VarId::w(0, j), utr.inverse_poly(j, uv));
    const PolyD in_u = rest.substitute(to_u);

    const VarId u0 = VarId::u(0);
    PolyD q0;
    PolyD q1;
    for (const auto& [m, c] : in_u.terms()) {
        if (m.degree_in(u0) == 0)
            q0.add_term(m, c);
        else
            q1.add_term(m.divided_by(u0, 1), c);
    }
    if (q0.vars().count(u0) > 0) throw Error("internal: Q0 not free of U(0)");

    // reassembly
    std::map<VarId, PolyD> back_u;
    const std::vector<VarId> w0v = w_vars(T);
    for (int t = 0; t < T; ++t) back_u.emplace(VarId::u(t), utr.forward_poly(t, w0v));
    std::map<VarId, PolyD> back_y;
    for (int j = 0; j < T; ++j) {
        const auto& nn = ns.non_noisy(j);
        if (!nn.empty()) {
            std::vector<VarId> yv;
            for (int i : nn) yv.push_back(VarId::block(i, j));
            for (int r = 0; r < wtr[j].size(); ++r)
                back_y.emplace(VarId::w(r, j), wtr[j].forward_poly(r, yv));
        }
        for (int i : ns.noisy_in_block(j))
            back_y.emplace(VarId::z(i, j), PolyD(Monomial(VarId::block(i, j))));
    }
    const PolyD rebuilt =
        ((q0 + PolyD(Monomial(u0)) * q1).substitute(back_u) + pomit).substitute(back_y);
    const double gap = (rebuilt - p).mon_norm(2);
    const double scale = std::max(1.0, p.mon_norm(2));
    rep.stats["reassembly_gap"] = gap;
    rep.stats["q1_support"] = double(q1.support_size());
    bool ok = gap <= 1e-9 * scale;
    if (!ok) rep.notes.push_back("reassembly mismatch");

    // the omitted part must vanish on draws where all coordinates of a
    // block share one value
    double worst = 0;
    const double shift = std::sqrt((T - 1.0) / T);
    for (int t = 0; t < n_draws; ++t) {
        const auto deltas = sample_deltas(T, rng);
        const double b = static_cast<double>(rng.rademacher());
        std::map<VarId, double> bind;
        for (int j = 0; j < T; ++j) {
            const auto& nn = ns.non_noisy(j);
            if (!nn.empty()) {
                const std::vector<double> yv(nn.size(), shift * deltas[j] + b * eta);
                const auto wv = wtr[j].apply(yv);
                for (int r = 0; r < wtr[j].size(); ++r) bind[VarId::w(r, j)] = wv[r];
            }
            for (int i : ns.noisy_in_block(j)) bind[VarId::z(i, j)] = rng.normal();
        }
        if (!pomit.is_zero()) worst = std::max(worst, std::abs(pomit.evaluate(bind)));
    }
    rep.stats["max_omit_eval"] = worst;
    const double omit_scale = std::max(1.0, pomit.mon_norm(1));
    if (worst > 1e-9 * omit_scale) {
        ok = false;
        rep.notes.push_back("omitted part does not vanish on test draws");
    }
    if (!ok) {
        rep.verdict = "violated";
        rep.witness = poly_to_text(p);
    }
    return rep;
}

LemmaReport empirical_carbery_wright(const PolyD& p, double eps_cw, int n_samples, Rng& rng) {
    if (n_samples < 1) throw InvalidInputError("need n_samples >= 1");
    const std::set<VarId> vars = p.vars();
    const double l2 = l2_norm(to_hermite(p, vars));
    if (l2 <= 0) throw InvalidInputError("need positive l2 mass");

    LemmaReport rep;
    rep.lemma = "carbery-wright";
    rep.verdict = "inconclusive";
    rep.params = {{"eps", eps_cw}, {"n", double(n_samples)}};

    int hits = 0;
    std::map<VarId, double> bind;
    for (int t = 0; t < n_samples; ++t) {
        for (const VarId& v : vars) bind[v] = rng.normal();
        if (std::abs(p.evaluate(bind)) <= eps_cw * l2) ++hits;
    }
    const double freq = static_cast<double>(hits) / n_samples;
    const int d = p.degree();
    const double shape = d >= 1 ? d * std::pow(eps_cw, 1.0 / d) : 1.0;
    rep.stats["l2"] = l2;
    rep.stats["small_ball_prob"] = freq;
    rep.stats["shape"] = shape;
    rep.stats["ratio"] = freq / shape;
    rep.notes.push_back("constant in the O(.) unknown; ratio reported only");
    return rep;
}

LemmaReport chernoff_decoding_probe(const std::vector<double>& tensor, double eps, int trials,
                                    Rng& rng) {
    if (trials < 1) throw InvalidInputError("need trials >= 1");
    if (eps <= 0 || eps >= 1) throw InvalidInputError("need 0 < eps < 1");
    LemmaReport rep;
    rep.lemma = "chernoff-probe";
    rep.params = {{"k", double(tensor.size())}, {"eps", eps}};

    double total = 0;
    for (double c : tensor) total += c * c;
    if (total <= 0) {
        rep.verdict = "inconclusive";
        rep.notes.push_back("zero tensor: event degenerate");
        return rep;
    }
    std::vector<double> share(tensor.size());
    double sum_sq = 0;
    double max_share = 0;
    for (std::size_t i = 0; i < tensor.size(); ++i) {
        share[i] = tensor[i] * tensor[i] / total;
        sum_sq += share[i] * share[i];
        max_share = std::max(max_share, share[i]);
    }
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        double noisy = 0;
        for (std::size_t i = 0; i < share.size(); ++i)
            if (rng.bernoulli(eps)) noisy += share[i];
        if (noisy <= eps / 2) ++hits;
    }
    const double emp = static_cast<double>(hits) / trials;
    const double envelope = 2.0 * std::exp(-eps * eps / (2.0 * sum_sq));
    rep.stats["small_noisy_mass_prob"] = emp;
    rep.stats["envelope"] = envelope;
    rep.stats["max_share"] = max_share;
    rep.stats["sum_share_sq"] = sum_sq;
    if (envelope >= 1) rep.notes.push_back("envelope vacuous (spiky tensor)");
    if (emp > envelope) {
        rep.verdict = "violated";
        rep.witness = "tensor with max share " + std::to_string(max_share);
    }
    return rep;
}

namespace {

LemmaReport aggregate(const std::string& lemma, int trials, std::uint64_t seed,
                      const std::function<LemmaReport(int, Rng&)>& one) {
    LemmaReport agg;
    agg.lemma = lemma;
    agg.trials = trials;
    agg.seed = seed;
    bool any_conclusive = false;
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const LemmaReport r = one(t, rng);
        if (t == 0) {
            agg.params = r.params;
            agg.stats = r.stats;
        }
        if (r.verdict == "violated") {
            ++agg.violations;
            if (agg.witness.empty()) {
                agg.witness = "# trial " + std::to_string(t) + "\n" + r.witness;
                for (const auto& n : r.notes) agg.notes.push_back(n);
            }
        }
        if (r.verdict != "inconclusive") any_conclusive = true;
    }
    if (agg.violations > 0)
        agg.verdict = "violated";
    else if (!any_conclusive)
        agg.verdict = "inconclusive";
    agg.stats["violations"] = agg.violations;
    return agg;
}

} // namespace

std::vector<std::string> lemma_battery_ids() {
    return {"robust-poly", "var-removal", "lower-bound", "coeff-bounds",
            "mon-submult", "q-decomp",    "carbery-wright", "chernoff-probe"};
}

LemmaReport run_lemma_battery(const std::string& lemma, int trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidInputError("need trials >= 1");
    if (lemma == "robust-poly") {
        return aggregate(lemma, trials, seed, [](int, Rng& rng) {
            const int d = 2, T = 5;
            return verify_robust_polynomial(random_rational_poly(w_vars(T), d, rng), d, T);
        });
    }
    if (lemma == "var-removal") {
        return aggregate(lemma, trials, seed, [](int t, Rng& rng) {
            const int d = 3;
            const Rational a(1 + t % 3);
            const auto inst = (t % 4 == 3) ? zero_delta_varred_instance(d, a, rng)
                                           : random_varred_instance(d, a, rng);
            return verify_variable_removal(inst);
        });
    }
    if (lemma == "lower-bound") {
        return aggregate(lemma, trials, seed, [](int, Rng& rng) {
            const int d = 2, T = 3;
            PolyQ p = random_rational_poly(w_vars(T), d, rng);
            if (p.is_zero()) p.add_term(Monomial{}, Rational(1));
            return verify_lower_bound(p, d, T);
        });
    }
    if (lemma == "coeff-bounds") {
        return aggregate(lemma, trials, seed, [](int t, Rng& rng) {
            const int d = 2, T = 20;
            std::vector<VarId> vars;
            for (int i = (t % 2 == 0 ? 1 : 0); i < 6; ++i) vars.push_back(VarId::u(i));
            const PolyD q = to_double_poly(random_rational_poly(vars, d, rng));
            return verify_coeff_bounds(q, d, T, 1e-3);
        });
    }
    if (lemma == "mon-submult") {
        return aggregate(lemma, trials, seed, [](int, Rng& rng) {
            const auto vars = w_vars(3);
            return verify_mon_submult(random_rational_poly(vars, 2, rng),
                                      random_rational_poly(vars, 2, rng));
        });
    }
    if (lemma == "q-decomp") {
        return aggregate(lemma, trials, seed, [](int, Rng& rng) {
            const int k = 6, T = 10;
            std::vector<VarId> vars;
            for (int j = 0; j < T; ++j)
                for (int i = 0; i < k; ++i) vars.push_back(VarId::block(i, j));
            const PolyD p = to_double_poly(random_rational_poly(vars, 2, rng));
            const NoiseSet ns = NoiseSet::sample(k, T, 0.1, rng);
            return verify_q_decomposition(p, ns, 1e-3, 100, rng);
        });
    }
    if (lemma == "carbery-wright") {
        return aggregate(lemma, trials, seed, [](int, Rng& rng) {
            const std::vector<VarId> vars{VarId::abstract(4, 0), VarId::abstract(4, 1)};
            PolyQ p = random_rational_poly(vars, 2, rng);
            if (p.is_zero()) p.add_term(Monomial(vars[0]), Rational(1));
            PolyD pd = to_double_poly(p);
            if (pd.vars().empty()) pd += PolyD(Monomial(vars[0]));
            return empirical_carbery_wright(pd, 0.1, 2000, rng);
        });
    }
    if (lemma == "chernoff-probe") {
        return aggregate(lemma, trials, seed, [](int t, Rng& rng) {
            std::vector<double> tensor(200, 1.0);
            if (t % 2 == 1) {
                std::fill(tensor.begin(), tensor.end(), 0.0);
                tensor[0] = 1.0;
            }
            return chernoff_decoding_probe(tensor, 0.2, 2000, rng);
        });
    }
    throw InvalidInputError("unknown lemma id: " + lemma);
}

} // namespace ptfhard
