#include "ptfhard/ptf.hpp"

#include "ptfhard/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace ptfhard {

namespace {

int column_of(const VarId& v, int k, std::size_t dim) {
    int col;
    if (v.kind == VarKind::Point) {
        if (k <= 0) throw DimensionMismatchError("hypothesis uses Y(v,i) but has no k");
        col = v.a * k + v.b;
    } else if (v.kind == VarKind::Abstract && v.a == kCoordVarName) {
        col = v.b;
    } else {
        throw DimensionMismatchError("hypothesis variable is not a dataset coordinate: " + v.str());
    }
    if (col < 0 || static_cast<std::size_t>(col) >= dim)
        throw DimensionMismatchError("hypothesis coordinate out of range: " + v.str());
    return col;
}

} // namespace

double evaluate_on_row(const PTFHypothesis& h, const double* row, std::size_t dim) {
    double total = 0.0;
    for (const auto& [m, c] : h.poly.terms()) {
        double t = c;
        for (const auto& [v, e] : m.factors()) {
            const double x = row[column_of(v, h.k, dim)];
            for (int i = 0; i < e; ++i) t *= x;
        }
        total += t;
    }
    return total;
}

double accuracy(const PTFHypothesis& h, const Dataset& data) {
    if (data.size() == 0) throw InvalidInputError("empty dataset");
    if (static_cast<std::size_t>(h.dim) != data.dim)
        throw DimensionMismatchError("hypothesis dim " + std::to_string(h.dim) +
                                     " != dataset dim " + std::to_string(data.dim));
    const bool want_folded = h.space == PTFHypothesis::Space::Folded;
    if (want_folded != data.folded())
        throw DimensionMismatchError("hypothesis and dataset coordinate spaces differ");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (sign_of(evaluate_on_row(h, data.row(i), data.dim)) == data.signs[i]) ++hits;
    return static_cast<double>(hits) / data.size();
}

PolyD dictator_polynomial(const LabelCoverInstance& inst, const Labeling& sigma) {
    if (static_cast<int>(sigma.size()) != inst.nv)
        throw InvalidInputError("labeling size != vertex count");
    PolyD p;
    for (int v = 0; v < inst.nv; ++v) {
        if (sigma[v] < 0 || sigma[v] >= inst.k)
            throw InvalidInputError("dictator form needs a total labeling");
        p.add_term(Monomial(VarId::point(v, sigma[v])), 1.0);
    }
    return p;
}

PTFHypothesis dictator_linear_form(const LabelCoverInstance& inst, const Labeling& sigma) {
    PTFHypothesis h;
    h.poly = dictator_polynomial(inst, sigma);
    h.degree = 1;
    h.space = PTFHypothesis::Space::Raw;
    h.dim = inst.nv * inst.k;
    h.k = inst.k;
    return h;
}

PTFHypothesis to_folded(const PTFHypothesis& h, const FoldingBasis& fb) {
    if (h.space != PTFHypothesis::Space::Raw) throw InvalidInputError("hypothesis already folded");
    if (h.dim != fb.dim) throw DimensionMismatchError("folding basis dim mismatch");
    std::map<VarId, PolyD> bindings;
    for (const VarId& v : h.poly.vars()) {
        const int col = column_of(v, h.k, fb.dim);
        PolyD image;
        for (int r = 0; r < fb.dim_f(); ++r) image.add_term(Monomial(coord_var(r)), fb.basis[r][col]);
        bindings.emplace(v, std::move(image));
    }
    PTFHypothesis out;
    out.poly = h.poly.substitute(bindings);
    out.degree = h.degree;
    out.space = PTFHypothesis::Space::Folded;
    out.dim = fb.dim_f();
    out.k = 0;
    return out;
}

namespace {

void enumerate_monomials(const std::vector<int>& cols, int degree, std::vector<std::vector<int>>& out,
                         std::vector<int>& cur, std::size_t start) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == degree) return;
    for (std::size_t i = start; i < cols.size(); ++i) {
        cur.push_back(cols[i]);
        enumerate_monomials(cols, degree, out, cur, i);
        cur.pop_back();
    }
}

} // namespace

FitResult fit_probe(const Dataset& data, int degree, const std::vector<int>& columns) {
    if (degree < 0) throw InvalidInputError("degree must be >= 0");
    if (data.size() == 0) throw InvalidInputError("empty dataset");
    std::vector<int> cols = columns;
    if (cols.empty())
        for (std::size_t c = 0; c < data.dim; ++c) cols.push_back(static_cast<int>(c));
    for (int c : cols)
        if (c < 0 || static_cast<std::size_t>(c) >= data.dim)
            throw InvalidInputError("selected column out of range");

    std::vector<std::vector<int>> mons;
    std::vector<int> cur;
    enumerate_monomials(cols, degree, mons, cur, 0);
    const std::size_t m = mons.size();
    if (m > 20000) throw InvalidInputError("too many monomials for the probe");
    if (data.size() < m) throw InvalidInputError("need at least as many points as monomials");

    // normal equations; rank checked on the (m x m) Gram matrix
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd feat(m);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double* row = data.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            double t = 1.0;
            for (int c : mons[j]) t *= row[c];
            feat(j) = t;
        }
        gram.selfadjointView<Eigen::Lower>().rankUpdate(feat, 1.0);
        rhs += static_cast<double>(data.signs[i]) * feat;
    }
    gram = gram.selfadjointView<Eigen::Lower>();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
    qr.setThreshold(1e-9);
    const Eigen::VectorXd coef = qr.solve(rhs);

    FitResult res;
    res.n_monomials = static_cast<int>(m);
    res.rank = static_cast<int>(qr.rank());
    res.rank_deficient = res.rank < static_cast<int>(m);
    PolyD p;
    for (std::size_t j = 0; j < m; ++j) {
        Monomial mon;
        for (int c : mons[j]) mon = mon.times(coord_var(c));
        p.add_term(mon, coef(j));
    }
    res.hypothesis.poly = std::move(p);
    res.hypothesis.degree = degree;
    res.hypothesis.space = data.folded() ? PTFHypothesis::Space::Folded : PTFHypothesis::Space::Raw;
    res.hypothesis.dim = static_cast<int>(data.dim);
    res.hypothesis.k = 0;
    return res;
}

} // namespace ptfhard
