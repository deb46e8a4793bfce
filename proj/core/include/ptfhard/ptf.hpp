#pragma once

#include "ptfhard/dataset.hpp"
#include "ptfhard/label_cover.hpp"
#include "ptfhard/polynomial.hpp"
#include "ptfhard/reduction.hpp"

#include <optional>
#include <vector>

namespace ptfhard {

// Abstract-variable name used for bare column coordinates, e.g. the folded
// basis: coord_var(r) is column r of the dataset row.
inline constexpr int kCoordVarName = 3;
inline VarId coord_var(int r) { return VarId::abstract(kCoordVarName, r); }

// sign(P(x)) classifier. The polynomial may reference raw vertex
// coordinates Y(v,i) (column v*k+i, requires k) or bare columns via
// coord_var(r); space and dim must match the dataset it is scored on.
struct PTFHypothesis {
    enum class Space { Raw, Folded };

    PolyD poly;
    int degree = 1;
    Space space = Space::Raw;
    int dim = 0;
    int k = 0; // column stride for Y(v,i) variables; 0 when unused

    PTFHypothesis negated() const {
        PTFHypothesis h = *this;
        h.poly = -h.poly;
        return h;
    }
};

inline int sign_of(double x) { return x >= 0.0 ? 1 : -1; }

// Evaluates the polynomial on one dataset row.
double evaluate_on_row(const PTFHypothesis& h, const double* row, std::size_t dim);

// Fraction of points with sign(P(x)) equal to the stored sign.
double accuracy(const PTFHypothesis& h, const Dataset& data);

// The planted witness: sum over vertices of the coordinate picked by the
// labeling. Requires a total labeling.
PTFHypothesis dictator_linear_form(const LabelCoverInstance& inst, const Labeling& sigma);

// Same linear form as a bare polynomial over Y(v,i), for symbolic use.
PolyD dictator_polynomial(const LabelCoverInstance& inst, const Labeling& sigma);

// Rewrites a raw-space hypothesis over the folded coordinates.
PTFHypothesis to_folded(const PTFHypothesis& h, const FoldingBasis& fb);

struct FitResult {
    PTFHypothesis hypothesis;
    int n_monomials = 0;
    int rank = 0;
    bool rank_deficient = false;
};

// Diagnostic least-squares fit of the sign column by a degree-d polynomial
// over the selected columns (all columns when empty). Not a learner with
// guarantees; it probes how linearly structured a dataset is.
FitResult fit_probe(const Dataset& data, int degree,
                    const std::vector<int>& columns = {});

} // namespace ptfhard
