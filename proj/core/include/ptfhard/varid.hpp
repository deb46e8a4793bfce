#pragma once

#include "ptfhard/errors.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace ptfhard {

// Variable universe. All indices are 0-based.
//   Point    Y(v,i)  coordinate i of vertex v in a dataset point
//   Block    B(i,j)  coordinate i of test block j
//   W        W(i,j)  block-rotated coordinate i of block j (i = 0 is the mean row)
//   U        U(t)    cross-block rotated coordinate (t = 0 is the mean row)
//   Z        Z(i,j)  noisy coordinate i of block j, treated as an independent Gaussian
//   Abstract X(n,i)  free symbol n with index i, for generic algebra
enum class VarKind : std::uint8_t { Point = 0, Block = 1, W = 2, U = 3, Z = 4, Abstract = 5 };

struct VarId {
    VarKind kind{VarKind::Abstract};
    std::int32_t a{0};
    std::int32_t b{0};

    friend auto operator<=>(const VarId&, const VarId&) = default;

    static VarId point(int v, int i) { return make(VarKind::Point, v, i); }
    static VarId block(int i, int j) { return make(VarKind::Block, i, j); }
    static VarId w(int i, int j) { return make(VarKind::W, i, j); }
    static VarId u(int t) { return make(VarKind::U, t, 0); }
    static VarId z(int i, int j) { return make(VarKind::Z, i, j); }
    static VarId abstract(int name, int index = 0) { return make(VarKind::Abstract, name, index); }

    std::string str() const;

  private:
    static VarId make(VarKind k, int a, int b) {
        if (a < 0 || b < 0) throw InvalidInputError("variable index out of range");
        return VarId{k, a, b};
    }
};

std::string var_to_token(const VarId& v);
VarId var_from_token(const std::string& tok);

inline std::string VarId::str() const { return var_to_token(*this); }

} // namespace ptfhard
