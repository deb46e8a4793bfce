#include "ptfhard/varid.hpp"

#include <cstdio>

namespace ptfhard {

namespace {

char kind_letter(VarKind k) {
    switch (k) {
        case VarKind::Point: return 'Y';
        case VarKind::Block: return 'B';
        case VarKind::W: return 'W';
        case VarKind::U: return 'U';
        case VarKind::Z: return 'Z';
        case VarKind::Abstract: return 'X';
    }
    throw InvalidInputError("bad variable kind");
}

} // namespace

std::string var_to_token(const VarId& v) {
    char buf[48];
    if (v.kind == VarKind::U)
        std::snprintf(buf, sizeof(buf), "U(%d)", v.a);
    else
        std::snprintf(buf, sizeof(buf), "%c(%d,%d)", kind_letter(v.kind), v.a, v.b);
    return buf;
}

VarId var_from_token(const std::string& tok) {
    if (tok.size() < 4 || tok[1] != '(' || tok.back() != ')')
        throw InvalidInputError("bad variable token: " + tok);
    VarKind kind;
    switch (tok[0]) {
        case 'Y': kind = VarKind::Point; break;
        case 'B': kind = VarKind::Block; break;
        case 'W': kind = VarKind::W; break;
        case 'U': kind = VarKind::U; break;
        case 'Z': kind = VarKind::Z; break;
        case 'X': kind = VarKind::Abstract; break;
        default: throw InvalidInputError("bad variable token: " + tok);
    }
    int a = 0, b = 0;
    const std::string body = tok.substr(2, tok.size() - 3);
    if (kind == VarKind::U) {
        if (std::sscanf(body.c_str(), "%d", &a) != 1)
            throw InvalidInputError("bad variable token: " + tok);
        return VarId::u(a);
    }
    if (std::sscanf(body.c_str(), "%d,%d", &a, &b) != 2)
        throw InvalidInputError("bad variable token: " + tok);
    switch (kind) {
        case VarKind::Point: return VarId::point(a, b);
        case VarKind::Block: return VarId::block(a, b);
        case VarKind::W: return VarId::w(a, b);
        case VarKind::Z: return VarId::z(a, b);
        default: return VarId::abstract(a, b);
    }
}

} // namespace ptfhard
