#pragma once

#include "ptfhard/polynomial.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace ptfhard {

// Text form: one term per line in graded-lex order,
//   <coeff>  <var>^<exp> <var>^<exp> ...
// with two spaces after the coefficient and nothing after it for the
// constant term. Blank lines and lines starting with '#' are skipped.
template <class C>
std::string poly_to_text(const Polynomial<C>& p) {
    std::ostringstream os;
    for (const auto& [m, c] : p.terms()) {
        os << CoeffTraits<C>::to_string(c);
        if (!m.is_one()) {
            os << ' ';
            for (const auto& [v, e] : m.factors()) os << ' ' << var_to_token(v) << '^' << e;
        }
        os << '\n';
    }
    return os.str();
}

template <class C>
Polynomial<C> poly_from_text(const std::string& text) {
    Polynomial<C> p;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string coeff_tok;
        if (!(ls >> coeff_tok) || coeff_tok[0] == '#') continue;
        Monomial m;
        std::string factor;
        while (ls >> factor) {
            auto caret = factor.rfind('^');
            if (caret == std::string::npos)
                throw InvalidInputError("bad term factor: " + factor);
            const VarId v = var_from_token(factor.substr(0, caret));
            const int e = std::stoi(factor.substr(caret + 1));
            m = m.times(v, e);
        }
        p.add_term(m, CoeffTraits<C>::parse(coeff_tok));
    }
    return p;
}

} // namespace ptfhard
