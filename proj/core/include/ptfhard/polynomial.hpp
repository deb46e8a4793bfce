#pragma once

#include "ptfhard/coeff.hpp"
#include "ptfhard/errors.hpp"
#include "ptfhard/monomial.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace ptfhard {

struct PolyOptions {
    double zero_eps = 1e-12; // coefficients with |c| <= eps are dropped (float mode only)
    int degree_cap = 32;     // products whose degree would exceed this throw
};

// Sparse multivariate polynomial over coefficient type C (double or Rational).
// Terms are kept in graded-lex order; zero coefficients are pruned on insert.
// Values are immutable in practice: all operations return new polynomials.
template <class C>
class Polynomial {
  public:
    using Coeff = C;
    using TermMap = std::map<Monomial, C, GradedLexLess>;

    static PolyOptions& options() {
        static PolyOptions opts;
        return opts;
    }

    Polynomial() = default;
    explicit Polynomial(C c) { add_term(Monomial{}, std::move(c)); }
    explicit Polynomial(const Monomial& m, C c = C(1)) { add_term(m, std::move(c)); }

    static Polynomial var(VarId v) { return Polynomial(Monomial(v)); }
    static Polynomial constant(C c) { return Polynomial(std::move(c)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }

    int degree() const {
        // graded order: last term has the maximal degree
        return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
    }

    C coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }

    void add_term(const Monomial& m, C c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!CoeffTraits<C>::is_zero(c, options().zero_eps)) terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (CoeffTraits<C>::is_zero(it->second, options().zero_eps)) terms_.erase(it);
        }
    }

    std::set<VarId> vars() const {
        std::set<VarId> out;
        for (const auto& [m, c] : terms_)
            for (const auto& f : m.factors()) out.insert(f.first);
        return out;
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, C(-c));
        return *this;
    }
    friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
    friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }
    Polynomial operator-() const {
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, C(-c));
        return r;
    }

    Polynomial scaled(const C& s) const {
        Polynomial r;
        for (const auto& [m, c] : terms_) r.add_term(m, C(c * s));
        return r;
    }
    friend Polynomial operator*(const C& s, const Polynomial& p) { return p.scaled(s); }

    friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
        if (!x.is_zero() && !y.is_zero() && x.degree() + y.degree() > options().degree_cap)
            throw DegreeCapError("product degree " + std::to_string(x.degree() + y.degree()) +
                                 " exceeds cap " + std::to_string(options().degree_cap));
        Polynomial r;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) r.add_term(mx.times(my), C(cx * cy));
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(int e) const {
        if (e < 0) throw InvalidInputError("negative power");
        Polynomial r = constant(C(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // Replaces each bound variable by its image; unbound variables pass through.
    Polynomial substitute(const std::map<VarId, Polynomial>& bindings) const {
        std::map<std::pair<VarId, int>, Polynomial> pow_cache;
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Monomial passthrough;
            Polynomial acc = constant(c);
            for (const auto& [v, e] : m.factors()) {
                auto bit = bindings.find(v);
                if (bit == bindings.end()) {
                    passthrough = passthrough.times(v, e);
                    continue;
                }
                auto key = std::make_pair(v, e);
                auto pit = pow_cache.find(key);
                if (pit == pow_cache.end()) pit = pow_cache.emplace(key, bit->second.pow(e)).first;
                acc = acc * pit->second;
            }
            for (const auto& [am, ac] : acc.terms()) out.add_term(am.times(passthrough), ac);
        }
        return out;
    }

    Polynomial rename_vars(const std::map<VarId, VarId>& renames) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Monomial nm;
            for (const auto& [v, e] : m.factors()) {
                auto it = renames.find(v);
                nm = nm.times(it == renames.end() ? v : it->second, e);
            }
            out.add_term(nm, c);
        }
        return out;
    }

    C evaluate(const std::map<VarId, C>& bindings) const {
        C total(0);
        for (const auto& [m, c] : terms_) {
            C t = c;
            for (const auto& [v, e] : m.factors()) {
                auto it = bindings.find(v);
                if (it == bindings.end())
                    throw MissingBindingError("no binding for " + v.str());
                for (int i = 0; i < e; ++i) t *= it->second;
            }
            total += t;
        }
        return total;
    }

    // l1 / squared l2 of the coefficient vector in the monomial basis.
    C mon_norm1() const {
        C s(0);
        for (const auto& [m, c] : terms_) s += CoeffTraits<C>::abs(c);
        return s;
    }
    C mon_norm2_sq() const {
        C s(0);
        for (const auto& [m, c] : terms_) s += C(c * c);
        return s;
    }
    double mon_norm(int order) const {
        if (order == 1) return CoeffTraits<C>::to_double(mon_norm1());
        if (order == 2) return std::sqrt(CoeffTraits<C>::to_double(mon_norm2_sq()));
        throw InvalidInputError("mon_norm order must be 1 or 2");
    }

    // Groups terms by their degree in v. Keys are the degrees that occur.
    std::map<int, Polynomial> partition_by_degree_in(VarId v) const {
        std::map<int, Polynomial> parts;
        for (const auto& [m, c] : terms_) parts[m.degree_in(v)].add_term(m, c);
        return parts;
    }

    // Writes p = v^2 * quotient + remainder with deg_v(remainder) <= 1.
    std::pair<Polynomial, Polynomial> split_quadratic(VarId v) const {
        Polynomial quot, rem;
        for (const auto& [m, c] : terms_) {
            if (m.degree_in(v) >= 2)
                quot.add_term(m.divided_by(v, 2), c);
            else
                rem.add_term(m, c);
        }
        return {quot, rem};
    }

    friend bool operator==(const Polynomial& x, const Polynomial& y) { return x.terms_ == y.terms_; }

  private:
    TermMap terms_;
};

using PolyD = Polynomial<double>;
using PolyQ = Polynomial<Rational>;

template <class C>
class DegreeCapGuard {
  public:
    explicit DegreeCapGuard(int cap) : saved_(Polynomial<C>::options().degree_cap) {
        Polynomial<C>::options().degree_cap = cap;
    }
    ~DegreeCapGuard() { Polynomial<C>::options().degree_cap = saved_; }
    DegreeCapGuard(const DegreeCapGuard&) = delete;
    DegreeCapGuard& operator=(const DegreeCapGuard&) = delete;

  private:
    int saved_;
};

} // namespace ptfhard
