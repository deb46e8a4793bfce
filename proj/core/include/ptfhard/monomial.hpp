#pragma once

#include "ptfhard/varid.hpp"

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

namespace ptfhard {

// Product of variable powers. Factors are kept sorted by VarId and all
// exponents are >= 1; the empty monomial is the constant 1.
class Monomial {
  public:
    using Factor = std::pair<VarId, int>;

    Monomial() = default;
    explicit Monomial(VarId v, int exp = 1) {
        if (exp < 0) throw InvalidInputError("negative exponent");
        if (exp > 0) factors_.emplace_back(v, exp);
    }
    Monomial(std::initializer_list<Factor> fs) {
        for (const auto& [v, e] : fs) *this = times(v, e);
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& f : factors_) d += f.second;
        return d;
    }

    int degree_in(VarId v) const {
        for (const auto& f : factors_)
            if (f.first == v) return f.second;
        return 0;
    }

    bool contains(VarId v) const { return degree_in(v) > 0; }

    template <class Pred>
    bool any_var(Pred&& p) const {
        return std::any_of(factors_.begin(), factors_.end(),
                           [&](const Factor& f) { return p(f.first); });
    }

    Monomial times(VarId v, int exp = 1) const {
        if (exp < 0) throw InvalidInputError("negative exponent");
        if (exp == 0) return *this;
        Monomial r = *this;
        auto it = std::lower_bound(r.factors_.begin(), r.factors_.end(), v,
                                   [](const Factor& f, const VarId& x) { return f.first < x; });
        if (it != r.factors_.end() && it->first == v)
            it->second += exp;
        else
            r.factors_.insert(it, {v, exp});
        return r;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        r.factors_.reserve(factors_.size() + o.factors_.size());
        std::size_t i = 0, j = 0;
        while (i < factors_.size() && j < o.factors_.size()) {
            if (factors_[i].first < o.factors_[j].first)
                r.factors_.push_back(factors_[i++]);
            else if (o.factors_[j].first < factors_[i].first)
                r.factors_.push_back(o.factors_[j++]);
            else {
                r.factors_.emplace_back(factors_[i].first, factors_[i].second + o.factors_[j].second);
                ++i, ++j;
            }
        }
        for (; i < factors_.size(); ++i) r.factors_.push_back(factors_[i]);
        for (; j < o.factors_.size(); ++j) r.factors_.push_back(o.factors_[j]);
        return r;
    }

    // Removes v^exp; requires degree_in(v) >= exp.
    Monomial divided_by(VarId v, int exp) const {
        Monomial r = *this;
        for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
            if (it->first == v) {
                if (it->second < exp) throw InvalidInputError("monomial division underflow");
                it->second -= exp;
                if (it->second == 0) r.factors_.erase(it);
                return r;
            }
        }
        if (exp > 0) throw InvalidInputError("monomial division underflow");
        return r;
    }

    // Splits into (factors whose variable satisfies p, the rest).
    template <class Pred>
    std::pair<Monomial, Monomial> split(Pred&& p) const {
        Monomial in, out;
        for (const auto& f : factors_)
            (p(f.first) ? in : out).factors_.push_back(f);
        return {in, out};
    }

    friend bool operator==(const Monomial& x, const Monomial& y) { return x.factors_ == y.factors_; }

  private:
    std::vector<Factor> factors_;
};

// Graded lexicographic order: by total degree, then by factor list.
struct GradedLexLess {
    bool operator()(const Monomial& x, const Monomial& y) const {
        const int dx = x.degree(), dy = y.degree();
        if (dx != dy) return dx < dy;
        return x.factors() < y.factors();
    }
};

} // namespace ptfhard
