#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "param_poly.hpp"

namespace gbgw {

// Bounds of a known region; +-INF mean the region is unbounded on that side.
inline constexpr std::int64_t INF = std::int64_t{1} << 40;

struct window_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

namespace detail {
inline std::int64_t sat_add(std::int64_t a, std::int64_t b)
{
    if (a >= INF || b >= INF)
        return INF;
    if (a <= -INF || b <= -INF)
        return -INF;
    return std::clamp(a + b, -INF, INF);
}
} // namespace detail

// Truncated Laurent series in one variable. Coefficients at exponents in [lo, hi] are exact
// (absent entries are zero); outside that range nothing is known. lo = -INF / hi = INF
// means the series is known (and stored) all the way down / up.
template <class C>
class basic_laurent {
public:
    basic_laurent() = default;
    basic_laurent(std::string var, std::int64_t lo, std::int64_t hi) : var_(std::move(var)), lo_(lo), hi_(hi)
    {
        if (lo_ > hi_)
            throw window_error("empty window for series in " + var_);
    }

    // Polynomial (fully known) series.
    static basic_laurent finite(std::string var, const std::map<int, C>& c)
    {
        basic_laurent r(std::move(var), -INF, INF);
        for (const auto& [e, v] : c)
            r.set(e, v);
        return r;
    }
    static basic_laurent monomial(std::string var, int e, C c = C(1))
    {
        basic_laurent r(std::move(var), -INF, INF);
        r.set(e, std::move(c));
        return r;
    }

    const std::string& var() const { return var_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    const std::map<int, C>& coefficients() const { return c_; }

    bool known(std::int64_t e) const { return e >= lo_ && e <= hi_; }

    const C& coeff(std::int64_t e) const
    {
        static const C zero{};
        if (!known(e))
            throw window_error("coefficient " + std::to_string(e) + " of series in " + var_ + " outside window");
        auto it = c_.find(static_cast<int>(e));
        return it == c_.end() ? zero : it->second;
    }

    void set(int e, C v)
    {
        if (!known(e))
            throw window_error("set: exponent " + std::to_string(e) + " outside window");
        if (v.is_zero())
            c_.erase(e);
        else
            c_[e] = std::move(v);
    }
    void add_to(int e, const C& v)
    {
        if (!known(e))
            throw window_error("add_to: exponent outside window");
        auto [it, inserted] = c_.try_emplace(e, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero())
                c_.erase(it);
        } else if (it->second.is_zero()) {
            c_.erase(it);
        }
    }

    // Largest/smallest exponent that may carry a nonzero coefficient.
    std::int64_t top() const
    {
        if (hi_ < INF)
            return INF;
        return c_.empty() ? -INF : c_.rbegin()->first;
    }
    std::int64_t bottom() const
    {
        if (lo_ > -INF)
            return -INF;
        return c_.empty() ? INF : c_.begin()->first;
    }

    basic_laurent restricted(std::int64_t lo, std::int64_t hi) const
    {
        basic_laurent r(var_, std::max(lo, lo_), std::min(hi, hi_));
        for (const auto& kv : c_)
            if (r.known(kv.first))
                r.c_.insert(kv);
        return r;
    }

    basic_laurent operator-() const
    {
        basic_laurent r(*this);
        for (auto& [e, v] : r.c_)
            v = -v;
        return r;
    }
    friend basic_laurent operator+(const basic_laurent& a, const basic_laurent& b) { return combine(a, b, false); }
    friend basic_laurent operator-(const basic_laurent& a, const basic_laurent& b) { return combine(a, b, true); }

    friend basic_laurent operator*(const basic_laurent& a, const C& k)
    {
        basic_laurent r(a.var_, a.lo_, a.hi_);
        if (k.is_zero())
            return r;
        for (const auto& [e, v] : a.c_)
            r.set(e, v * k);
        return r;
    }
    friend basic_laurent operator*(const basic_laurent& a, const Rational& k) { return a * C(k); }

    // Cauchy product. Coefficient e is kept iff every contributing pair lies in both windows.
    friend basic_laurent operator*(const basic_laurent& a, const basic_laurent& b)
    {
        check_same_var(a, b);
        std::int64_t lo = -INF, hi = INF;
        if (a.lo_ > -INF)
            lo = std::max(lo, detail::sat_add(a.lo_, b.top()));
        if (b.lo_ > -INF)
            lo = std::max(lo, detail::sat_add(b.lo_, a.top()));
        if (a.hi_ < INF)
            hi = std::min(hi, detail::sat_add(a.hi_, b.bottom()));
        if (b.hi_ < INF)
            hi = std::min(hi, detail::sat_add(b.hi_, a.bottom()));
        if (lo > hi || lo >= INF || hi <= -INF)
            throw window_error("series product has no known coefficient");
        basic_laurent r(a.var_, lo, hi);
        for (const auto& [ea, va] : a.c_) {
            for (const auto& [eb, vb] : b.c_) {
                std::int64_t e = std::int64_t{ea} + eb;
                if (e < lo || e > hi)
                    continue;
                r.add_to(static_cast<int>(e), va * vb);
            }
        }
        return r;
    }

    // f(z) -> f(-z).
    basic_laurent reflect_sign() const
    {
        basic_laurent r(*this);
        for (auto& [e, v] : r.c_)
            if (e % 2 != 0)
                v = -v;
        return r;
    }
    // f(z) -> f(1/z).
    basic_laurent invert_variable() const
    {
        basic_laurent r(var_, hi_ >= INF ? -INF : -hi_, lo_ <= -INF ? INF : -lo_);
        for (const auto& [e, v] : c_)
            r.c_.emplace(-e, v);
        return r;
    }
    // z^k f(z).
    basic_laurent shift(int k) const
    {
        basic_laurent r(var_, detail::sat_add(lo_, k), detail::sat_add(hi_, k));
        for (const auto& [e, v] : c_)
            r.c_.emplace(e + k, v);
        return r;
    }
    basic_laurent derivative() const
    {
        basic_laurent r(var_, detail::sat_add(lo_, -1), detail::sat_add(hi_, -1));
        for (const auto& [e, v] : c_)
            if (e != 0)
                r.set(e - 1, v * Rational(e));
        return r;
    }

    // Part with exponents of the given parity (0 even, 1 odd).
    basic_laurent parity_part(int parity) const
    {
        basic_laurent r(var_, lo_, hi_);
        for (const auto& [e, v] : c_)
            if (((e % 2) + 2) % 2 == parity)
                r.c_.insert({e, v});
        return r;
    }

    // Coefficient of z^-1.
    C residue() const { return coeff(-1); }

    // Equality on the intersection of the two windows.
    bool agrees_with(const basic_laurent& o) const
    {
        std::int64_t lo = std::max(lo_, o.lo_), hi = std::min(hi_, o.hi_);
        auto in = [&](int e) { return e >= lo && e <= hi; };
        for (const auto& [e, v] : c_)
            if (in(e) && !(o.coeff(e) - v).is_zero())
                return false;
        for (const auto& [e, v] : o.c_)
            if (in(e) && !c_.count(e))
                return false;
        return true;
    }

    bool is_zero_in_window() const { return c_.empty(); }

private:
    std::string var_ = "z";
    std::map<int, C> c_;
    std::int64_t lo_ = -INF, hi_ = INF;

    static void check_same_var(const basic_laurent& a, const basic_laurent& b)
    {
        if (a.var_ != b.var_)
            throw std::invalid_argument("series variables differ: " + a.var_ + " vs " + b.var_);
    }

    static basic_laurent combine(const basic_laurent& a, const basic_laurent& b, bool subtract)
    {
        check_same_var(a, b);
        basic_laurent r(a.var_, std::max(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
        for (const auto& [e, v] : a.c_)
            if (r.known(e))
                r.add_to(e, v);
        for (const auto& [e, v] : b.c_)
            if (r.known(e))
                r.add_to(e, subtract ? C(-v) : v);
        return r;
    }
};

using LaurentSeries = basic_laurent<ParamPoly>;

namespace detail {
inline Rational unit_value(const ParamPoly& p)
{
    if (!p.is_constant() || p.is_zero())
        throw std::domain_error("leading coefficient is not a nonzero rational");
    return p.constant_term();
}
} // namespace detail

// Inverse of a series whose leading term (highest exponent for a series known downward,
// lowest for one known upward) is a nonzero rational multiple of a power of the variable.
// For a fully known input, depth sets how many terms of the inverse to produce.
inline LaurentSeries series_inverse(const LaurentSeries& a, int depth = -1)
{
    if (a.hi() < INF && a.lo() <= -INF)
        return series_inverse(a.invert_variable(), depth).invert_variable();
    if (a.coefficients().empty())
        throw std::domain_error("series_inverse: zero series");
    if (a.hi() < INF)
        throw std::domain_error("series_inverse: series unknown in both directions");
    int t = a.coefficients().rbegin()->first;
    Rational c = detail::unit_value(a.coefficients().rbegin()->second);
    std::int64_t d;
    if (a.lo() > -INF)
        d = t - a.lo();
    else if (depth >= 0)
        d = depth;
    else
        throw std::invalid_argument("series_inverse: depth required for a polynomial input");
    if (depth >= 0)
        d = std::min<std::int64_t>(d, depth);
    LaurentSeries b(a.var(), -t - d, INF);
    Rational ci = Rational(1) / c;
    b.set(-t, ParamPoly(ci));
    for (std::int64_t k = 1; k <= d; ++k) {
        ParamPoly acc;
        for (std::int64_t j = 1; j <= k; ++j) {
            const ParamPoly& aj = a.coeff(t - j);
            if (aj.is_zero())
                continue;
            const ParamPoly& bj = b.coeff(-t - k + j);
            if (!bj.is_zero())
                acc += aj * bj;
        }
        b.set(static_cast<int>(-t - k), -(acc * ci));
    }
    return b;
}

// Square root with constant term +1 of a series of the form 1 + (negative powers).
inline LaurentSeries series_sqrt(const LaurentSeries& a, int depth = -1)
{
    if (a.hi() < INF)
        throw std::domain_error("series_sqrt: series must be known upward");
    if (!a.coefficients().empty() && a.coefficients().rbegin()->first > 0)
        throw std::domain_error("series_sqrt: positive powers present");
    if (!(a.coeff(0) == ParamPoly(1)))
        throw std::domain_error("series_sqrt: constant term is not 1");
    std::int64_t d;
    if (a.lo() > -INF)
        d = -a.lo();
    else if (depth >= 0)
        d = depth;
    else
        throw std::invalid_argument("series_sqrt: depth required for a polynomial input");
    if (depth >= 0)
        d = std::min<std::int64_t>(d, depth);
    LaurentSeries b(a.var(), -d, INF);
    b.set(0, ParamPoly(1));
    for (std::int64_t k = 1; k <= d; ++k) {
        ParamPoly acc = a.coeff(-k);
        for (std::int64_t i = 1; i < k; ++i) {
            const ParamPoly& x = b.coeff(-i);
            const ParamPoly& y = b.coeff(-(k - i));
            if (!x.is_zero() && !y.is_zero())
                acc -= x * y;
        }
        b.set(static_cast<int>(-k), acc * rat(1, 2));
    }
    return b;
}

inline ParamPoly residue(const LaurentSeries& a) { return a.residue(); }

} // namespace gbgw
