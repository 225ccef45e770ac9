#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gbgw {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1)
{
    if (den == 0)
        throw std::domain_error("rat: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rational_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "p/q" or "p".
inline Rational parse_rational(const std::string& text)
{
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational: '" + text + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline Rational rational_pow(const Rational& b, int e)
{
    if (e < 0) {
        if (b == 0)
            throw std::domain_error("rational_pow: 0 to a negative power");
        return rational_pow(Rational(1) / b, -e);
    }
    Rational r(1), base(b);
    while (e) {
        if (e & 1)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rational factorial(int n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

// (2n-1)!! with (-1)!! = 1.
inline Rational double_factorial(int n)
{
    if (n < -1)
        throw std::domain_error("double_factorial: argument below -1");
    mpz_class r(1);
    for (int k = n; k > 1; k -= 2)
        r *= k;
    return Rational(r);
}

inline Rational binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

// Generators of the coefficient ring. NU is N itself, reduced by NU^2 = U.
enum Gen : int { H = 0, U = 1, S = 2, NU = 3 };

inline constexpr std::array<const char*, 4> gen_names{"h", "u", "s", "N"};

struct Monomial {
    std::array<std::int16_t, 4> e{};

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

    int operator[](Gen g) const { return e[g]; }

    Monomial operator*(const Monomial& o) const
    {
        Monomial r;
        for (int i = 0; i < 4; ++i)
            r.e[i] = static_cast<std::int16_t>(e[i] + o.e[i]);
        if (r.e[NU] >= 2) {
            r.e[U] = static_cast<std::int16_t>(r.e[U] + r.e[NU] / 2);
            r.e[NU] = static_cast<std::int16_t>(r.e[NU] % 2);
        }
        return r;
    }
};

// Sparse polynomial over Q in h (Laurent), u, s and N (with N^2 = u).
class ParamPoly {
public:
    using Term = std::pair<Monomial, Rational>;

    ParamPoly() = default;
    ParamPoly(long c)
    {
        if (c != 0)
            terms_.emplace_back(Monomial{}, Rational(c));
    }
    ParamPoly(const Rational& c)
    {
        if (c != 0)
            terms_.emplace_back(Monomial{}, c);
    }

    static ParamPoly monomial(const Rational& c, int h, int u = 0, int s = 0, int nu = 0)
    {
        if (u < 0 || s < 0 || nu < 0)
            throw std::domain_error("ParamPoly: only h may carry negative exponents");
        ParamPoly p;
        if (c == 0)
            return p;
        Monomial m;
        m.e = {static_cast<std::int16_t>(h), static_cast<std::int16_t>(u), static_cast<std::int16_t>(s), 0};
        Monomial n;
        n.e[NU] = static_cast<std::int16_t>(nu % 2);
        n.e[U] = static_cast<std::int16_t>(nu / 2);
        p.terms_.emplace_back(m * n, c);
        return p;
    }
    static ParamPoly gen(Gen g, int exp = 1)
    {
        std::array<int, 4> e{};
        e[g] = exp;
        return monomial(Rational(1), e[H], e[U], e[S], e[NU]);
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Monomial{}); }
    Rational constant_term() const
    {
        for (const auto& [m, c] : terms_)
            if (m == Monomial{})
                return c;
        return Rational(0);
    }
    Rational coefficient(const Monomial& m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& k) { return t.first < k; });
        return (it != terms_.end() && it->first == m) ? it->second : Rational(0);
    }

    int max_degree(Gen g) const
    {
        if (terms_.empty())
            throw std::domain_error("max_degree of zero polynomial");
        int d = terms_[0].first[g];
        for (const auto& t : terms_)
            d = std::max(d, t.first[g]);
        return d;
    }
    int min_degree(Gen g) const
    {
        if (terms_.empty())
            throw std::domain_error("min_degree of zero polynomial");
        int d = terms_[0].first[g];
        for (const auto& t : terms_)
            d = std::min(d, t.first[g]);
        return d;
    }
    bool involves(Gen g) const
    {
        return std::any_of(terms_.begin(), terms_.end(), [g](const Term& t) { return t.first[g] != 0; });
    }

    ParamPoly operator-() const
    {
        ParamPoly r(*this);
        for (auto& t : r.terms_)
            t.second = -t.second;
        return r;
    }

    ParamPoly& operator+=(const ParamPoly& o) { return *this = merge(*this, o, false); }
    ParamPoly& operator-=(const ParamPoly& o) { return *this = merge(*this, o, true); }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
    ParamPoly& operator*=(const Rational& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_)
            t.second *= c;
        return *this;
    }

    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) { return merge(a, b, false); }
    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return merge(a, b, true); }
    friend ParamPoly operator*(ParamPoly a, const Rational& c) { return a *= c; }
    friend ParamPoly operator*(const Rational& c, ParamPoly a) { return a *= c; }
    friend ParamPoly operator*(ParamPoly a, long c) { return a *= Rational(c); }
    friend ParamPoly operator*(long c, ParamPoly a) { return a *= Rational(c); }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b)
    {
        ParamPoly r;
        if (a.is_zero() || b.is_zero())
            return r;
        if (a.terms_.size() == 1 || b.terms_.size() == 1) {
            const ParamPoly& single = a.terms_.size() == 1 ? a : b;
            const ParamPoly& other = a.terms_.size() == 1 ? b : a;
            const auto& [sm, sc] = single.terms_[0];
            r.terms_.reserve(other.terms_.size());
            for (const auto& [m, c] : other.terms_)
                r.terms_.emplace_back(m * sm, c * sc);
            // Multiplying by a monomial keeps the order unless N wraps into u.
            if (sm.e[NU] != 0)
                r.normalize();
            return r;
        }
        r.terms_.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.terms_.emplace_back(ma * mb, ca * cb);
        r.normalize();
        return r;
    }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator<(const ParamPoly& a, const ParamPoly& b) { return a.terms_ < b.terms_; }

    ParamPoly pow(unsigned n) const
    {
        ParamPoly r(1), base(*this);
        while (n) {
            if (n & 1)
                r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    // s -> h^2 u.
    ParamPoly substitute_s() const
    {
        ParamPoly r;
        r.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            Monomial k = m;
            k.e[H] = static_cast<std::int16_t>(k.e[H] + 2 * k.e[S]);
            k.e[U] = static_cast<std::int16_t>(k.e[U] + k.e[S]);
            k.e[S] = 0;
            r.terms_.emplace_back(k, c);
        }
        r.normalize();
        return r;
    }

    // Sets a non-h generator to a rational value. Evaluating U also evaluates N^2 only
    // when N does not occur.
    ParamPoly evaluate(Gen g, const Rational& value) const
    {
        if (g == H)
            throw std::domain_error("evaluate: h is kept symbolic");
        if (g == U && involves(NU))
            throw std::domain_error("evaluate: cannot set u while N occurs");
        ParamPoly r;
        r.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            Monomial k = m;
            int e = k.e[g];
            k.e[g] = 0;
            Rational v = c * rational_pow(value, e);
            if (v != 0)
                r.terms_.emplace_back(k, v);
        }
        r.normalize();
        return r;
    }

    // Part of h-degree exactly d (h^d times the returned polynomial's h-free part is kept as is).
    ParamPoly h_part(int d) const
    {
        ParamPoly r;
        for (const auto& t : terms_)
            if (t.first[H] == d)
                r.terms_.push_back(t);
        return r;
    }

    // Splits c0 + N c1 into (c0, c1).
    std::pair<ParamPoly, ParamPoly> split_nu() const
    {
        std::pair<ParamPoly, ParamPoly> r;
        for (const auto& [m, c] : terms_) {
            if (m.e[NU] == 0) {
                r.first.terms_.emplace_back(m, c);
            } else {
                Monomial k = m;
                k.e[NU] = 0;
                r.second.terms_.emplace_back(k, c);
            }
        }
        r.first.normalize();
        r.second.normalize();
        return r;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational a = abs(c);
            os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            bool unit = (a == 1);
            if (!unit || m == Monomial{})
                os << a.get_str();
            bool star = !unit;
            for (int g = 0; g < 4; ++g) {
                if (m.e[g] == 0)
                    continue;
                os << (star ? "*" : "") << gen_names[g];
                if (m.e[g] != 1)
                    os << "^" << m.e[g];
                star = true;
            }
            first = false;
        }
        return os.str();
    }

private:
    std::vector<Term> terms_; // sorted by monomial, nonzero coefficients

    void normalize()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms_.size();) {
            Monomial m = terms_[i].first;
            Rational c = terms_[i].second;
            std::size_t j = i + 1;
            for (; j < terms_.size() && terms_[j].first == m; ++j)
                c += terms_[j].second;
            if (c != 0)
                terms_[out++] = Term(m, std::move(c));
            i = j;
        }
        terms_.resize(out);
    }

    static ParamPoly merge(const ParamPoly& a, const ParamPoly& b, bool subtract)
    {
        ParamPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.emplace_back(j->first, subtract ? Rational(-j->second) : j->second);
                ++j;
            } else {
                Rational c = subtract ? Rational(i->second - j->second) : Rational(i->second + j->second);
                if (c != 0)
                    r.terms_.emplace_back(i->first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }
};

inline std::ostream& operator<<(std::ostream& os, const ParamPoly& p) { return os << p.str(); }

inline const ParamPoly& poly_h() { static const ParamPoly p = ParamPoly::gen(H); return p; }
inline const ParamPoly& poly_u() { static const ParamPoly p = ParamPoly::gen(U); return p; }
inline const ParamPoly& poly_s() { static const ParamPoly p = ParamPoly::gen(S); return p; }
inline const ParamPoly& poly_N() { static const ParamPoly p = ParamPoly::gen(NU); return p; }

} // namespace gbgw
