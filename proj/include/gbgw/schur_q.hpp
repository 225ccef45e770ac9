#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "exact_algebra.hpp"

namespace gbgw {

using StrictPartition = std::vector<int>;

inline void check_strict(const StrictPartition& l)
{
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] <= 0)
            throw std::invalid_argument("strict partition: non-positive part");
        if (i > 0 && l[i] >= l[i - 1])
            throw std::invalid_argument("strict partition: parts not strictly decreasing");
    }
}

inline int weight(const std::vector<int>& parts)
{
    int w = 0;
    for (int p : parts)
        w += p;
    return w;
}

// All strict partitions of exactly w, parts descending, in lexicographically decreasing order.
inline std::vector<StrictPartition> strict_partitions(int w)
{
    std::vector<StrictPartition> out;
    StrictPartition cur;
    std::function<void(int, int)> go = [&](int rem, int max_part) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, max_part); p >= 1; --p) {
            cur.push_back(p);
            go(rem - p, p - 1);
            cur.pop_back();
        }
    };
    go(w, w);
    return out;
}

// q_0..q_max with sum q_r z^r = exp(2 sum_{k odd} t_k z^k).
inline std::vector<ParamPoly> q_series(const std::map<int, Rational>& couplings, int max_order)
{
    for (const auto& [k, t] : couplings)
        if (k <= 0 || k % 2 == 0)
            throw std::invalid_argument("q_series: couplings only at odd positive indices");
    std::vector<Rational> q(static_cast<std::size_t>(max_order) + 1);
    q[0] = 1;
    // n q_n = sum_k k g_k q_{n-k} with g_k = 2 t_k.
    for (int n = 1; n <= max_order; ++n) {
        Rational acc;
        for (const auto& [k, t] : couplings)
            if (k <= n)
                acc += Rational(2 * k) * t * q[static_cast<std::size_t>(n - k)];
        q[static_cast<std::size_t>(n)] = acc / n;
    }
    return {q.begin(), q.end()};
}

inline std::map<int, Rational> delta_couplings() { return {{1, Rational(1)}}; }

namespace detail {
inline ParamPoly q_at(const std::vector<ParamPoly>& q, int i)
{
    if (i < 0)
        return {};
    if (static_cast<std::size_t>(i) >= q.size())
        throw std::out_of_range("Q_lambda: q-series too short");
    return q[static_cast<std::size_t>(i)];
}
} // namespace detail

// Q_{(m,n)} for m > n >= 0.
inline ParamPoly Q_two_row(int m, int n, const std::vector<ParamPoly>& q)
{
    ParamPoly r = detail::q_at(q, m) * detail::q_at(q, n);
    for (int i = 1; i <= n; ++i) {
        ParamPoly t = detail::q_at(q, m + i) * detail::q_at(q, n - i);
        r += (i % 2 ? -2 : 2) * t;
    }
    return r;
}

inline ParamPoly Q_lambda(const StrictPartition& l, const std::vector<ParamPoly>& q)
{
    check_strict(l);
    if (l.empty())
        return ParamPoly(1);
    if (l.size() == 1)
        return detail::q_at(q, l[0]);
    StrictPartition p = l;
    if (p.size() % 2)
        p.push_back(0);
    const std::size_t n = p.size();
    Matrix<ParamPoly> m(n, std::vector<ParamPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m[i][j] = Q_two_row(p[i], p[j], q);
            m[j][i] = -m[i][j];
        }
    return pfaffian(m);
}

inline ParamPoly Q_lambda(const StrictPartition& l, const std::map<int, Rational>& couplings)
{
    return Q_lambda(l, q_series(couplings, weight(l) + 1));
}

// 2^|l| / prod l_i! * prod_{i<j} (l_i - l_j)/(l_i + l_j).
inline Rational Q_delta_closed(const StrictPartition& l)
{
    check_strict(l);
    Rational r = rational_pow(Rational(2), weight(l));
    for (std::size_t i = 0; i < l.size(); ++i) {
        r /= factorial(l[i]);
        for (std::size_t j = i + 1; j < l.size(); ++j)
            r *= rat(l[i] - l[j], l[i] + l[j]);
    }
    return r;
}

// theta(k) = (2k-1)^2 - 4u.
inline ParamPoly theta(int k) { return ParamPoly((2L * k - 1) * (2L * k - 1)) - 4 * poly_u(); }

inline ParamPoly theta_lambda(const StrictPartition& l)
{
    check_strict(l);
    ParamPoly r(1);
    for (int part : l)
        for (int k = 1; k <= part; ++k)
            r *= theta(k);
    return r;
}

// (h/16)^|l| 2^-l(l) theta_l Q_l(delta).
inline ParamPoly hypergeom_coeff(const StrictPartition& l)
{
    check_strict(l);
    int w = weight(l);
    Rational c = Q_delta_closed(l) / rational_pow(Rational(16), w) / rational_pow(Rational(2), static_cast<int>(l.size()));
    return ParamPoly::monomial(c, w) * theta_lambda(l);
}

} // namespace gbgw
