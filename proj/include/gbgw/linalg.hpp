#pragma once

#include <stdexcept>
#include <vector>

#include "param_poly.hpp"

namespace gbgw {

template <class C>
using Matrix = std::vector<std::vector<C>>;

namespace detail {
template <class C>
C pfaffian_rec(const Matrix<C>& m, std::vector<std::size_t>& idx)
{
    if (idx.empty())
        return C(1);
    const std::size_t first = idx.front();
    C total{};
    for (std::size_t j = 1; j < idx.size(); ++j) {
        const C& a = m[first][idx[j]];
        if (a.is_zero())
            continue;
        std::vector<std::size_t> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t k = 1; k < idx.size(); ++k)
            if (k != j)
                rest.push_back(idx[k]);
        C sub = pfaffian_rec(m, rest);
        if (j % 2 == 1)
            total += a * sub;
        else
            total -= a * sub;
    }
    return total;
}
} // namespace detail

// Pfaffian by expansion along the first row.
template <class C>
C pfaffian(const Matrix<C>& m)
{
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw std::invalid_argument("pfaffian: matrix not square");
    if (n % 2 != 0)
        throw std::invalid_argument("pfaffian: odd dimension");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (!(m[i][j] + m[j][i]).is_zero())
                throw std::invalid_argument("pfaffian: matrix not antisymmetric");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    return detail::pfaffian_rec(m, idx);
}

// C(-k - 1/2, m).
inline Rational half_binomial(int k, int m)
{
    if (k < 0 || m < 0)
        throw std::domain_error("half_binomial: negative argument");
    Rational top = rat(-2 * k - 1, 2);
    Rational r(1);
    for (int i = 0; i < m; ++i)
        r *= (top - i) / Rational(i + 1);
    return r;
}

} // namespace gbgw
