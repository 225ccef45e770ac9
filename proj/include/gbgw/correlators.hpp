#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exact_algebra.hpp"
#include "schur_q.hpp"

namespace gbgw {

using OddPartition = std::vector<int>; // sorted descending

inline OddPartition make_odd_partition(std::vector<int> parts)
{
    for (int p : parts) {
        if (p <= 0)
            throw std::invalid_argument("odd partition: non-positive part " + std::to_string(p));
        if (p % 2 == 0)
            throw std::invalid_argument("odd partition: even part " + std::to_string(p));
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return parts;
}

// Odd partitions with exactly n parts and weight <= max_weight, each sorted descending.
inline std::vector<OddPartition> odd_partitions(int n, int max_weight)
{
    std::vector<OddPartition> out;
    OddPartition cur;
    std::function<void(int, int)> go = [&](int rem, int max_part) {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        int left = n - static_cast<int>(cur.size()) - 1; // parts still to place after this one
        for (int p = 1; p <= max_part && p + left <= rem; p += 2) {
            cur.push_back(p);
            go(rem - p, p);
            cur.pop_back();
        }
    };
    go(max_weight, max_weight);
    std::sort(out.begin(), out.end());
    return out;
}

// Connected correlators <p_mu>_g from the genus recursion with
// <p_1>_0 = -s/2, <p_1>_1 = 1/8, <p_1>_g = 0 for g >= 2.
class CorrelatorTable {
public:
    ParamPoly value(int g, const OddPartition& mu)
    {
        OddPartition key = make_odd_partition(mu);
        if (g < 0 || key.empty())
            return {};
        {
            std::lock_guard<std::mutex> lock(m_);
            auto it = memo_.find({g, key});
            if (it != memo_.end())
                return it->second;
        }
        ParamPoly v = compute(g, key, 0);
        std::lock_guard<std::mutex> lock(m_);
        return memo_.try_emplace({g, std::move(key)}, std::move(v)).first->second;
    }

    // One recursion step with parts[index] distinguished instead of the largest part.
    ParamPoly value_distinguished(int g, const OddPartition& mu, std::size_t index)
    {
        OddPartition key = make_odd_partition(mu);
        if (index >= key.size())
            throw std::out_of_range("value_distinguished: index out of range");
        if (g < 0)
            return {};
        return compute(g, key, index);
    }

    std::size_t memo_size()
    {
        std::lock_guard<std::mutex> lock(m_);
        return memo_.size();
    }

private:
    std::mutex m_;
    std::map<std::pair<int, OddPartition>, ParamPoly> memo_;

    ParamPoly compute(int g, const OddPartition& mu, std::size_t dist)
    {
        if (mu.size() == 1 && mu[0] == 1) {
            if (g == 0)
                return ParamPoly::monomial(rat(-1, 2), 0, 0, 1);
            if (g == 1)
                return ParamPoly(rat(1, 8));
            return {};
        }
        const int d = mu[dist];
        const int k = (d - 1) / 2;
        OddPartition rest;
        for (std::size_t i = 0; i < mu.size(); ++i)
            if (i != dist)
                rest.push_back(mu[i]);
        const int n = static_cast<int>(rest.size());
        const int w = weight(mu);

        auto sub = [&](int gg, std::vector<int> parts) {
            if (gg < 0)
                return ParamPoly{};
            if (weight(parts) >= w)
                throw std::logic_error("correlator recursion does not decrease weight");
            return value(gg, parts);
        };

        ParamPoly total;
        for (int a = 1; a < 2 * k; a += 2) {
            const int b = 2 * k - a;
            std::vector<int> ab = rest;
            ab.push_back(a);
            ab.push_back(b);
            total += sub(g - 1, ab) * rat(1, 2);
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> I{a}, J{b};
                for (int i = 0; i < n; ++i)
                    ((mask >> i) & 1u ? I : J).push_back(rest[static_cast<std::size_t>(i)]);
                for (int g1 = 0; g1 <= g; ++g1) {
                    ParamPoly x = sub(g1, I);
                    if (x.is_zero())
                        continue;
                    ParamPoly y = sub(g - g1, J);
                    if (!y.is_zero())
                        total += x * y * rat(1, 2);
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            std::vector<int> merged;
            for (int j = 0; j < n; ++j)
                merged.push_back(j == i ? rest[static_cast<std::size_t>(j)] + 2 * k : rest[static_cast<std::size_t>(j)]);
            total += sub(g, merged) * Rational(rest[static_cast<std::size_t>(i)]);
        }
        return total;
    }
};

// sum_g 2^-n h^n h^(2g-2) <p_mu>_g |_{s = h^2 u}.
inline ParamPoly bridge(CorrelatorTable& table, const OddPartition& mu)
{
    OddPartition p = make_odd_partition(mu);
    const int n = static_cast<int>(p.size());
    const int w = weight(p);
    ParamPoly total;
    for (int g = 0; 2 * g <= w - n + 2; ++g)
        total += ParamPoly::monomial(Rational(1), 2 * g - 2) * table.value(g, p).substitute_s();
    return ParamPoly::monomial(rational_pow(Rational(2), -n), n) * total;
}

// W_{g,n}: coefficient of x_1^(-mu_1-1)...x_n^(-mu_n-1) is <p_mu>_g, for all ordered odd mu with |mu| <= W.
inline SparseTensor wgn(CorrelatorTable& table, int g, int n, int max_weight)
{
    SparseTensor t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        t.set_window(static_cast<std::size_t>(i), -INF, -2);
    t.set_min_total(-max_weight - n);
    std::vector<int> cur(static_cast<std::size_t>(n));
    std::function<void(int, int)> go = [&](int i, int rem) {
        if (i == n) {
            std::vector<int> idx(cur.size());
            for (std::size_t j = 0; j < cur.size(); ++j)
                idx[j] = -cur[j] - 1;
            t.set(idx, table.value(g, cur));
            return;
        }
        for (int p = 1; p <= rem; p += 2) {
            cur[static_cast<std::size_t>(i)] = p;
            go(i + 1, rem - p);
        }
    };
    go(0, max_weight);
    return t;
}

// 1 - sqrt(1 + s x^-2), known through x^-(W+1).
inline LaurentSeries w01_closed(int max_weight)
{
    LaurentSeries one_plus = LaurentSeries::finite("x", {{0, ParamPoly(1)}, {-2, poly_s()}});
    LaurentSeries root = series_sqrt(one_plus, max_weight + 1);
    return LaurentSeries::finite("x", {{0, ParamPoly(1)}}) - root;
}

// ((x^2 + x1^2 + 2s) r(x) r(x1) - x^2 - x1^2) / (x^2 - x1^2)^2 with r = (1 + s x^-2)^(-1/2),
// through total weight W (first variable x, second x1).
inline SparseTensor w02_closed(int max_weight)
{
    const int depth = max_weight + 4;
    LaurentSeries root = series_sqrt(LaurentSeries::finite("x", {{0, ParamPoly(1)}, {-2, poly_s()}}), depth);
    LaurentSeries r = series_inverse(root);
    // Numerator slices by total degree t (exponent of x plus exponent of x1).
    std::map<int, std::map<int, ParamPoly>> slices;
    auto put = [&](int i, int j, const ParamPoly& c) {
        if (c.is_zero())
            return;
        auto& slot = slices[i + j][i];
        slot += c;
        if (slot.is_zero())
            slices[i + j].erase(i);
    };
    const int min_slice = -(max_weight + 2) + 4; // W02 degree t - 4 >= -(W + 2)
    for (const auto& [ei, ci] : r.coefficients())
        for (const auto& [ej, cj] : r.coefficients()) {
            ParamPoly c = ci * cj;
            if (ei + ej + 2 >= min_slice) {
                put(ei + 2, ej, c);
                put(ei, ej + 2, c);
            }
            if (ei + ej >= min_slice)
                put(ei, ej, c * poly_s() * 2);
        }
    put(2, 0, ParamPoly(-1));
    put(0, 2, ParamPoly(-1));
    // Slice t needs every r-product of degree >= t - 2 and >= t; r is known down to -depth per variable.
    if (min_slice - 2 < -depth)
        throw window_error("w02_closed: internal depth too small");
    const std::map<int, Rational> div{{4, Rational(1)}, {2, Rational(-2)}, {0, Rational(1)}}; // (x^2 - x1^2)^2
    SparseTensor out(2);
    out.set_names({"x", "x1"});
    out.set_window(0, -INF, -2);
    out.set_window(1, -INF, -2);
    out.set_min_total(-(max_weight + 2));
    for (auto& [t, slice] : slices) {
        if (t < min_slice || slice.empty())
            continue;
        auto q = divide_homogeneous_slice(slice, div);
        for (const auto& [i, c] : q) {
            int j = t - 4 - i;
            out.set({i, j}, c);
        }
    }
    return out;
}

// Free energy coefficient of the monomial t_{a1}...t_{an} (indices sorted descending):
// <p_a>_g / prod (multiplicity)!.
using CouplingMonomial = std::vector<int>;

inline Rational automorphism_factor(const CouplingMonomial& m)
{
    Rational f(1);
    std::size_t i = 0;
    while (i < m.size()) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i])
            ++j;
        f *= factorial(static_cast<int>(j - i));
        i = j;
    }
    return f;
}

inline std::map<CouplingMonomial, ParamPoly> free_energy(CorrelatorTable& table, int g, int max_degree, int max_weight)
{
    std::map<CouplingMonomial, ParamPoly> out;
    for (int n = 1; n <= max_degree; ++n)
        for (const auto& mu : odd_partitions(n, max_weight)) {
            ParamPoly v = table.value(g, mu);
            if (!v.is_zero())
                out[mu] = v * (Rational(1) / automorphism_factor(mu));
        }
    return out;
}

struct DeformationReport {
    bool ok = true;
    int checked = 0;
    std::vector<std::string> failures;
};

// Checks (y^2)_- = s x^-2 with y = sum (2n+1)(t_{2n+1} - delta_{n,0}) x^{2n} + sum dF_0/dt_{2n+1} x^{-2n-2},
// for every coupling monomial of degree <= max_degree with odd indices <= max_index and every
// x-order down to x^{-2 - 2 n_max} with 2 + 2 n_max <= max_order.
inline DeformationReport verify_special_deformation(CorrelatorTable& table, int max_degree, int max_order, int max_index)
{
    DeformationReport rep;
    const int n_max = (max_order - 2) / 2;
    // Highest correlator weight touched: d_{j} F at a monomial of degree max_degree,
    // with j up to max_index + 2 n_max (and up to 2 n_max + 1).
    const int max_j = std::max(max_index + 2 * n_max, 2 * n_max + 1);
    const int wmax = max_j + max_degree * max_index;

    // dF_0/dt_j at coupling monomial m: coefficient of t^m in dF/dt_j = F[m + j] * (mult_j(m) + 1).
    std::map<CouplingMonomial, ParamPoly> F = free_energy(table, 0, max_degree + 1, wmax);
    auto dF = [&](int j, const CouplingMonomial& m) -> ParamPoly {
        CouplingMonomial mj = m;
        mj.push_back(j);
        std::sort(mj.begin(), mj.end(), std::greater<>());
        if (weight(mj) > wmax)
            throw window_error("special deformation: weight bound exceeded");
        auto it = F.find(mj);
        if (it == F.end())
            return {};
        long mult = std::count(mj.begin(), mj.end(), j);
        return it->second * Rational(mult);
    };

    std::vector<CouplingMonomial> monos{{}};
    for (int d = 1; d <= max_degree; ++d)
        for (const auto& mu : odd_partitions(d, d * max_index))
            if (mu.front() <= max_index)
                monos.push_back(mu);

    for (const auto& m : monos) {
        // Splittings m = m1 * m2 as sub-multisets (by index positions, deduplicated).
        std::map<std::pair<CouplingMonomial, CouplingMonomial>, int> splits;
        for (unsigned mask = 0; mask < (1u << m.size()); ++mask) {
            CouplingMonomial a, b;
            for (std::size_t i = 0; i < m.size(); ++i)
                ((mask >> i) & 1u ? a : b).push_back(m[i]);
            splits[{a, b}] = 1;
        }
        for (int n = 0; n <= n_max; ++n) {
            ParamPoly c = dF(2 * n + 1, m) * Rational(-2);
            for (int a = 1; a < 2 * n; a += 2)
                for (const auto& [ab, one] : splits)
                    c += dF(a, ab.first) * dF(2 * n - a, ab.second);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (i > 0 && m[i] == m[i - 1])
                    continue;
                CouplingMonomial rest = m;
                rest.erase(rest.begin() + static_cast<long>(i));
                int k = m[i];
                c += dF(k + 2 * n, rest) * Rational(2 * k);
            }
            ParamPoly expected = (m.empty() && n == 0) ? poly_s() : ParamPoly{};
            ++rep.checked;
            if (!(c == expected)) {
                rep.ok = false;
                std::string ms;
                for (int x : m)
                    ms += "t" + std::to_string(x);
                rep.failures.push_back("monomial [" + ms + "] x^" + std::to_string(-2 * n - 2) + ": " + c.str());
            }
        }
    }
    return rep;
}

} // namespace gbgw
