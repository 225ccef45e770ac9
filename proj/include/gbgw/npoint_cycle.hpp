#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "affine_coords.hpp"
#include "correlators.hpp"
#include "report.hpp"

namespace gbgw {

struct window_instability : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sum_{n odd} (n/2) x1^-n x2^n, exact for n <= M.
inline SparseTensor correction_term(int M)
{
    SparseTensor t(2);
    t.set_window(0, -M, INF);
    for (int n = 1; n <= M; n += 2)
        t.set({-n, n}, ParamPoly(rat(n, 2)));
    return t;
}

// Cyclic orders on {0..n-1} as sequences starting with 0, in lexicographic order.
inline std::vector<std::vector<int>> cycle_plan(int n)
{
    if (n < 1)
        throw std::invalid_argument("cycle_plan: n must be positive");
    std::vector<int> tail(static_cast<std::size_t>(n - 1));
    std::iota(tail.begin(), tail.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        std::vector<int> c{0};
        c.insert(c.end(), tail.begin(), tail.end());
        out.push_back(std::move(c));
    } while (std::next_permutation(tail.begin(), tail.end()));
    return out;
}

// One-point function A(-x, x) from the direct double sum: coefficient of x^-m for m <= M.
inline SparseTensor one_point_direct(AffineTable& table, int M)
{
    GenSeries g = gen_A_direct(table, M);
    SparseTensor t(1);
    t.set_window(0, -M, INF);
    for (const auto& [k, v] : g.A.coefficients()) {
        int e = k[0] + k[1];
        if (e < -M)
            continue;
        t.add_to({e}, k[0] % 2 ? -v : v);
    }
    return t;
}

// -[A(x, -x)]_odd, the other presentation of the one-point function.
inline SparseTensor one_point_alternative(AffineTable& table, int M)
{
    GenSeries g = gen_A_direct(table, M);
    SparseTensor t(1);
    t.set_window(0, -M, INF);
    for (const auto& [k, v] : g.A.coefficients()) {
        int e = k[0] + k[1];
        if (e < -M || e % 2 == 0)
            continue;
        t.add_to({e}, k[1] % 2 ? v : -v);
    }
    return t;
}

// -2^{n-1} [sum over n-cycles of prod xi(x_s(i), -x_s(i+1))]_odd (minus the n = 2 correction),
// on exponents in [target_lo, target_hi] with total degree >= -M. Intermediate exponents are
// confined to [-(M + Mp), Mp].
inline SparseTensor cycle_sum(AffineTable& table, int n, int M, int Mp, int target_lo = INT32_MIN, int target_hi = -1)
{
    if (n < 2)
        throw std::invalid_argument("cycle_sum: n must be at least 2");
    if (target_lo == INT32_MIN)
        target_lo = -M;
    const int lo = -(M + Mp), hi = Mp;
    GenSeries g = gen_A_direct(table, M + Mp);

    struct Entry {
        int p, q;
        ParamPoly c;
    };
    std::vector<Entry> at;
    for (const auto& [k, v] : g.Atilde.coefficients()) {
        int p = k[0], q = k[1];
        if (p < lo || p > hi || q < lo || q > hi || p + q < -M)
            continue;
        at.push_back({p, q, v});
    }

    using State = std::map<std::vector<int>, ParamPoly>;
    auto final_ok = [&](int e) { return (e % 2 != 0) && e >= target_lo && e <= target_hi; };

    State total;
    for (const auto& sigma : cycle_plan(n)) {
        State cur;
        cur[std::vector<int>(static_cast<std::size_t>(n), 0)] = ParamPoly(1);
        for (int t = 0; t < n; ++t) {
            const int i = sigma[static_cast<std::size_t>(t)];
            const int j = sigma[static_cast<std::size_t>((t + 1) % n)];
            // i < j: Atilde(x_i, -x_j); i > j: -Atilde(-x_j, x_i).
            const int va = i < j ? i : j, vb = i < j ? j : i;
            std::vector<int> done;
            if (t >= 1)
                done.push_back(i);
            if (t == n - 1)
                done.push_back(j);
            State next;
            for (const auto& [e, c] : cur) {
                int sum = std::accumulate(e.begin(), e.end(), 0);
                for (const auto& en : at) {
                    if (sum + en.p + en.q < -M)
                        continue;
                    std::vector<int> f = e;
                    f[static_cast<std::size_t>(va)] += en.p;
                    f[static_cast<std::size_t>(vb)] += en.q;
                    if (f[static_cast<std::size_t>(va)] < lo || f[static_cast<std::size_t>(va)] > hi ||
                        f[static_cast<std::size_t>(vb)] < lo || f[static_cast<std::size_t>(vb)] > hi)
                        continue;
                    bool ok = true;
                    for (int d : done)
                        ok = ok && final_ok(f[static_cast<std::size_t>(d)]);
                    if (!ok)
                        continue;
                    bool neg = i < j ? (en.q % 2 != 0) : (en.p % 2 == 0);
                    ParamPoly term = c * en.c;
                    auto [it, inserted] = next.try_emplace(std::move(f), ParamPoly{});
                    if (neg)
                        it->second -= term;
                    else
                        it->second += term;
                }
            }
            for (auto it = next.begin(); it != next.end();)
                it = it->second.is_zero() ? next.erase(it) : std::next(it);
            cur = std::move(next);
        }
        for (auto& [e, c] : cur) {
            auto [it, inserted] = total.try_emplace(e, ParamPoly{});
            it->second += c;
        }
    }

    SparseTensor out(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        out.set_window(static_cast<std::size_t>(v), target_lo, target_hi);
    out.set_min_total(-M);
    const Rational scale = -rational_pow(Rational(2), n - 1);
    for (const auto& [e, c] : total)
        out.add_to(e, c * scale);
    if (n == 2) {
        const SparseTensor corr = correction_term(M);
        for (const auto& [e, c] : corr.coefficients())
            if (out.known(e))
                out.add_to(e, -c);
    }
    return out;
}

// Stability protocol: compute with extra window Mp = M and Mp = M + 4 and require equality.
inline SparseTensor npoint_affine(AffineTable& table, int n, int M)
{
    if (n == 1) {
        SparseTensor a = one_point_direct(table, M);
        SparseTensor b = one_point_direct(table, M + 4);
        if (!a.agrees_with(b))
            throw window_instability("one-point function changed when the window grew");
        SparseTensor odd(1);
        odd.set_window(0, -M, -1);
        for (const auto& [e, c] : a.coefficients()) {
            if (e[0] % 2 == 0)
                throw std::logic_error("one-point function has an even power");
            odd.set(e, c);
        }
        return odd;
    }
    SparseTensor a = cycle_sum(table, n, M, M);
    SparseTensor b = cycle_sum(table, n, M, M + 4);
    if (!a.agrees_with(b))
        throw window_instability("cycle sum changed when the window grew");
    return a;
}

// For each odd mu with l(mu) <= n_max and |mu| <= weights[l(mu)]: npoint coefficient = bridge(mu).
inline Report crosscheck_affine_vs_virasoro(AffineTable& table, CorrelatorTable& corr, int n_max,
                                            const std::vector<int>& max_weight_by_n)
{
    Report rep("affine-vs-virasoro");
    for (int n = 1; n <= n_max; ++n) {
        const int M = max_weight_by_n.at(static_cast<std::size_t>(n));
        Stopwatch sw;
        SparseTensor t = npoint_affine(table, n, M);
        std::size_t mismatches = 0, compared = 0;
        std::string first_bad;
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::function<void(int, int)> go = [&](int i, int rem) {
            if (i == n) {
                std::vector<int> e(idx.size());
                for (std::size_t k = 0; k < idx.size(); ++k)
                    e[k] = -idx[k];
                ParamPoly b = bridge(corr, idx);
                ++compared;
                if (!(t.coeff(e) == b)) {
                    ++mismatches;
                    if (first_bad.empty()) {
                        first_bad = "mu=(";
                        for (std::size_t k = 0; k < idx.size(); ++k)
                            first_bad += (k ? "," : "") + std::to_string(idx[k]);
                        first_bad += "): " + t.coeff(e).str() + " vs " + b.str();
                    }
                }
                return;
            }
            for (int p = 1; p <= rem; p += 2) {
                idx[static_cast<std::size_t>(i)] = p;
                go(i + 1, rem - p);
            }
        };
        go(0, M);
        rep.add("n=" + std::to_string(n) + ", |mu|<=" + std::to_string(M) + " (" + std::to_string(compared) +
                    " coefficients, " + std::to_string(mismatches) + " mismatches)",
                mismatches == 0, first_bad, "", sw.seconds());
    }
    return rep;
}

} // namespace gbgw
