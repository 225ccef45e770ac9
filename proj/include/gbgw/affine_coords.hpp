#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exact_algebra.hpp"
#include "report.hpp"
#include "schur_q.hpp"

namespace gbgw {

// BKP-affine coordinates a_{n,m} of the gBGW tau-function at t/2.
class AffineTable {
public:
    ParamPoly at(int n, int m)
    {
        if (n < 0 || m < 0)
            throw std::out_of_range("affine: negative index");
        if (n == m)
            return {};
        if (m == 0)
            return -at(0, n);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find({n, m});
            if (it != memo_.end())
                return it->second;
        }
        ParamPoly v;
        if (n == 0) {
            Rational c = Rational(1) / (rational_pow(Rational(2), 3 * m + 1) * factorial(m));
            v = ParamPoly::monomial(c, m) * theta_prod(m);
        } else {
            Rational c = rat(m - n, m + n) /
                         (rational_pow(Rational(2), 3 * m + 3 * n + 2) * factorial(m) * factorial(n));
            v = ParamPoly::monomial(c, n + m) * theta_prod(m) * theta_prod(n);
        }
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.try_emplace({n, m}, std::move(v)).first->second;
    }

    // prod_{k=1}^{n} theta(k)
    ParamPoly theta_prod(int n)
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (prods_.empty())
            prods_.push_back(ParamPoly(1));
        while (static_cast<int>(prods_.size()) <= n)
            prods_.push_back(prods_.back() * theta(static_cast<int>(prods_.size())));
        return prods_[static_cast<std::size_t>(n)];
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, ParamPoly> memo_;
    std::vector<ParamPoly> prods_;
};

struct BasisPair {
    LaurentSeries phi1, phi2;
};

// Phi_1 and Phi_2 in the variable z, exact through z^-T. Phi_2 is odd in N.
inline BasisPair basis_pair(int T)
{
    if (T < 1)
        throw std::invalid_argument("basis_pair: T must be positive");
    BasisPair b{LaurentSeries("z", -T, INF), LaurentSeries("z", -T, INF)};
    const ParamPoly four_u = 4 * poly_u();
    const ParamPoly one_minus_N = ParamPoly(1) - poly_N();
    const ParamPoly four_shift = 4 * one_minus_N * one_minus_N;
    b.phi1.set(0, ParamPoly(1));
    b.phi2.set(1, ParamPoly(1));
    ParamPoly p1(1), p2(1);
    for (int k = 1; k <= T + 1; ++k) {
        const long odd_sq = (2L * k - 1) * (2L * k - 1);
        p1 *= four_u - ParamPoly(odd_sq);
        p2 *= four_shift - ParamPoly(odd_sq);
        Rational c = Rational(1) / (rational_pow(Rational(8), k) * factorial(k));
        if (k % 2)
            c = -c;
        ParamPoly hk = ParamPoly::monomial(c, k);
        if (k <= T)
            b.phi1.set(-k, hk * p1);
        b.phi2.set(1 - k, hk * p2);
    }
    return b;
}

// Direct double sum:
// A(w,x) = sum_{n,m>0} (-1)^{m+n+1} a_{n,m} w^-n x^-m - sum_n (-1)^n/2 a_{n,0} (w^-n - x^-n),
// with all n, m <= L. Atilde = A - 1/4 - 1/2 sum_{i>=1} (-1)^i w^-i x^i.
struct GenSeries {
    BiSeries A, Atilde;
};

inline GenSeries gen_A_direct(AffineTable& table, int L)
{
    GenSeries g{BiSeries(2), BiSeries(2)};
    for (BiSeries* t : {&g.A, &g.Atilde}) {
        t->set_names({"w", "x"});
        t->set_window(0, -L, INF);
        t->set_window(1, -L, INF);
    }
    for (int n = 1; n <= L; ++n) {
        for (int m = 1; m <= L; ++m) {
            ParamPoly v = table.at(n, m);
            g.A.set({-n, -m}, (n + m) % 2 ? v : -v);
        }
        ParamPoly half = table.at(n, 0) * rat(n % 2 ? 1 : -1, 2); // -(-1)^n/2 a_{n,0}
        g.A.add_to({-n, 0}, half);
        g.A.add_to({0, -n}, -half);
    }
    g.Atilde = g.A;
    g.Atilde.add_to({0, 0}, ParamPoly(rat(-1, 4)));
    for (int i = 1; i <= L; ++i)
        g.Atilde.add_to({-i, i}, ParamPoly(rat(i % 2 ? 1 : -1, 2)));
    return g;
}

namespace detail {
// Slices by total degree of the series numerator(w, x) = Phi1(-x) Phi2(-w) - Phi1(-w) Phi2(-x),
// keyed total degree -> (w exponent -> coefficient). Only slices of degree >= 1 - T are complete.
inline std::map<int, std::map<int, ParamPoly>> phi_numerator_slices(const BasisPair& b, int T)
{
    std::map<int, std::map<int, ParamPoly>> slices;
    auto put = [&](int i, int j, const ParamPoly& c) {
        auto& slot = slices[i + j][i];
        slot += c;
        if (slot.is_zero())
            slices[i + j].erase(i);
    };
    LaurentSeries p1m = b.phi1.reflect_sign(), p2m = b.phi2.reflect_sign();
    for (const auto& [e1, c1] : p1m.coefficients())
        for (const auto& [e2, c2] : p2m.coefficients()) {
            if (e1 + e2 < 1 - T)
                continue;
            ParamPoly c = c1 * c2;
            put(e2, e1, c);  // Phi1(-x) Phi2(-w)
            put(e1, e2, -c); // -Phi1(-w) Phi2(-x)
        }
    for (auto it = slices.begin(); it != slices.end();)
        it = it->second.empty() ? slices.erase(it) : std::next(it);
    return slices;
}
} // namespace detail

// Closed form: A = (w - x + numerator) / (4 (w + x)) by exact slice division. Valid for total degree >= -T.
inline GenSeries gen_A_closed(int T)
{
    BasisPair b = basis_pair(T);
    auto slices = detail::phi_numerator_slices(b, T);
    auto& deg1 = slices[1];
    for (auto [i, c] : std::map<int, ParamPoly>{{1, ParamPoly(1)}, {0, ParamPoly(-1)}}) {
        deg1[i] += c;
        if (deg1[i].is_zero())
            deg1.erase(i);
    }
    const std::map<int, Rational> w_plus_x{{1, Rational(1)}, {0, Rational(1)}};
    GenSeries g{BiSeries(2), BiSeries(2)};
    g.A.set_names({"w", "x"});
    g.A.set_min_total(-T);
    for (auto& [t, slice] : slices) {
        if (t < 1 - T || slice.empty())
            continue;
        auto q = divide_homogeneous_slice(slice, w_plus_x);
        for (auto& [i, c] : q) {
            if (c.involves(NU))
                throw std::logic_error("gen_A_closed: odd power of N survived");
            g.A.set({i, t - 1 - i}, c * rat(1, 4));
        }
    }
    g.Atilde = g.A;
    g.Atilde.set_window(0, -T, INF);
    g.Atilde.set_window(1, -T, INF);
    g.Atilde.add_to({0, 0}, ParamPoly(rat(-1, 4)));
    for (int i = 1; i <= T; ++i)
        g.Atilde.add_to({-i, i}, ParamPoly(rat(i % 2 ? 1 : -1, 2)));
    return g;
}

// As a rational function Atilde is antisymmetric; its expansion in |w| > |x| is not, and
// Atilde(w, x) + Atilde(x, w) is the formal delta -1/2 sum_{i in Z} (-1)^i w^-i x^i.
inline bool atilde_symmetrization_is_delta(const BiSeries& At, int T)
{
    BiSeries sym = At + At.permuted({1, 0});
    BiSeries delta = sym;
    for (const auto& [e, c] : sym.coefficients())
        delta.set(e, ParamPoly());
    for (int i = -T; i <= T; ++i)
        delta.set({-i, i}, ParamPoly(rat(i % 2 ? -1 : 1, 2)));
    return (sym + delta).agrees_with(sym - sym);
}

// 4 (w + x) Atilde against the Phi-numerator, on all complete slices.
inline bool closed_numerator_matches(const GenSeries& closed, int T)
{
    BasisPair b = basis_pair(T);
    auto slices = detail::phi_numerator_slices(b, T);
    const BiSeries& At = closed.Atilde;
    // (p, q) with p, q >= 1 - T and p + q >= 1 - T uses only known entries of Atilde.
    for (int p = 1 - T; p <= T; ++p)
        for (int q = 1 - T; q <= T; ++q) {
            if (p + q < 1 - T || p + q > 1)
                continue;
            ParamPoly lhs = (At.coeff({p - 1, q}) + At.coeff({p, q - 1})) * Rational(4);
            ParamPoly rhs;
            auto s = slices.find(p + q);
            if (s != slices.end()) {
                auto it = s->second.find(p);
                if (it != s->second.end())
                    rhs = it->second;
            }
            if (!(lhs == rhs))
                return false;
        }
    return true;
}

// Wronskian-type identities through z^-T.
inline Report verify_wronskian(int T)
{
    Report rep("wronskian");
    // (i) Phi1(-z) Phi2(z) - Phi1(z) Phi2(-z) = 2z
    {
        BasisPair b = basis_pair(T + 1);
        LaurentSeries w = b.phi1.reflect_sign() * b.phi2 - b.phi1 * b.phi2.reflect_sign();
        LaurentSeries two_z = LaurentSeries::monomial("z", 1, ParamPoly(2));
        LaurentSeries diff = (w - two_z).restricted(-T, INF);
        rep.add("wronskian combination equals 2z", diff.is_zero_in_window() && diff.lo() <= -T,
                "window z^" + std::to_string(diff.lo()), "2z");
    }
    // (ii) det G = 1
    {
        BasisPair b = basis_pair(2 * T + 2);
        LaurentSeries g11("x", -T, INF), g12("x", -T, INF), g21("x", -T, INF), g22("x", -T, INF);
        g11.set(0, ParamPoly(1));
        g22.set(0, ParamPoly(1));
        auto a = [&](int j) { return b.phi1.coeff(-j); };
        auto bb = [&](int j) { return b.phi2.coeff(1 - j); }; // z^-1 Phi2 = 1 + sum b_j z^-j
        for (int n = 0; n <= T; ++n) {
            if (n >= 1) {
                g11.set(-n, a(2 * n));
                g21.set(-n, a(2 * n - 1));
                g22.set(-n, bb(2 * n));
            }
            g12.set(-n, bb(2 * n + 1));
        }
        LaurentSeries det = g11 * g22 - g12 * g21;
        LaurentSeries diff = (det - LaurentSeries::monomial("x", 0, ParamPoly(1))).restricted(-T, INF);
        rep.add("det G equals 1", diff.is_zero_in_window() && diff.lo() <= -T, "det G", "1");
    }
    // (iii) h Phi1'' + 2 Phi1' = (h/z^2)(u - 1/4) Phi1
    {
        BasisPair b = basis_pair(T + 2);
        LaurentSeries d1 = b.phi1.derivative();
        LaurentSeries lhs = d1.derivative() * poly_h() + d1 * ParamPoly(2);
        LaurentSeries rhs = b.phi1.shift(-2) * (poly_h() * (poly_u() - ParamPoly(rat(1, 4))));
        LaurentSeries diff = (lhs - rhs).restricted(-T, INF);
        rep.add("Phi1 second-order equation", diff.is_zero_in_window() && diff.lo() <= -T,
                "h Phi1'' + 2 Phi1'", "(h/z^2)(u - 1/4) Phi1");
    }
    // (iv) Phi2 = h z Phi1' + z Phi1 + h (N - 1/2) Phi1, in the ring extended by N
    {
        BasisPair b = basis_pair(T + 1);
        LaurentSeries rhs = b.phi1.derivative().shift(1) * poly_h() + b.phi1.shift(1) +
                            b.phi1 * (poly_h() * (poly_N() - ParamPoly(rat(1, 2))));
        LaurentSeries diff = (b.phi2 - rhs).restricted(-T, INF);
        rep.add("Phi2 from Phi1 (N adjoined, N^2 = u)", diff.is_zero_in_window() && diff.lo() <= -T,
                "Phi2", "h z Phi1' + z Phi1 + h (N - 1/2) Phi1");
    }
    return rep;
}

// (-1)^ceil(l/2) Pf(a_{l_i, l_j}) against hypergeom_coeff, odd length padded with index 0.
inline std::pair<ParamPoly, ParamPoly> pfaffian_expansion_sides(AffineTable& table, const StrictPartition& l)
{
    check_strict(l);
    StrictPartition p = l;
    if (p.size() % 2)
        p.push_back(0);
    Matrix<ParamPoly> m(p.size(), std::vector<ParamPoly>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (i != j)
                m[i][j] = table.at(p[i], p[j]);
    ParamPoly lhs = pfaffian(m);
    if (((l.size() + 1) / 2) % 2)
        lhs = -lhs;
    return {lhs, hypergeom_coeff(l)};
}

inline bool verify_pfaffian_expansion(AffineTable& table, const StrictPartition& l)
{
    auto [lhs, rhs] = pfaffian_expansion_sides(table, l);
    return lhs == rhs;
}

} // namespace gbgw
