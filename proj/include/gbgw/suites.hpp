#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "affine_coords.hpp"
#include "correlators.hpp"
#include "eo_recursion.hpp"
#include "npoint_cycle.hpp"
#include "quantum_curve.hpp"
#include "report.hpp"
#include "schur_q.hpp"

namespace gbgw {

struct RunConfig {
    int genus_max = 2;
    int arity_max = 3;
    int weight_max = 9;
    int window = 20;
    KernelKind kernel = KernelKind::standard;
    std::optional<Rational> u;
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> n{"schurq", "virasoro", "affine", "eo", "qsc"};
    return n;
}

inline std::string suite_anchor(const std::string& suite)
{
    if (suite == "schurq")
        return "Schur Q-function specialization";
    if (suite == "virasoro")
        return "correlator recursion";
    if (suite == "affine")
        return "BKP-affine coordinates and cycle sums";
    if (suite == "eo")
        return "topological recursion equivalence";
    if (suite == "qsc")
        return "Kac-Schwarz operators and quantum curve";
    return suite;
}

namespace detail {
inline std::string mu_string(const std::vector<int>& mu)
{
    std::string r = "(";
    for (std::size_t i = 0; i < mu.size(); ++i)
        r += (i ? "," : "") + std::to_string(mu[i]);
    return r + ")";
}

inline void check_eq(Report& rep, const std::string& id, const ParamPoly& lhs, const ParamPoly& rhs)
{
    rep.add(id, lhs == rhs, lhs.str(), rhs.str());
}

// Every ordered tuple of odd positive parts with the given length and weight <= w.
inline void for_each_ordered_odd(int n, int w, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> cur(static_cast<std::size_t>(n));
    std::function<void(int, int)> go = [&](int i, int rem) {
        if (i == n) {
            f(cur);
            return;
        }
        for (int p = 1; p <= rem; p += 2) {
            cur[static_cast<std::size_t>(i)] = p;
            go(i + 1, rem - p);
        }
    };
    go(0, w);
}
} // namespace detail

inline Report suite_schurq(const RunConfig& cfg)
{
    Report rep("schurq");
    const int W = std::max(cfg.weight_max, 1);
    const auto q = q_series(delta_couplings(), W);
    std::size_t bad = 0, count = 0;
    std::string first;
    for (int w = 1; w <= W; ++w)
        for (const auto& l : strict_partitions(w)) {
            ++count;
            ParamPoly a = Q_lambda(l, q);
            ParamPoly b(Q_delta_closed(l));
            if (!(a == b)) {
                ++bad;
                if (first.empty())
                    first = detail::mu_string(l) + ": " + a.str() + " vs " + b.str();
            }
        }
    rep.add("Pfaffian Q_lambda(delta) equals the product formula, |lambda| <= " + std::to_string(W) + " (" +
                std::to_string(count) + " partitions)",
            bad == 0, first);
    const auto zero = q_series({}, W);
    bool zero_ok = true;
    for (int w = 1; w <= W; ++w)
        for (const auto& l : strict_partitions(w))
            zero_ok = zero_ok && Q_lambda(l, zero).is_zero();
    rep.add("Q_lambda vanishes at zero couplings", zero_ok);
    bool deg_ok = true;
    for (int w = 1; w <= W; ++w)
        for (const auto& l : strict_partitions(w))
            deg_ok = deg_ok && theta_lambda(l).max_degree(U) == w;
    rep.add("deg_u theta_lambda = |lambda|", deg_ok);
    return rep;
}

inline Report suite_virasoro(const RunConfig& cfg)
{
    Report rep("virasoro");
    CorrelatorTable ct;
    const ParamPoly s = poly_s();
    for (int n = 0; 2 * n + 1 <= std::max(cfg.weight_max, 17); ++n) {
        Rational c = rational_pow(Rational(-1), n + 1) / rational_pow(Rational(2), 2 * n + 1) * binomial(2 * n, n) /
                     Rational(n + 1);
        detail::check_eq(rep, "<p_" + std::to_string(2 * n + 1) + ">_0 closed form", ct.value(0, {2 * n + 1}),
                         ParamPoly::monomial(c, 0, 0, n + 1));
    }
    detail::check_eq(rep, "<p_3 p_1>_0 = 3s^2/8", ct.value(0, {3, 1}), ParamPoly::monomial(rat(3, 8), 0, 0, 2));
    detail::check_eq(rep, "<p_3>_1 = -5s/16", ct.value(1, {3}), ParamPoly::monomial(rat(-5, 16), 0, 0, 1));
    detail::check_eq(rep, "<p_1 p_1 p_1>_0 = -s", ct.value(0, {1, 1, 1}), -s);
    detail::check_eq(rep, "<p_3 p_3>_1 = 93s^2/32", ct.value(1, {3, 3}), ParamPoly::monomial(rat(93, 32), 0, 0, 2));
    detail::check_eq(rep, "<p_1^4>_0 = -3s", ct.value(0, {1, 1, 1, 1}), ParamPoly::monomial(Rational(-3), 0, 0, 1));

    // W_{0,2} golden coefficients
    {
        SparseTensor w = wgn(ct, 0, 2, 6);
        const std::vector<std::pair<std::vector<int>, ParamPoly>> gold{
            {{-2, -2}, ParamPoly::monomial(rat(-1, 2), 0, 0, 1)}, {{-2, -4}, ParamPoly::monomial(rat(3, 8), 0, 0, 2)},
            {{-4, -2}, ParamPoly::monomial(rat(3, 8), 0, 0, 2)},  {{-2, -6}, ParamPoly::monomial(rat(-5, 16), 0, 0, 3)},
            {{-4, -4}, ParamPoly::monomial(rat(-3, 8), 0, 0, 3)}, {{-6, -2}, ParamPoly::monomial(rat(-5, 16), 0, 0, 3)}};
        for (const auto& [e, v] : gold)
            detail::check_eq(rep, "W_{0,2} coefficient x^" + std::to_string(e[0]) + " x1^" + std::to_string(e[1]), w.coeff(e), v);
    }
    {
        const int W = std::max(cfg.weight_max, 3);
        SparseTensor w1 = wgn(ct, 0, 1, W);
        LaurentSeries c1 = w01_closed(W);
        bool ok = true;
        for (int k = 2; k <= W + 1; ++k)
            ok = ok && c1.coeff(-k) == w1.coeff({-k});
        rep.add("W_{0,1} closed form equals the recursion through weight " + std::to_string(W), ok);
        rep.add("W_{0,2} closed form equals the recursion through weight " + std::to_string(W),
                w02_closed(W).agrees_with(wgn(ct, 0, 2, W)));
    }
    // distinguished-part independence and homogeneity
    {
        std::size_t bad_dist = 0, bad_hom = 0, count = 0;
        std::string first;
        for (int g = 0; g <= cfg.genus_max; ++g)
            for (int n = 1; n <= cfg.arity_max; ++n)
                for (const auto& mu : odd_partitions(n, cfg.weight_max)) {
                    ++count;
                    ParamPoly v = ct.value(g, mu);
                    ParamPoly small = ct.value_distinguished(g, mu, mu.size() - 1);
                    if (!(v == small)) {
                        ++bad_dist;
                        if (first.empty())
                            first = "g=" + std::to_string(g) + " mu=" + detail::mu_string(mu);
                    }
                    int twice = weight(mu) - n + 2 - 2 * g;
                    bool hom = v.is_zero() ? true : (v.size() == 1 && twice >= 0 && twice % 2 == 0 && v.max_degree(S) == twice / 2 && !v.involves(H) && !v.involves(U));
                    if (twice < 0 && !v.is_zero())
                        hom = false;
                    bad_hom += !hom;
                }
        rep.add("smallest-part recursion agrees with largest-part recursion (" + std::to_string(count) + " keys)",
                bad_dist == 0, first);
        rep.add("every correlator is c s^((|mu|-n+2-2g)/2)", bad_hom == 0);
        bool sym = true;
        for (int n = 2; n <= cfg.arity_max; ++n)
            for (int g = 0; g <= cfg.genus_max; ++g)
                sym = sym && wgn(ct, g, n, cfg.weight_max).is_symmetric();
        rep.add("W_{g,n} tensors are symmetric", sym);
    }
    // cancellation across genera at u = 1/4
    {
        bool ok = true;
        for (int n = 1; n <= cfg.arity_max; ++n)
            for (const auto& mu : odd_partitions(n, cfg.weight_max))
                ok = ok && bridge(ct, mu).evaluate(U, rat(1, 4)).is_zero();
        rep.add("bridged correlators vanish at u = 1/4", ok);
    }
    {
        const int order = std::max(cfg.window, 2);
        DeformationReport d = verify_special_deformation(ct, cfg.arity_max, order, order - 1);
        rep.add("(y^2)_- = s x^-2 at t-degree <= " + std::to_string(cfg.arity_max) + ", orders down to x^-" +
                    std::to_string(order) + " (" + std::to_string(d.checked) + " coefficients)",
                d.ok, d.failures.empty() ? "" : d.failures.front());
    }
    return rep;
}

inline Report suite_affine(const RunConfig& cfg)
{
    Report rep("affine");
    AffineTable at;
    const int T = std::max(cfg.window, 2);
    {
        bool ok = true;
        for (int n = 0; n <= T; ++n)
            for (int m = 0; m <= T; ++m)
                ok = ok && (at.at(n, m) + at.at(m, n)).is_zero();
        rep.add("a_{n,m} = -a_{m,n} for n, m <= " + std::to_string(T), ok);
    }
    {
        std::size_t bad = 0, count = 0;
        std::string first;
        for (int w = 1; w <= cfg.weight_max; ++w)
            for (const auto& l : strict_partitions(w)) {
                ++count;
                auto [a, b] = pfaffian_expansion_sides(at, l);
                if (!(a == b)) {
                    ++bad;
                    if (first.empty())
                        first = detail::mu_string(l);
                }
            }
        rep.add("signed Pfaffian of affine coordinates equals the hypergeometric coefficient, |lambda| <= " +
                    std::to_string(cfg.weight_max) + " (" + std::to_string(count) + " partitions)",
                bad == 0, first);
    }
    rep.append(verify_wronskian(T));
    {
        GenSeries direct = gen_A_direct(at, T);
        GenSeries closed = gen_A_closed(T);
        rep.add("A from the double sum equals A from the closed form (total degree >= -" + std::to_string(T) + ")",
                direct.A.agrees_with(closed.A));
        rep.add("Atilde from the double sum equals Atilde from the closed form", direct.Atilde.agrees_with(closed.Atilde));
        rep.add("4 (w + x) Atilde equals the Phi-numerator", closed_numerator_matches(closed, T));
        rep.add("A is antisymmetric", closed.A.is_antisymmetric() && direct.A.is_antisymmetric());
        rep.add("Atilde(w, x) + Atilde(x, w) equals the formal delta -1/2 sum_i (-1)^i w^-i x^i",
                atilde_symmetrization_is_delta(closed.Atilde, T));
    }
    {
        SparseTensor a = one_point_direct(at, T), b = one_point_alternative(at, T);
        rep.add("A(-x, x) equals -[A(x, -x)]_odd", a.agrees_with(b));
    }
    CorrelatorTable ct;
    {
        std::vector<int> weights(static_cast<std::size_t>(cfg.arity_max + 1), cfg.weight_max);
        Report x = crosscheck_affine_vs_virasoro(at, ct, cfg.arity_max, weights);
        rep.append(x);
    }
    {
        const int M = std::min(cfg.weight_max, 9);
        SparseTensor t = cycle_sum(at, 2, M, M, -M, M);
        bool ok = true;
        for (const auto& [e, c] : t.coefficients())
            if ((e[0] > 0 || e[1] > 0) && e[0] + e[1] >= -M)
                ok = false;
        rep.add("n = 2 correction cancels every positive-exponent term (|exponent| <= " + std::to_string(M) + ")", ok);
    }
    // trivialization at u = 1/4
    {
        const Rational q(rat(1, 4));
        bool table_zero = true;
        for (int n = 0; n <= T; ++n)
            for (int m = 0; m <= T; ++m)
                table_zero = table_zero && at.at(n, m).evaluate(U, q).is_zero();
        rep.add("affine table vanishes at u = 1/4", table_zero);
        bool cyc_zero = true;
        for (int n = 1; n <= cfg.arity_max; ++n) {
            SparseTensor t = npoint_affine(at, n, cfg.weight_max);
            for (const auto& [e, c] : t.coefficients())
                cyc_zero = cyc_zero && c.evaluate(U, q).is_zero();
        }
        rep.add("cycle-sum n-point functions vanish at u = 1/4", cyc_zero);
    }
    if (cfg.u) {
        bool ok = true;
        for (int n = 1; n <= cfg.arity_max; ++n) {
            SparseTensor t = npoint_affine(at, n, cfg.weight_max);
            detail::for_each_ordered_odd(n, cfg.weight_max, [&](const std::vector<int>& mu) {
                std::vector<int> e;
                for (int p : mu)
                    e.push_back(-p);
                ok = ok && t.coeff(e).evaluate(U, *cfg.u) == bridge(ct, mu).evaluate(U, *cfg.u);
            });
        }
        rep.add("cycle sums equal bridged correlators at u = " + rational_string(*cfg.u), ok);
    }
    return rep;
}

inline Report suite_eo(const RunConfig& cfg)
{
    Report rep("eo");
    EORecursion eo(cfg.kernel);
    EORecursion standard(KernelKind::standard);
    const ParamPoly s = poly_s();
    auto mono = [](Rational c, int e) { return ParamPoly::monomial(c, 0, 0, e); };
    {
        KTable w03{{{0, 0, 0}, s}};
        KTable w11{{{0}, mono(rat(-1, 8), 0)}, {{1}, mono(rat(1, 8), 1)}};
        KTable w04{{{0, 0, 0, 0}, mono(Rational(-3), 1)},
                   {{1, 0, 0, 0}, mono(Rational(3), 2)},
                   {{0, 1, 0, 0}, mono(Rational(3), 2)},
                   {{0, 0, 1, 0}, mono(Rational(3), 2)},
                   {{0, 0, 0, 1}, mono(Rational(3), 2)}};
        // (z0^4 z1^4 - 6s(z0^4 z1^2 + z0^2 z1^4) + 3s^2 z0^2 z1^2 + 5s^2(z0^4 + z1^4)) / (8 z0^6 z1^6)
        KTable w12{{{0, 0}, mono(rat(1, 8), 0)},  {{1, 0}, mono(rat(-6, 8), 1)}, {{0, 1}, mono(rat(-6, 8), 1)},
                   {{1, 1}, mono(rat(3, 8), 2)},  {{2, 0}, mono(rat(5, 8), 2)},  {{0, 2}, mono(rat(5, 8), 2)}};
        rep.add("omega_{0,3} = s/(z0^2 z1^2 z2^2)", eo.omega(0, 3) == w03);
        rep.add("omega_{0,4} display", eo.omega(0, 4) == w04);
        rep.add("omega_{1,1} = -1/(8z^2) + s/(8z^4)", eo.omega(1, 1) == w11);
        rep.add("omega_{1,2} display", eo.omega(1, 2) == w12);
    }
    {
        SpectralCurve c(cfg.window);
        LaurentSeries d = c.curve_defect();
        rep.add("x(z)^2 y(z)^2 = x(z)^2 + s", d.is_zero_in_window());
    }
    {
        auto a = kernel_series(KernelKind::standard, cfg.window);
        auto b = kernel_series(KernelKind::typeB, cfg.window);
        bool odd = true;
        for (const auto& row : a)
            for (const auto& [e, c] : row)
                odd = odd && (e % 2 != 0);
        rep.add("kernel has only odd powers of z", odd);
        rep.add("type-B kernel equals the standard kernel termwise", a == b);
    }
    CorrelatorTable ct;
    ClosedStep cs;
    bool closed_ok = true, sym_ok = true, round_ok = true, raw_ok = true, zero_ok = true;
    for (int g = 0; g <= cfg.genus_max; ++g)
        for (int n = 1; n <= cfg.arity_max; ++n) {
            if (!is_stable(g, n))
                continue;
            rep.append(verify_equivalence(eo, ct, g, n, cfg.weight_max));
            const KTable& raw = eo.omega(g, n);
            closed_ok = closed_ok && denormalize(cs.A(g, n)) == raw;
            for (const auto& [ks, v] : raw) {
                std::vector<int> p = ks;
                std::sort(p.begin(), p.end());
                do {
                    auto it = raw.find(p);
                    sym_ok = sym_ok && it != raw.end() && it->second == v;
                } while (std::next_permutation(p.begin(), p.end()));
            }
            const int W = 2 * stable_dim(g, n) + n;
            KTable a = normalize(raw);
            KTable b = to_x(a, n, W);
            round_ok = round_ok && from_x(b, n, W) == a;
            KTable braw = raw_to_x(raw, n, W);
            KTable bn = denormalize(b);
            raw_ok = raw_ok && braw == bn;
            // s = 0 reproduces the original BGW data
            for (const auto& [l, v] : b) {
                std::vector<int> mu;
                for (int k : l)
                    mu.push_back(2 * k + 1);
                ParamPoly lhs = (v * dfact_prod(l)).evaluate(S, Rational(0));
                ParamPoly rhs = (ct.value(g, mu) * Rational(n % 2 ? -1 : 1)).evaluate(S, Rational(0));
                zero_ok = zero_ok && lhs == rhs;
            }
        }
    rep.add("closed-step recursion reproduces the residue computation", closed_ok);
    rep.add("omega_{g,n} symmetric in its arguments", sym_ok);
    rep.add("A -> B -> A round trip is the identity", round_ok);
    rep.add("half-binomial z-to-x expansion equals the normalized transform", raw_ok);
    rep.add("s = 0 specialization matches the s = 0 correlators", zero_ok);
    {
        bool ok = true;
        for (int k = 0; 2 * k + 1 <= cfg.weight_max; ++k)
            ok = ok && B01(k) * double_factorial(2 * k + 1) == -ct.value(0, {2 * k + 1});
        rep.add("B_{0,1} closed form matches -<p_{2k+1}>_0", ok);
        bool ok2 = true;
        for (int k1 = 0; 2 * k1 + 1 <= cfg.weight_max; ++k1)
            for (int k2 = 0; 2 * (k1 + k2) + 2 <= cfg.weight_max; ++k2)
                ok2 = ok2 && B02(k1, k2) * (double_factorial(2 * k1 + 1) * double_factorial(2 * k2 + 1)) ==
                                 ct.value(0, {2 * k1 + 1, 2 * k2 + 1});
        rep.add("B_{0,2} closed form matches <p_{2k1+1} p_{2k2+1}>_0", ok2);
    }
    if (cfg.kernel == KernelKind::standard)
        rep.append(compare_kernels(cfg.genus_max, cfg.arity_max));
    return rep;
}

inline Report suite_qsc(const RunConfig& cfg)
{
    Report rep("qsc");
    QuantumCurve qc{cfg.u};
    AffineTable at;
    const int T = std::max(cfg.window, 4) + 4;
    const int depth = T - 4;
    rep.append(verify_ks(qc, at, std::min(8, depth), T, depth));
    rep.append(commutator_check(qc, depth));
    {
        MonomialOperator a = qc.P(), b = qc.P_factored();
        bool ok = true;
        for (int k = -depth; k <= depth; ++k)
            ok = ok && (a.apply_monomial(k) - b.apply_monomial(k)).is_zero_in_window();
        rep.add("P monomial action equals its factored definition", ok);
    }
    rep.append(semiclassical_identity());
    return rep;
}

inline Report run_suite(const std::string& name, const RunConfig& cfg)
{
    if (name == "schurq")
        return suite_schurq(cfg);
    if (name == "virasoro")
        return suite_virasoro(cfg);
    if (name == "affine")
        return suite_affine(cfg);
    if (name == "eo")
        return suite_eo(cfg);
    if (name == "qsc")
        return suite_qsc(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace gbgw
