#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "correlators.hpp"
#include "exact_algebra.hpp"
#include "report.hpp"

namespace gbgw {

enum class KernelKind { standard, typeB };

inline std::string kernel_name(KernelKind k) { return k == KernelKind::standard ? "standard" : "typeB"; }
inline KernelKind parse_kernel(const std::string& s)
{
    if (s == "standard")
        return KernelKind::standard;
    if (s == "typeB")
        return KernelKind::typeB;
    throw std::invalid_argument("unknown kernel kind: " + s);
}

// k-tuple -> coefficient. Raw tables hold the coefficient of prod z_i^(-2k_i-2) dz_i.
using KTable = std::map<std::vector<int>, ParamPoly>;

struct residue_window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x(z) = z sqrt(1 - s z^-2), y = z / x, known through z^-depth (relative to the leading term).
struct SpectralCurve {
    LaurentSeries x, y, dx, ydx;

    explicit SpectralCurve(int depth)
    {
        LaurentSeries base = LaurentSeries::finite("z", {{0, ParamPoly(1)}, {-2, -poly_s()}});
        LaurentSeries root = series_sqrt(base, depth);
        x = root.shift(1);
        y = series_inverse(root, depth);
        dx = x.derivative();
        ydx = y * dx;
    }

    // x^2 y^2 - x^2 - s, which must vanish in the window.
    LaurentSeries curve_defect() const
    {
        LaurentSeries xx = x * x;
        return xx * (y * y) - xx - LaurentSeries::finite("z", {{0, poly_s()}});
    }
};

// Coefficient c_m of the Bergman kernel near z = 0: B(z, w) = sum_m c_m z^m w^(-m-2) dz dw.
inline Rational bergman_coeff(KernelKind kind, int m)
{
    if (kind == KernelKind::standard)
        return Rational(m + 1);
    return m % 2 == 0 ? Rational(m + 1) : Rational(0);
}

// Recursion kernel K(z0, z) = (1/2) int_{-z}^{z} B(z0, .) / (omega01(z) - omega01(-z)),
// returned as j -> (z exponent -> coefficient) of z0^(-2j-2).
inline std::vector<std::map<int, ParamPoly>> kernel_series(KernelKind kind, int max_j)
{
    // omega01(z) - omega01(sigma z) = 2 y dx; its inverse in descending powers.
    SpectralCurve curve(2 * max_j + 6);
    LaurentSeries diff = curve.ydx * Rational(2);
    LaurentSeries inv = series_inverse(diff, 2 * max_j + 6);
    std::vector<std::map<int, ParamPoly>> out(static_cast<std::size_t>(max_j + 1));
    for (int j = 0; j <= max_j; ++j) {
        // int_{-z}^{z} sum_m c_m t^m dt: only even m survive, 2 c_m/(m+1) z^(m+1), here m = 2j.
        Rational integral = Rational(2) * bergman_coeff(kind, 2 * j) / Rational(2 * j + 1);
        for (const auto& [e, c] : inv.coefficients()) {
            int exp = 2 * j + 1 + e;
            if (exp < 2 * j + 1 - 2 * (max_j + 2))
                continue;
            ParamPoly v = c * (integral / 2);
            if (!v.is_zero())
                out[static_cast<std::size_t>(j)][exp] += v;
        }
    }
    return out;
}

inline int stable_dim(int g, int n) { return 3 * g - 3 + n; }
inline bool is_stable(int g, int n) { return g >= 0 && n >= 1 && 2 * g - 2 + n > 0; }

namespace detail {
// Series in the distinguished variable z with coefficients indexed by the exponents of the
// remaining variables (exponents, not k, since Bergman factors produce every power).
using Bracket = std::map<std::pair<int, std::vector<int>>, ParamPoly>;

inline void bracket_add(Bracket& b, int ze, std::vector<int> rest, const ParamPoly& v)
{
    if (v.is_zero())
        return;
    auto [it, inserted] = b.try_emplace({ze, std::move(rest)}, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero())
            b.erase(it);
    }
}

// One factor of the splitting sum, with its first slot in z (or sigma z), as a list of
// (z exponent, exponents of the assigned variables, coefficient).
struct FactorTerm {
    int ze;
    std::vector<int> rest;
    ParamPoly c;
};

inline std::vector<int> exps_of(const std::vector<int>& ks, std::size_t from)
{
    std::vector<int> r;
    for (std::size_t i = from; i < ks.size(); ++i)
        r.push_back(-2 * ks[i] - 2);
    return r;
}
} // namespace detail

// Eynard-Orantin invariants on x^2 y^2 = x^2 + s, by residues at z = 0.
class EORecursion {
public:
    explicit EORecursion(KernelKind kind = KernelKind::standard) : kind_(kind) {}

    KernelKind kind() const { return kind_; }

    const KTable& omega(int g, int n)
    {
        if (!is_stable(g, n))
            throw std::invalid_argument("omega: (" + std::to_string(g) + "," + std::to_string(n) + ") is unstable");
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find({g, n});
            if (it != memo_.end())
                return it->second;
        }
        KTable v = compute(g, n);
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.try_emplace({g, n}, std::move(v)).first->second;
    }

private:
    KernelKind kind_;
    std::mutex mu_;
    std::map<std::pair<int, int>, KTable> memo_;

    // Terms of a factor omega_{g1, 1+|vars|}(z or sigma z, vars...) for the splitting sum.
    std::vector<detail::FactorTerm> factor(int g1, std::size_t nvars, bool sigma, int max_pos)
    {
        std::vector<detail::FactorTerm> out;
        if (g1 == 0 && nvars == 1) {
            for (int m = 0; m <= max_pos; ++m) {
                Rational c = bergman_coeff(kind_, m);
                if (c == 0)
                    continue;
                // pullback by sigma multiplies the z^e dz coefficient by (-1)^(e+1)
                if (sigma && m % 2 == 0)
                    c = -c;
                out.push_back({m, {-m - 2}, ParamPoly(c)});
            }
            return out;
        }
        for (const auto& [ks, v] : omega(g1, static_cast<int>(nvars) + 1)) {
            int ze = -2 * ks[0] - 2;
            out.push_back({ze, detail::exps_of(ks, 1), sigma ? ParamPoly(-v) : v});
        }
        return out;
    }

    KTable seeded(int g, int n) const
    {
        if (kind_ == KernelKind::typeB && g == 1 && n == 1)
            return {{{0}, ParamPoly(rat(-1, 8))}, {{1}, ParamPoly::monomial(rat(1, 8), 0, 0, 1)}};
        return {};
    }

    KTable compute(int g, int n1)
    {
        if (kind_ == KernelKind::typeB && g == 1 && n1 == 1)
            return seeded(1, 1);
        const int n = n1 - 1;
        const int top = stable_dim(g, n1);
        const int jmax = top + 3; // three extra slots that must come out zero
        const int max_pos = 2 * jmax + 2;
        detail::Bracket br;

        // omega_{g-1, n+2}(z, sigma z, rest)
        if (g >= 1) {
            if (g == 1 && n == 0) {
                if (kind_ == KernelKind::typeB)
                    throw std::domain_error("type-B kernel: omega02(z, sigma z) is singular");
                // dz d(-z) / (2z)^2
                detail::bracket_add(br, -2, {}, ParamPoly(rat(-1, 4)));
            } else {
                for (const auto& [ks, v] : omega(g - 1, n + 2)) {
                    int ze = -2 * ks[0] - 2 - 2 * ks[1] - 2;
                    detail::bracket_add(br, ze, detail::exps_of(ks, 2), -v);
                }
            }
        }

        // stable-or-Bergman splittings, omega01 excluded
        for (int g1 = 0; g1 <= g; ++g1) {
            const int g2 = g - g1;
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> I, J;
                for (int i = 0; i < n; ++i)
                    ((mask >> i) & 1u ? I : J).push_back(i);
                const int nI = static_cast<int>(I.size()), nJ = static_cast<int>(J.size());
                if (2 * g1 - 1 + nI < 0 || 2 * g2 - 1 + nJ < 0)
                    continue;
                auto f1 = factor(g1, I.size(), false, max_pos);
                auto f2 = factor(g2, J.size(), true, max_pos);
                for (const auto& a : f1) {
                    for (const auto& b : f2) {
                        int ze = a.ze + b.ze;
                        if (ze > 0 || ze < -2 * jmax - 2)
                            continue;
                        std::vector<int> rest(static_cast<std::size_t>(n));
                        for (int t = 0; t < nI; ++t)
                            rest[static_cast<std::size_t>(I[static_cast<std::size_t>(t)])] = a.rest[static_cast<std::size_t>(t)];
                        for (int t = 0; t < nJ; ++t)
                            rest[static_cast<std::size_t>(J[static_cast<std::size_t>(t)])] = b.rest[static_cast<std::size_t>(t)];
                        detail::bracket_add(br, ze, std::move(rest), a.c * b.c);
                    }
                }
            }
        }

        // Res_z K_j(z) Br(z): pair each kernel power z^e with the bracket coefficient at z^(-1-e).
        auto kernel = kernel_series(kind_, jmax);
        std::map<std::vector<int>, std::map<int, ParamPoly>> by_rest;
        for (const auto& [key, v] : br)
            by_rest[key.second][key.first] = v;
        KTable out;
        for (const auto& [rest, zs] : by_rest) {
            std::vector<int> kr;
            for (int e : rest) {
                if (e % 2 != 0 || e > -2)
                    throw std::logic_error("omega: odd or non-negative exponent survived in a remaining variable");
                kr.push_back((-e - 2) / 2);
            }
            for (int j = 0; j <= jmax; ++j) {
                ParamPoly acc;
                for (const auto& [e, kc] : kernel[static_cast<std::size_t>(j)]) {
                    auto it = zs.find(-1 - e);
                    if (it != zs.end())
                        acc += kc * it->second;
                }
                if (acc.is_zero())
                    continue;
                if (j > top)
                    throw residue_window_error("omega(" + std::to_string(g) + "," + std::to_string(n1) +
                                               "): nonzero coefficient past the expected support");
                std::vector<int> key{j};
                key.insert(key.end(), kr.begin(), kr.end());
                out[key] += acc;
            }
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }
};

inline Rational dfact_prod(const std::vector<int>& ks)
{
    Rational d(1);
    for (int k : ks)
        d *= double_factorial(2 * k + 1);
    return d;
}

// A_{g,n}^{k...} = raw coefficient / prod (2k_i+1)!!.
inline KTable normalize(const KTable& raw)
{
    KTable out;
    for (const auto& [ks, v] : raw)
        out[ks] = v * (Rational(1) / dfact_prod(ks));
    return out;
}
inline KTable denormalize(const KTable& a)
{
    KTable out;
    for (const auto& [ks, v] : a)
        out[ks] = v * dfact_prod(ks);
    return out;
}

// Normalized A-tables from the simplified coefficient recursion. omega_{0,3} and omega_{1,1}
// are seeded; every other entry is solved triangularly in the first index.
class ClosedStep {
public:
    const KTable& A(int g, int n)
    {
        if (!is_stable(g, n))
            throw std::invalid_argument("closed step: unstable (g,n)");
        auto it = memo_.find({g, n});
        if (it != memo_.end())
            return it->second;
        KTable v = compute(g, n);
        return memo_.emplace(std::make_pair(g, n), std::move(v)).first->second;
    }

    ParamPoly value(int g, int n, const std::vector<int>& ks)
    {
        for (int k : ks)
            if (k < 0)
                return ParamPoly{};
        const KTable& t = A(g, n);
        auto it = t.find(ks);
        return it == t.end() ? ParamPoly{} : it->second;
    }

private:
    std::map<std::pair<int, int>, KTable> memo_;

    static ParamPoly ms2_pow(int e) { return ParamPoly::monomial(rational_pow(rat(-1, 2), e), 0, 0, e); }

    KTable compute(int g, int n1)
    {
        if (g == 0 && n1 == 3)
            return {{{0, 0, 0}, poly_s()}};
        if (g == 1 && n1 == 1)
            return {{{0}, ParamPoly(rat(-1, 8))}, {{1}, ParamPoly::monomial(rat(1, 24), 0, 0, 1)}};
        const int n = n1 - 1;
        const int d = stable_dim(g, n1);
        KTable out;
        std::vector<int> ks(static_cast<std::size_t>(n));
        std::function<void(int, int)> go = [&](int i, int rem) {
            if (i == n) {
                solve_column(g, n, ks, rem + 3, out);
                return;
            }
            for (int k = 0; k <= rem; ++k) {
                ks[static_cast<std::size_t>(i)] = k;
                go(i + 1, rem - k);
            }
        };
        go(0, d);
        // finiteness: nothing beyond the dimension bound
        for (const auto& [key, v] : out) {
            int sum = 0;
            for (int k : key)
                sum += k;
            if (sum > d)
                throw residue_window_error("closed step: coefficient past the dimension bound");
        }
        return out;
    }

    // Fills A(g, n+1)(m, ks) for m = 0..mmax.
    void solve_column(int g, int n, const std::vector<int>& ks, int mmax, KTable& out)
    {
        std::vector<ParamPoly> col;
        for (int m = 0; m <= mmax; ++m) {
            ParamPoly rhs;
            // merged-variable terms
            for (int i = 0; i < n; ++i) {
                const int ki = ks[static_cast<std::size_t>(i)];
                std::vector<int> rest;
                for (int t = 0; t < n; ++t)
                    if (t != i)
                        rest.push_back(ks[static_cast<std::size_t>(t)]);
                for (int k0 = 0; k0 <= m + 1; ++k0) {
                    const int kk = ki + k0 - 1;
                    if (kk < 0)
                        continue;
                    std::vector<int> key{kk};
                    key.insert(key.end(), rest.begin(), rest.end());
                    ParamPoly a = value(g, n, key);
                    if (a.is_zero())
                        continue;
                    Rational c = binomial(m + 1, k0) * double_factorial(2 * ki + 2 * k0 - 1) /
                                 (rational_pow(Rational(2), k0) * double_factorial(2 * ki - 1));
                    rhs -= ms2_pow(m + 1 - k0) * a * c;
                }
            }
            // genus-reducing and splitting terms
            for (int a = 0; a <= m - 1; ++a) {
                for (int b = 0; a + b <= m - 1; ++b) {
                    ParamPoly t;
                    if (g >= 1) {
                        std::vector<int> key{a, b};
                        key.insert(key.end(), ks.begin(), ks.end());
                        if (is_stable(g - 1, n + 2))
                            t += value(g - 1, n + 2, key);
                    }
                    for (int g1 = 0; g1 <= g; ++g1) {
                        const int g2 = g - g1;
                        for (unsigned mask = 0; mask < (1u << n); ++mask) {
                            std::vector<int> ka{a}, kb{b};
                            for (int i = 0; i < n; ++i)
                                ((mask >> i) & 1u ? ka : kb).push_back(ks[static_cast<std::size_t>(i)]);
                            const int nI = static_cast<int>(ka.size()), nJ = static_cast<int>(kb.size());
                            if (!is_stable(g1, nI) || !is_stable(g2, nJ))
                                continue;
                            ParamPoly x = value(g1, nI, ka);
                            if (x.is_zero())
                                continue;
                            ParamPoly y = value(g2, nJ, kb);
                            if (!y.is_zero())
                                t += x * y;
                        }
                    }
                    if (t.is_zero())
                        continue;
                    Rational c = binomial(m + 1, a + b + 2) * double_factorial(2 * a + 1) * double_factorial(2 * b + 1) /
                                 rational_pow(Rational(2), a + b + 2);
                    rhs -= ms2_pow(m - 1 - a - b) * t * Rational(c / 2);
                }
            }
            // lower-triangular left side
            for (int k0 = 0; k0 < m; ++k0) {
                if (col[static_cast<std::size_t>(k0)].is_zero())
                    continue;
                Rational c = binomial(m, k0) * double_factorial(2 * k0 + 1) / rational_pow(Rational(2), k0 + 1);
                rhs -= ms2_pow(m - k0) * col[static_cast<std::size_t>(k0)] * c;
            }
            Rational diag = double_factorial(2 * m + 1) / rational_pow(Rational(2), m + 1);
            col.push_back(rhs * (Rational(1) / diag));
        }
        for (int m = 0; m <= mmax; ++m) {
            if (col[static_cast<std::size_t>(m)].is_zero())
                continue;
            std::vector<int> key{m};
            key.insert(key.end(), ks.begin(), ks.end());
            out[key] = col[static_cast<std::size_t>(m)];
        }
    }
};

// B^l = sum_{k <= l} prod (-s)^(l_i-k_i) / (2^(l_i-k_i) (l_i-k_i)!) A^k, for all l with
// sum (2 l_i + 1) <= max_weight.
inline KTable to_x(const KTable& a, int n, int max_weight, int sign = -1)
{
    KTable out;
    for (const auto& [ks, v] : a) {
        int w = 0;
        for (int k : ks)
            w += 2 * k + 1;
        std::vector<int> l = ks;
        std::function<void(int, int, ParamPoly)> go = [&](int i, int rem, ParamPoly c) {
            if (i == n) {
                out[l] += c;
                return;
            }
            for (int m = 0; 2 * m <= rem; ++m) {
                l[static_cast<std::size_t>(i)] = ks[static_cast<std::size_t>(i)] + m;
                ParamPoly f = ParamPoly::monomial(rational_pow(Rational(sign), m) / (rational_pow(Rational(2), m) * factorial(m)), 0, 0, m);
                go(i + 1, rem - 2 * m, c * f);
            }
        };
        if (w <= max_weight)
            go(0, max_weight - w, v);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// Inverse transform (A from B); exact on every k whose weight is inside the B budget.
inline KTable from_x(const KTable& b, int n, int max_weight)
{
    KTable all = to_x(b, n, max_weight, +1);
    return all;
}

// Raw x-coefficients (of prod x_i^(-2l_i-2) dx_i) from raw z-coefficients via
// z^(-2k-2) dz = sum_m C(-k-3/2, m) s^m x^(-2k-2m-2) dx.
inline KTable raw_to_x(const KTable& raw, int n, int max_weight)
{
    KTable out;
    for (const auto& [ks, v] : raw) {
        int w = 0;
        for (int k : ks)
            w += 2 * k + 1;
        std::vector<int> l = ks;
        std::function<void(int, int, ParamPoly)> go = [&](int i, int rem, ParamPoly c) {
            if (i == n) {
                out[l] += c;
                return;
            }
            for (int m = 0; 2 * m <= rem; ++m) {
                l[static_cast<std::size_t>(i)] = ks[static_cast<std::size_t>(i)] + m;
                go(i + 1, rem - 2 * m, c * ParamPoly::monomial(half_binomial(ks[static_cast<std::size_t>(i)] + 1, m), 0, 0, m));
            }
        };
        if (w <= max_weight)
            go(0, max_weight - w, v);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// Unstable closed forms in x-coordinates.
inline ParamPoly B01(int k)
{
    Rational c = -rational_pow(Rational(-1), k + 1) / (rational_pow(Rational(2), k + 1) * factorial(k + 1) * Rational(2 * k + 1));
    return ParamPoly::monomial(c, 0, 0, k + 1);
}
inline ParamPoly B02(int k1, int k2)
{
    const int e = k1 + k2 + 1;
    Rational c = rational_pow(Rational(-1), e) / (rational_pow(Rational(2), e) * factorial(k1) * factorial(k2) * Rational(e));
    return ParamPoly::monomial(c, 0, 0, e);
}

// B^l prod (2l_i+1)!! = (-1)^n <p_{2l_1+1} ... >_g for every l with weight <= max_weight.
inline Report verify_equivalence(EORecursion& eo, CorrelatorTable& corr, int g, int n, int max_weight)
{
    Report rep("eo-equivalence");
    Stopwatch sw;
    KTable b = to_x(normalize(eo.omega(g, n)), n, max_weight);
    std::size_t compared = 0, bad = 0;
    std::string first;
    std::vector<int> l(static_cast<std::size_t>(n));
    std::function<void(int, int)> go = [&](int i, int rem) {
        if (i == n) {
            auto it = b.find(l);
            ParamPoly lhs = it == b.end() ? ParamPoly{} : it->second * dfact_prod(l);
            std::vector<int> mu;
            for (int k : l)
                mu.push_back(2 * k + 1);
            ParamPoly rhs = corr.value(g, mu) * Rational(n % 2 ? -1 : 1);
            ++compared;
            if (!(lhs == rhs)) {
                ++bad;
                if (first.empty())
                    first = "l=" + std::to_string(l[0]) + "...: " + lhs.str() + " vs " + rhs.str();
            }
            return;
        }
        for (int k = 0; 2 * k + 1 <= rem; ++k) {
            l[static_cast<std::size_t>(i)] = k;
            go(i + 1, rem - 2 * k - 1);
        }
    };
    go(0, max_weight);
    rep.add("(" + std::to_string(g) + "," + std::to_string(n) + ") " + kernel_name(eo.kind()) + " kernel, weight<=" +
                std::to_string(max_weight) + " (" + std::to_string(compared) + " coefficients)",
            bad == 0, first, "", sw.seconds());
    return rep;
}

// Every stable (g,n) with g <= max_g, n <= max_n: omega equal for both kernels.
inline Report compare_kernels(int max_g, int max_n)
{
    Report rep("kernel-comparison");
    EORecursion a(KernelKind::standard), b(KernelKind::typeB);
    for (int g = 0; g <= max_g; ++g)
        for (int n = 1; n <= max_n; ++n) {
            if (!is_stable(g, n))
                continue;
            Stopwatch sw;
            bool same = a.omega(g, n) == b.omega(g, n);
            rep.add("(" + std::to_string(g) + "," + std::to_string(n) + ") type-B equals standard", same, "", "",
                    sw.seconds());
        }
    return rep;
}

} // namespace gbgw
