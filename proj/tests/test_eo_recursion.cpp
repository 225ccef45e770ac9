#include <catch_amalgamated.hpp>

#include "gbgw/eo_recursion.hpp"

using namespace gbgw;

namespace {

ParamPoly s_mono(Rational c, int e) { return ParamPoly::monomial(c, 0, 0, e); }

ParamPoly at(const KTable& t, const std::vector<int>& k)
{
    auto it = t.find(k);
    return it == t.end() ? ParamPoly{} : it->second;
}

// Entries of a table whose keys are all exponent tuples; order-insensitive equality.
bool same_table(const KTable& a, const KTable& b)
{
    for (const auto& [k, v] : a)
        if (!(at(b, k) == v))
            return false;
    for (const auto& [k, v] : b)
        if (!(at(a, k) == v))
            return false;
    return true;
}

} // namespace

TEST_CASE("spectral curve")
{
    SpectralCurve c(16);
    LaurentSeries d = c.curve_defect();
    for (const auto& [e, v] : d.coefficients())
        CHECK(v.is_zero());
    CHECK(c.x.coeff(1) == ParamPoly(1));
    CHECK(c.x.coeff(-1) == s_mono(rat(-1, 2), 1));
}

TEST_CASE("kernel series")
{
    auto k = kernel_series(KernelKind::standard, 6);
    // j = 0 term: (1/2)(z - s z^-1) / z0^2
    CHECK(k[0].at(1) == ParamPoly(rat(1, 2)));
    CHECK(k[0].at(-1) == s_mono(rat(-1, 2), 1));
    for (const auto& [e, v] : k[0])
        if (e != 1 && e != -1)
            CHECK(v.is_zero());
    for (std::size_t j = 0; j < k.size(); ++j) {
        for (const auto& [e, v] : k[j]) {
            CHECK(e % 2 != 0);
            if (!v.is_zero()) {
                CHECK((e == static_cast<int>(2 * j) + 1 || e == static_cast<int>(2 * j) - 1));
            }
        }
    }
    auto kb = kernel_series(KernelKind::typeB, 6);
    REQUIRE(kb.size() == k.size());
    for (std::size_t j = 0; j < k.size(); ++j)
        for (const auto& [e, v] : k[j]) {
            auto it = kb[j].find(e);
            CHECK((it == kb[j].end() ? ParamPoly{} : it->second) == v);
        }
    CHECK(bergman_coeff(KernelKind::standard, 3) == Rational(4));
    CHECK(bergman_coeff(KernelKind::typeB, 3) == Rational(0));
    CHECK(bergman_coeff(KernelKind::typeB, 2) == Rational(3));
}

TEST_CASE("displayed closed forms")
{
    EORecursion eo;
    const KTable& w11 = eo.omega(1, 1);
    CHECK(same_table(w11, {{{0}, ParamPoly(rat(-1, 8))}, {{1}, s_mono(rat(1, 8), 1)}}));

    CHECK(same_table(eo.omega(0, 3), {{{0, 0, 0}, poly_s()}}));

    KTable w04{{{0, 0, 0, 0}, s_mono(Rational(-3), 1)}};
    for (int i = 0; i < 4; ++i) {
        std::vector<int> k(4, 0);
        k[static_cast<std::size_t>(i)] = 1;
        w04[k] = s_mono(Rational(3), 2);
    }
    CHECK(same_table(eo.omega(0, 4), w04));

    // (z0^4 z1^4 - 6 s (z0^4 z1^2 + z0^2 z1^4) + 3 s^2 z0^2 z1^2 + 5 s^2 (z0^4 + z1^4)) / (8 z0^6 z1^6)
    KTable w12{{{0, 0}, ParamPoly(rat(1, 8))},
               {{0, 1}, s_mono(rat(-6, 8), 1)},
               {{1, 0}, s_mono(rat(-6, 8), 1)},
               {{1, 1}, s_mono(rat(3, 8), 2)},
               {{0, 2}, s_mono(rat(5, 8), 2)},
               {{2, 0}, s_mono(rat(5, 8), 2)}};
    CHECK(same_table(eo.omega(1, 2), w12));
}

TEST_CASE("unstable and invalid requests")
{
    EORecursion eo;
    CHECK_THROWS(eo.omega(0, 2));
    CHECK_THROWS(eo.omega(0, 1));
    CHECK(is_stable(1, 1));
    CHECK_FALSE(is_stable(0, 2));
    CHECK(parse_kernel("typeB") == KernelKind::typeB);
    CHECK_THROWS(parse_kernel("other"));
}

TEST_CASE("finiteness and permutation symmetry")
{
    EORecursion eo;
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 4; ++n) {
            if (!is_stable(g, n) || (g == 2 && n > 2))
                continue;
            INFO("g=" << g << " n=" << n);
            const KTable& t = eo.omega(g, n);
            CHECK_FALSE(t.empty());
            for (const auto& [k, v] : t) {
                int sum = 0;
                for (int x : k)
                    sum += x;
                CHECK(sum <= stable_dim(g, n));
                std::vector<int> p = k;
                std::sort(p.begin(), p.end());
                do
                    CHECK(at(t, p) == v);
                while (std::next_permutation(p.begin(), p.end()));
            }
        }
}

TEST_CASE("closed coefficient step equals the residue route")
{
    EORecursion eo;
    ClosedStep cs;
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 4; ++n) {
            if (!is_stable(g, n))
                continue;
            INFO("g=" << g << " n=" << n);
            CHECK(same_table(normalize(eo.omega(g, n)), cs.A(g, n)));
        }
}

TEST_CASE("x-coordinate transforms")
{
    CHECK(B01(0) == s_mono(rat(1, 2), 1));
    CHECK(B02(0, 0) == s_mono(rat(-1, 2), 1));
    EORecursion eo;
    const int W = 13;
    for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}, {0, 4}, {2, 1}}) {
        KTable a = normalize(eo.omega(g, n));
        KTable b = to_x(a, n, W);
        KTable back = from_x(b, n, W);
        for (const auto& [k, v] : a)
            CHECK(at(back, k) == v);
        // z-to-x on raw coefficients agrees with the normalized transform
        KTable raw = raw_to_x(eo.omega(g, n), n, W);
        for (const auto& [l, v] : b)
            CHECK(at(raw, l) == v * dfact_prod(l));
        // at s = 0 the curve is x = z
        for (const auto& [k, v] : a)
            CHECK(at(b, k).evaluate(S, Rational(0)) == v.evaluate(S, Rational(0)));
    }
    CHECK(same_table(denormalize(normalize(eo.omega(1, 2))), eo.omega(1, 2)));
}

TEST_CASE("omega_{1,1} in x-coordinates is minus W_{1,1}")
{
    EORecursion eo;
    const int W = 15;
    KTable b = to_x(normalize(eo.omega(1, 1)), 1, W);
    // W11 = x^-2 (1 + s x^-2)^(-5/2) / 8
    for (int m = 0; 2 * m + 1 <= W; ++m)
        CHECK(at(b, {m}) * dfact_prod({m}) == -s_mono(half_binomial(2, m) / 8, m));
}

TEST_CASE("equivalence with the correlator recursion")
{
    EORecursion eo;
    CorrelatorTable ct;
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 3; ++n) {
            if (!is_stable(g, n))
                continue;
            Report r = verify_equivalence(eo, ct, g, n, 11);
            INFO("g=" << g << " n=" << n);
            CHECK(r.ok());
        }
}

TEST_CASE("type-B kernel reproduces the standard invariants")
{
    Report r = compare_kernels(2, 3);
    for (const auto& c : r.checks()) {
        INFO(c.id);
        CHECK(c.pass);
    }
    EORecursion b(KernelKind::typeB);
    CHECK(same_table(b.omega(1, 1), EORecursion().omega(1, 1)));
}
