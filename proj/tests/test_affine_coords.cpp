#include <catch_amalgamated.hpp>

#include "gbgw/affine_coords.hpp"

using namespace gbgw;

namespace {

const ParamPoly& u() { return poly_u(); }

} // namespace

TEST_CASE("affine coordinate examples")
{
    AffineTable t;
    CHECK(t.at(0, 1) == ParamPoly::monomial(rat(1, 16), 1) * (ParamPoly(1) - 4 * u()));
    ParamPoly one = ParamPoly(1) - 4 * u(), nine = ParamPoly(9) - 4 * u();
    CHECK(t.at(1, 2) == ParamPoly::monomial(rat(1, 3 * 4096), 3) * one * one * nine);
    // BGW specialization u = 0
    for (int n = 1; n <= 8; ++n) {
        Rational df = double_factorial(2 * n - 1);
        CHECK(t.at(0, n).evaluate(U, Rational(0)) ==
              ParamPoly::monomial(df * df / (rational_pow(Rational(2), 3 * n + 1) * factorial(n)), n));
    }
    CHECK_THROWS(t.at(-1, 2));
}

TEST_CASE("affine table is antisymmetric and vanishes at u = 1/4")
{
    AffineTable t;
    for (int n = 0; n <= 12; ++n)
        for (int m = 0; m <= 12; ++m) {
            CHECK(t.at(n, m) == -t.at(m, n));
            CHECK(t.at(n, m).evaluate(U, rat(1, 4)).is_zero());
        }
}

TEST_CASE("memoized table equals a fresh one")
{
    AffineTable warm, cold;
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m)
            (void)warm.at(n, m);
    for (int n = 6; n >= 0; --n)
        for (int m = 6; m >= 0; --m)
            CHECK(warm.at(n, m) == cold.at(n, m));
}

TEST_CASE("basis series")
{
    BasisPair b = basis_pair(10);
    CHECK(b.phi1.coeff(0) == ParamPoly(1));
    CHECK(b.phi1.coeff(-1) == ParamPoly::monomial(rat(1, 8), 1) * (ParamPoly(1) - 4 * u()));
    CHECK(b.phi2.coeff(1) == ParamPoly(1));
    CHECK(b.phi2.coeff(2).is_zero());
    for (int k = -10; k <= 0; ++k)
        CHECK(b.phi1.coeff(k).evaluate(U, rat(1, 4)) == ParamPoly(k == 0 ? 1 : 0));
    // coefficient recursion c_{k+1} = -h (4u - (2k+1)^2) c_k / (8 (k+1))
    for (int k = 0; k < 10; ++k)
        CHECK(b.phi1.coeff(-k - 1) * (8 * (k + 1)) ==
              -(poly_h() * (4 * u() - ParamPoly((2 * k + 1) * (2 * k + 1)))) * b.phi1.coeff(-k));
    CHECK_THROWS(basis_pair(0));
}

TEST_CASE("Wronskian identities through order 20")
{
    Report r = verify_wronskian(20);
    for (const auto& c : r.checks()) {
        INFO(c.id);
        CHECK(c.pass);
    }
    CHECK(r.checks().size() == 4);
}

TEST_CASE("Wronskian at u = 1/4 reduces to phi2 parity")
{
    BasisPair b = basis_pair(12);
    LaurentSeries p2 = b.phi2;
    // with Phi1 = 1 the combination is Phi2(z) - Phi2(-z)
    LaurentSeries w = p2 - p2.reflect_sign();
    for (int k = -11; k <= 1; ++k)
        CHECK(w.coeff(k).evaluate(NU, rat(1, 2)).evaluate(U, rat(1, 4)) == ParamPoly(k == 1 ? 2 : 0));
}

TEST_CASE("generating series: direct and closed forms agree")
{
    AffineTable t;
    const int T = 10;
    GenSeries d = gen_A_direct(t, T), c = gen_A_closed(T);
    CHECK(d.A.agrees_with(c.A));
    CHECK(d.Atilde.agrees_with(c.Atilde));
    CHECK(closed_numerator_matches(c, T));
    CHECK(c.A.is_antisymmetric());
    CHECK(d.A.is_antisymmetric());
    CHECK(atilde_symmetrization_is_delta(c.Atilde, T));
    // x^-1 term of A comes only from the a_{n,0} sum: -1/2 a_{1,0} = a_{0,1}/2
    CHECK(d.A.coeff({0, -1}) == t.at(0, 1) * rat(1, 2));
    CHECK(d.A.coeff({-1, 0}) == t.at(0, 1) * rat(-1, 2));
    // A - Atilde = 1/4 + 1/2 sum_{i >= 1} (-1)^i w^-i x^i
    BiSeries diff = d.A - d.Atilde;
    CHECK(diff.coeff({0, 0}) == ParamPoly(rat(1, 4)));
    for (int i = 1; i <= T; ++i)
        CHECK(diff.coeff({-i, i}) == ParamPoly(rat(i % 2 ? -1 : 1, 2)));
}

TEST_CASE("Pfaffian expansion matches hypergeometric coefficients for |lambda| <= 10")
{
    AffineTable t;
    auto [lhs, rhs] = pfaffian_expansion_sides(t, {1});
    CHECK(lhs == ParamPoly::monomial(rat(1, 16), 1) * (ParamPoly(1) - 4 * u()));
    CHECK(lhs == rhs);
    for (int w = 1; w <= 10; ++w)
        for (const auto& l : strict_partitions(w)) {
            INFO("weight " << w << " length " << l.size());
            CHECK(verify_pfaffian_expansion(t, l));
        }
    CHECK(verify_pfaffian_expansion(t, {4, 3, 2, 1}));
}
