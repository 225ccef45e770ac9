// One PASS/FAIL line per acceptance criterion; the runtime budget is part of each verdict.
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "gbgw/suites.hpp"

using namespace gbgw;

namespace {

ParamPoly s_mono(Rational c, int e) { return ParamPoly::monomial(c, 0, 0, e); }

bool table_equals(const KTable& t, const KTable& expect)
{
    for (const auto& [k, v] : t) {
        auto it = expect.find(k);
        if (!(v == (it == expect.end() ? ParamPoly{} : it->second)))
            return false;
    }
    for (const auto& [k, v] : expect) {
        auto it = t.find(k);
        if (!(v == (it == t.end() ? ParamPoly{} : it->second)))
            return false;
    }
    return true;
}

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds, const std::function<Outcome()>& body)
{
    Stopwatch sw;
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double t = sw.seconds();
    bool within = t < budget_seconds;
    bool pass = o.pass && within;
    if (!pass)
        ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", t, budget_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " C" << id << " " << name << " [" << timing << "]";
    if (!o.detail.empty())
        std::cout << " " << o.detail;
    if (!within)
        std::cout << " (over runtime budget)";
    std::cout << std::endl;
}

Outcome from_report(const Report& r)
{
    std::string first;
    for (const auto& c : r.checks())
        if (!c.pass) {
            first = "first failure: " + c.id + (c.lhs.empty() ? "" : " " + c.lhs);
            break;
        }
    return {r.ok(), std::to_string(r.checks().size() - r.failures()) + "/" + std::to_string(r.checks().size()) +
                        " checks" + (first.empty() ? "" : "; " + first)};
}

} // namespace

int main()
{
    criterion(1, "genus-zero one-point closed form, n <= 8", 1, [] {
        CorrelatorTable ct;
        bool ok = true;
        for (int n = 0; n <= 8; ++n) {
            Rational c = rational_pow(Rational(-1), n + 1) / rational_pow(Rational(2), 2 * n + 1) * binomial(2 * n, n) /
                         Rational(n + 1);
            ok = ok && ct.value(0, {2 * n + 1}) == s_mono(c, n + 1);
        }
        return Outcome{ok, "9 values"};
    });

    criterion(2, "W_{0,2} golden values", 1, [] {
        CorrelatorTable ct;
        SparseTensor w = wgn(ct, 0, 2, 6);
        bool ok = w.coeff({-2, -2}) == s_mono(rat(-1, 2), 1) && w.coeff({-2, -4}) == s_mono(rat(3, 8), 2) &&
                  w.coeff({-4, -2}) == s_mono(rat(3, 8), 2) && w.coeff({-2, -6}) == s_mono(rat(-5, 16), 3) &&
                  w.coeff({-4, -4}) == s_mono(rat(-3, 8), 3) && w.coeff({-6, -2}) == s_mono(rat(-5, 16), 3);
        ok = ok && w02_closed(6).agrees_with(w);
        return Outcome{ok, "6 coefficients, closed form agrees"};
    });

    criterion(3, "E-O closed forms omega_{0,3}, omega_{0,4}, omega_{1,1}, omega_{1,2}", 5, [] {
        EORecursion eo;
        KTable w04{{{0, 0, 0, 0}, s_mono(Rational(-3), 1)}};
        for (int i = 0; i < 4; ++i) {
            std::vector<int> k(4, 0);
            k[static_cast<std::size_t>(i)] = 1;
            w04[k] = s_mono(Rational(3), 2);
        }
        KTable w12{{{0, 0}, ParamPoly(rat(1, 8))},   {{0, 1}, s_mono(rat(-3, 4), 1)}, {{1, 0}, s_mono(rat(-3, 4), 1)},
                   {{1, 1}, s_mono(rat(3, 8), 2)},   {{0, 2}, s_mono(rat(5, 8), 2)},  {{2, 0}, s_mono(rat(5, 8), 2)}};
        bool a = table_equals(eo.omega(0, 3), {{{0, 0, 0}, poly_s()}});
        bool b = table_equals(eo.omega(0, 4), w04);
        bool c = table_equals(eo.omega(1, 1), {{{0}, ParamPoly(rat(-1, 8))}, {{1}, s_mono(rat(1, 8), 1)}});
        bool d = table_equals(eo.omega(1, 2), w12);
        return Outcome{a && b && c && d, std::string("03:") + (a ? "ok" : "bad") + " 04:" + (b ? "ok" : "bad") +
                                             " 11:" + (c ? "ok" : "bad") + " 12:" + (d ? "ok" : "bad")};
    });

    criterion(4, "E-O invariants in x-coordinates equal (-1)^n times correlators, g <= 3, n <= 4, |mu| <= 13", 300, [] {
        EORecursion eo;
        CorrelatorTable ct;
        Report all("equivalence");
        for (int g = 0; g <= 3; ++g)
            for (int n = 1; n <= 4; ++n)
                if (is_stable(g, n))
                    all.append(verify_equivalence(eo, ct, g, n, 13));
        return from_report(all);
    });

    criterion(5, "type-B kernel equals standard kernel, g <= 3, n <= 4", 300, [] {
        Report all = compare_kernels(3, 4);
        EORecursion eo(KernelKind::typeB);
        CorrelatorTable ct;
        for (int g = 0; g <= 3; ++g)
            for (int n = 1; n <= 4; ++n)
                if (is_stable(g, n))
                    all.append(verify_equivalence(eo, ct, g, n, 13));
        return from_report(all);
    });

    criterion(6, "affine cycle sums equal bridged correlators, n <= 3 (|mu| <= 11), n = 1 (|mu| <= 15)", 600, [] {
        AffineTable at;
        CorrelatorTable ct;
        Report r = crosscheck_affine_vs_virasoro(at, ct, 3, {0, 15, 11, 11});
        SparseTensor one = npoint_affine(at, 1, 15);
        bool v = one.coeff({-1}) == ParamPoly::monomial(rat(1, 16), 1) * (ParamPoly(1) - 4 * poly_u());
        r.add("n = 1 value at mu = (1) is h(1 - 4u)/16", v);
        return from_report(r);
    });

    criterion(7, "Pfaffian of affine coordinates equals hypergeometric coefficient, |lambda| <= 10", 30, [] {
        AffineTable at;
        int count = 0;
        bool ok = true;
        for (int w = 1; w <= 10; ++w)
            for (const auto& l : strict_partitions(w)) {
                ok = ok && verify_pfaffian_expansion(at, l);
                ++count;
            }
        return Outcome{ok, std::to_string(count) + " partitions"};
    });

    criterion(8, "Pfaffian-route Q_lambda(delta) equals the closed product, |lambda| <= 12", 10, [] {
        int count = 0;
        bool ok = true;
        for (int w = 1; w <= 12; ++w)
            for (const auto& l : strict_partitions(w)) {
                ok = ok && Q_lambda(l, delta_couplings()) == ParamPoly(Q_delta_closed(l));
                ++count;
            }
        return Outcome{ok, std::to_string(count) + " partitions"};
    });

    criterion(9, "Wronskian, det G = 1 and the Phi_1 equation through order 20", 5,
              [] { return from_report(verify_wronskian(20)); });

    criterion(10, "quantum curve: P(Phi_0^B) = 0 to z^-20, [P,Q] = h for k <= 20, span decompositions, semiclassical",
              10, [] {
                  QuantumCurve qc;
                  AffineTable at;
                  Report r("qsc");
                  r.append(verify_ks(qc, at, 10, 24, 20));
                  r.append(commutator_check(qc, 20));
                  r.append(semiclassical_identity());
                  return from_report(r);
              });

    criterion(11, "special deformation (y^2)_- = s x^-2, t-degree <= 3, x-orders down to -20", 30, [] {
        CorrelatorTable ct;
        DeformationReport d = verify_special_deformation(ct, 3, 20, 19);
        return Outcome{d.ok, std::to_string(d.checked) + " coefficients" +
                                 (d.failures.empty() ? "" : "; first failure: " + d.failures.front())};
    });

    criterion(12, "trivialization at u = 1/4: affine table, bridge, cycle sums", 60, [] {
        const Rational q = rat(1, 4);
        AffineTable at;
        CorrelatorTable ct;
        bool table = true, bridged = true, cycles = true;
        for (int n = 0; n <= 15; ++n)
            for (int m = 0; m <= 15; ++m)
                table = table && at.at(n, m).evaluate(U, q).is_zero();
        for (int n = 1; n <= 3; ++n)
            for (const auto& mu : odd_partitions(n, n == 1 ? 15 : 11))
                bridged = bridged && bridge(ct, mu).evaluate(U, q).is_zero();
        for (int n = 1; n <= 3; ++n) {
            SparseTensor t = npoint_affine(at, n, n == 1 ? 15 : 11);
            for (const auto& [e, c] : t.coefficients())
                cycles = cycles && c.evaluate(U, q).is_zero();
        }
        return Outcome{table && bridged && cycles, std::string("table:") + (table ? "0" : "nonzero") +
                                                       " bridge:" + (bridged ? "0" : "nonzero") +
                                                       " cycle sums:" + (cycles ? "0" : "nonzero")};
    });

    std::cout << (failures == 0 ? "all 12 criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
