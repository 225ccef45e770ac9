#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gbgw/serialize.hpp"
#include "gbgw/suites.hpp"

using namespace gbgw;

namespace {

struct Options {
    int genus_max = 2;
    int arity_max = 3;
    int weight_max = 9;
    int window = 20;
    std::string kernel = "standard";
    std::string u = "symbolic";
    std::string format = "json";
    std::string out;
    std::string suite = "all";
    std::string pipeline = "virasoro";
};

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

RunConfig to_config(const Options& o)
{
    if (o.genus_max < 0 || o.arity_max < 1 || o.weight_max < 1 || o.window < 1)
        throw usage_error("bounds must be positive (genus-max may be 0)");
    RunConfig c;
    c.genus_max = o.genus_max;
    c.arity_max = o.arity_max;
    c.weight_max = o.weight_max;
    c.window = o.window;
    try {
        c.kernel = parse_kernel(o.kernel);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    if (o.u != "symbolic") {
        try {
            c.u = parse_rational(o.u);
        } catch (const std::exception&) {
            throw usage_error("--u expects 'symbolic' or a rational such as 1/4, got '" + o.u + "'");
        }
    }
    return c;
}

Json config_json(const Options& o)
{
    return {{"genus_max", o.genus_max}, {"arity_max", o.arity_max}, {"weight_max", o.weight_max}, {"window", o.window},
            {"kernel", o.kernel},       {"u", o.u}};
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f)
        throw usage_error("cannot open output file " + o.out);
    f << text;
}

// Rows {g, mu, value} for correlator-shaped tables (values in s only).
std::string render_s_table(const Options& o, const std::string& command, const std::string& pipeline, const Json& rows)
{
    if (o.format == "csv") {
        std::ostringstream os;
        os << "g,mu,s_exponent,value\n";
        for (const auto& r : rows) {
            std::vector<int> mu = r["mu"].get<std::vector<int>>();
            std::string head = std::to_string(r["g"].get<int>()) + "," + join(mu, ";") + ",";
            if (r["value"].empty())
                os << head << ",0\n";
            for (const auto& t : r["value"])
                os << head << t[0].get<int>() << "," << t[1].get<std::string>() << "\n";
        }
        return os.str();
    }
    Json doc = {{"command", command}};
    if (!pipeline.empty())
        doc["pipeline"] = pipeline;
    doc["config"] = config_json(o);
    doc["table"] = rows;
    return doc.dump(2) + "\n";
}

int cmd_correlators(const Options& o)
{
    RunConfig c = to_config(o);
    CorrelatorTable ct;
    Json rows = Json::array();
    for (int g = 0; g <= c.genus_max; ++g)
        for (int n = 1; n <= c.arity_max; ++n)
            for (const auto& mu : odd_partitions(n, c.weight_max))
                rows.push_back({{"g", g}, {"mu", mu}, {"value", s_poly_to_json(ct.value(g, mu))}});
    emit(o, render_s_table(o, "correlators", "", rows));
    return 0;
}

int cmd_verify(const Options& o)
{
    RunConfig c = to_config(o);
    std::vector<std::string> names;
    if (o.suite == "all")
        names = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), o.suite) != suite_names().end())
        names = {o.suite};
    else
        throw usage_error("unknown suite '" + o.suite + "'");

    Json reports = Json::array();
    std::ostringstream csv;
    csv << "suite,id,status,lhs,rhs\n";
    std::size_t failed = 0;
    for (const auto& name : names) {
        Stopwatch sw;
        Report r = run_suite(name, c);
        failed += r.failures();
        for (const auto& ch : r.checks())
            csv << name << "," << csv_field(ch.id) << "," << (ch.pass ? "pass" : "fail") << "," << csv_field(ch.lhs)
                << "," << csv_field(ch.rhs) << "\n";
        reports.push_back(report_to_json(r, suite_anchor(name)));
        // timings vary between runs, so they go to stderr and the document stays reproducible
        std::cerr << name << ": " << r.checks().size() - r.failures() << "/" << r.checks().size() << " passed in "
                  << sw.seconds() << " s\n";
        for (const auto& ch : r.checks())
            if (!ch.pass)
                std::cerr << "  FAIL " << ch.id << (ch.lhs.empty() ? "" : ": " + ch.lhs) << "\n";
    }
    if (o.format == "csv") {
        emit(o, csv.str());
    } else {
        Json doc = {{"command", "verify"}, {"suite", o.suite}, {"config", config_json(o)}, {"reports", reports}, {"failed", failed}};
        emit(o, doc.dump(2) + "\n");
    }
    return failed ? 1 : 0;
}

int cmd_npoint(const Options& o)
{
    RunConfig c = to_config(o);
    if (o.pipeline == "virasoro" || o.pipeline == "eo") {
        CorrelatorTable ct;
        EORecursion eo(c.kernel);
        Json rows = Json::array();
        for (int g = 0; g <= c.genus_max; ++g)
            for (int n = 1; n <= c.arity_max; ++n) {
                if (!is_stable(g, n))
                    continue;
                KTable b;
                if (o.pipeline == "eo")
                    b = to_x(normalize(eo.omega(g, n)), n, c.weight_max);
                detail::for_each_ordered_odd(n, c.weight_max, [&](const std::vector<int>& mu) {
                    ParamPoly v;
                    if (o.pipeline == "virasoro") {
                        v = ct.value(g, mu);
                    } else {
                        std::vector<int> l;
                        for (int p : mu)
                            l.push_back((p - 1) / 2);
                        auto it = b.find(l);
                        if (it != b.end())
                            v = it->second * dfact_prod(l) * Rational(n % 2 ? -1 : 1);
                    }
                    rows.push_back({{"g", g}, {"mu", mu}, {"value", s_poly_to_json(v)}});
                });
            }
        emit(o, render_s_table(o, "npoint", o.pipeline, rows));
        return 0;
    }
    if (o.pipeline == "affine") {
        AffineTable at;
        Json rows = Json::array();
        std::ostringstream csv;
        csv << "n,mu,h_exponent,u_exponent,value\n";
        for (int n = 1; n <= c.arity_max; ++n) {
            SparseTensor t = npoint_affine(at, n, c.weight_max);
            detail::for_each_ordered_odd(n, c.weight_max, [&](const std::vector<int>& mu) {
                std::vector<int> e;
                for (int p : mu)
                    e.push_back(-p);
                ParamPoly v = t.coeff(e);
                if (c.u)
                    v = v.evaluate(U, *c.u);
                rows.push_back({{"n", n}, {"mu", mu}, {"value", poly_to_json(v)}});
                std::string head = std::to_string(n) + "," + join(mu, ";") + ",";
                if (v.is_zero())
                    csv << head << ",,0\n";
                for (const auto& [m, k] : v.terms())
                    csv << head << m[H] << "," << m[U] << "," << rational_string(k) << "\n";
            });
        }
        if (o.format == "csv") {
            emit(o, csv.str());
        } else {
            Json doc = {{"command", "npoint"}, {"pipeline", "affine"}, {"config", config_json(o)}, {"table", rows}};
            emit(o, doc.dump(2) + "\n");
        }
        return 0;
    }
    throw usage_error("unknown pipeline '" + o.pipeline + "'");
}

void add_common(CLI::App* app, Options& o)
{
    app->add_option("--genus-max", o.genus_max, "largest genus");
    app->add_option("--arity-max", o.arity_max, "largest number of points (also the t-degree of the deformation check)");
    app->add_option("--weight-max", o.weight_max, "largest |mu| (or |lambda|)");
    app->add_option("--window", o.window, "series truncation order");
    app->add_option("--kernel", o.kernel, "standard or typeB")->check(CLI::IsMember({"standard", "typeB"}));
    app->add_option("--u", o.u, "symbolic or a rational value for u = N^2");
    app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", o.out, "output file (default stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"gbgw: correlators of generalized BGW tau-functions by several exact pipelines"};
    app.require_subcommand(1);
    Options o;
    CLI::App* corr = app.add_subcommand("correlators", "tabulate <p_mu>_g");
    CLI::App* verify = app.add_subcommand("verify", "run identity suites");
    CLI::App* npoint = app.add_subcommand("npoint", "n-point coefficients from one pipeline");
    for (CLI::App* s : {corr, verify, npoint})
        add_common(s, o);
    verify->add_option("--suite", o.suite, "affine, virasoro, eo, qsc, schurq or all");
    npoint->add_option("--pipeline", o.pipeline, "virasoro, eo or affine");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (corr->parsed())
            return cmd_correlators(o);
        if (verify->parsed())
            return cmd_verify(o);
        return cmd_npoint(o);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resonance_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification aborted: " << e.what() << "\n";
        return 1;
    }
}
