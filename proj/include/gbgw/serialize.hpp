#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "exact_algebra.hpp"
#include "report.hpp"

namespace gbgw {

using Json = nlohmann::ordered_json;

// [[[h, u, s], "num/den"], ...] in the ring's term order.
inline Json poly_to_json(const ParamPoly& p)
{
    Json arr = Json::array();
    for (const auto& [m, c] : p.terms()) {
        if (m[NU] != 0)
            throw std::domain_error("serialize: N occurs in an output polynomial");
        arr.push_back(Json::array({Json::array({m[H], m[U], m[S]}), rational_string(c)}));
    }
    return arr;
}

inline ParamPoly poly_from_json(const Json& j)
{
    ParamPoly p;
    for (const auto& t : j) {
        const auto& e = t.at(0);
        p += ParamPoly::monomial(parse_rational(t.at(1).get<std::string>()), e.at(0).get<int>(), e.at(1).get<int>(),
                                 e.at(2).get<int>());
    }
    return p;
}

// Polynomials in s alone: [[s_exponent, "num/den"], ...].
inline Json s_poly_to_json(const ParamPoly& p)
{
    Json arr = Json::array();
    for (const auto& [m, c] : p.terms()) {
        if (m[H] != 0 || m[U] != 0 || m[NU] != 0)
            throw std::domain_error("serialize: expected a polynomial in s only, got " + p.str());
        arr.push_back(Json::array({m[S], rational_string(c)}));
    }
    return arr;
}

inline ParamPoly s_poly_from_json(const Json& j)
{
    ParamPoly p;
    for (const auto& t : j)
        p += ParamPoly::monomial(parse_rational(t.at(1).get<std::string>()), 0, 0, t.at(0).get<int>());
    return p;
}

inline Json report_to_json(const Report& r, const std::string& anchor)
{
    Json checks = Json::array();
    for (const auto& c : r.checks())
        checks.push_back({{"id", c.id}, {"anchor", anchor}, {"status", c.pass ? "pass" : "fail"}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    return {{"suite", r.suite()}, {"passed", r.checks().size() - r.failures()}, {"failed", r.failures()}, {"checks", checks}};
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string join(const std::vector<int>& v, const std::string& sep)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? sep : "") << v[i];
    return os.str();
}

} // namespace gbgw
