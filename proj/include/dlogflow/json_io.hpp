#ifndef DLOGFLOW_JSON_IO_HPP
#define DLOGFLOW_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "rational.hpp"
#include "ratpoly.hpp"
#include "series.hpp"
#include "tree.hpp"

namespace dlogflow {

using json = nlohmann::json;

// Rationals are always "p/q" strings; t-polynomials are {"t_poly": [c0, c1, ...]}.

inline json to_json(const Rational& q) { return to_string(q); }
inline json to_json(const RatPoly& p) { return json{{"t_poly", p.to_strings()}}; }

inline Rational rational_from_json(const json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw parse_error("expected a rational \"p/q\" string, got " + j.dump());
}

inline RatPoly ratpoly_from_json(const json& j)
{
    if (j.is_object() && j.contains("t_poly")) {
        std::vector<Rational> c;
        for (const auto& x : j.at("t_poly")) c.push_back(rational_from_json(x));
        return RatPoly(std::move(c));
    }
    return RatPoly(rational_from_json(j));
}

template <class C>
C coeff_from_json(const json& j)
{
    if constexpr (std::is_same_v<C, RatPoly>) return ratpoly_from_json(j);
    else return rational_from_json(j);
}

template <class C>
json to_json(const Series<C>& s)
{
    json terms = json::array();
    for (const auto& [m, c] : s.terms()) terms.push_back({{"exps", m}, {"coeff", to_json(c)}});
    return terms;
}

template <class C>
json to_json(const SeriesVector<C>& v)
{
    json comps = json::array();
    for (const auto& s : v.components()) comps.push_back(to_json(s));
    return json{{"nvars", v.nvars()}, {"trunc", v.trunc()}, {"components", comps}};
}

/// Parses the series-vector schema. `trunc_override`, when nonzero, replaces the
/// file's truncation order (terms above it are dropped).
template <class C = Rational>
SeriesVector<C> series_vector_from_json(const json& j, unsigned trunc_override = 0)
{
    try {
        const unsigned n = j.at("nvars").get<unsigned>();
        const unsigned trunc = trunc_override ? trunc_override : j.at("trunc").get<unsigned>();
        const auto& comps = j.at("components");
        if (!comps.is_array() || comps.size() != n)
            throw dimension_error("series JSON: expected " + std::to_string(n) + " components");
        std::vector<Series<C>> out;
        for (const auto& terms : comps) {
            Series<C> s(n, trunc);
            for (const auto& term : terms) {
                auto exps = term.at("exps").get<Monomial>();
                if (exps.size() != n) throw dimension_error("series JSON: exponent vector length must equal nvars");
                s.add_term(exps, coeff_from_json<C>(term.at("coeff")));
            }
            out.push_back(std::move(s));
        }
        return SeriesVector<C>(std::move(out));
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed series JSON: ") + e.what());
    }
}

inline json to_json(const RootedTree& t) { return json{{"tree", t.encoding()}}; }

/// Accepts {"tree": "..."} or a bare encoding string.
inline RootedTree tree_from_json(const json& j)
{
    if (j.is_string()) return RootedTree::parse(j.get<std::string>());
    if (j.is_object() && j.contains("tree") && j.at("tree").is_string())
        return RootedTree::parse(j.at("tree").get<std::string>());
    throw parse_error("expected {\"tree\": \"...\"}, got " + j.dump());
}

} // namespace dlogflow

#endif
