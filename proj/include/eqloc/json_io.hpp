#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqloc/cyclotomic.hpp"
#include "eqloc/localization.hpp"
#include "eqloc/toric.hpp"

// JSON serialization with fixed field names: rank, torsion, free, tors,
// matrix, dim, rays, cones, coeffs, num, den, n, d, r.  Output uses
// ordered_json so renderings are byte-identical across runs.

namespace eqloc {

using Json = nlohmann::ordered_json;

namespace detail {
template <class F>
auto json_guard(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string(what) + ": " + e.what());
    }
}

inline void require_keys(const char* what, const Json& j,
                         std::initializer_list<const char*> keys) {
    for (const char* key : keys)
        if (!j.contains(key))
            throw MalformedInput(std::string(what) + ": missing field '" + key + "'");
}
}  // namespace detail

// Inline JSON (starts with '{' or '[') or a file path.
inline Json load_json(const std::string& path_or_inline) {
    std::string text = path_or_inline;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw MalformedInput("empty JSON input");
    if (text[first] != '{' && text[first] != '[') {
        std::ifstream in(path_or_inline);
        if (!in) throw MalformedInput("cannot open file: " + path_or_inline);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return detail::json_guard("invalid JSON",
                              [&] { return Json::parse(text); });
}

inline Json group_to_json(const CharacterGroup& g) {
    return Json{{"rank", g.rank()}, {"torsion", g.torsion()}};
}

inline CharacterGroup group_from_json(const Json& j) {
    return detail::json_guard("character group", [&] {
        detail::require_keys("character group", j, {"rank"});
        return CharacterGroup(j.at("rank").get<std::size_t>(),
                              j.value("torsion", std::vector<long long>{}));
    });
}

inline Json character_to_json(const Character& chi) {
    return Json{{"free", chi.free}, {"tors", chi.tors}};
}

inline Character character_from_json(const CharacterGroup& g, const Json& j) {
    return detail::json_guard("character", [&] {
        return g.character(j.value("free", std::vector<long long>{}),
                           j.value("tors", std::vector<long long>{}));
    });
}

inline Json subgroup_to_json(const Subgroup& h) {
    Json matrix = Json::array();
    for (const auto& image : h.images()) matrix.push_back(h.target().flatten(image));
    return Json{{"ambient", group_to_json(h.ambient())},
                {"target", group_to_json(h.target())},
                {"matrix", matrix}};
}

inline Subgroup subgroup_from_json(const Json& j) {
    return detail::json_guard("subgroup", [&] {
        detail::require_keys("subgroup", j, {"ambient", "target", "matrix"});
        CharacterGroup ambient = group_from_json(j.at("ambient"));
        CharacterGroup target = group_from_json(j.at("target"));
        std::vector<Character> images;
        for (const auto& row : j.at("matrix")) {
            auto flat = row.get<std::vector<long long>>();
            if (flat.size() != target.generator_count())
                throw MalformedInput("subgroup matrix row has wrong length");
            std::vector<long long> free(flat.begin(), flat.begin() + target.rank());
            std::vector<long long> tors(flat.begin() + target.rank(), flat.end());
            images.push_back(target.character(std::move(free), std::move(tors)));
        }
        return Subgroup(std::move(ambient), std::move(target), std::move(images));
    });
}

inline Json ring_element_to_json(const RingElement& a) {
    Json terms = Json::array();
    for (const auto& [chi, c] : a.terms()) {
        Json t = character_to_json(chi);
        t["coeff"] = rat_to_string(c);
        terms.push_back(std::move(t));
    }
    return Json{{"group", group_to_json(a.group())}, {"terms", terms}};
}

inline RingElement ring_element_from_json(const Json& j) {
    return detail::json_guard("ring element", [&] {
        detail::require_keys("ring element", j, {"group", "terms"});
        CharacterGroup g = group_from_json(j.at("group"));
        RingElement out(g);
        for (const auto& t : j.at("terms"))
            out.add_term(character_from_json(g, t),
                         rat_from_string(t.at("coeff").get<std::string>()));
        return out;
    });
}

inline Json localized_to_json(const LocalizedElement& a) {
    Json den = Json::array();
    for (const auto& chi : a.denominator()) den.push_back(character_to_json(chi));
    return Json{{"num", ring_element_to_json(a.numerator())}, {"den", den}};
}

inline LocalizedElement localized_from_json(const Json& j, const MultiplicativeSet& set) {
    return detail::json_guard("localized element", [&] {
        detail::require_keys("localized element", j, {"num", "den"});
        RingElement num = ring_element_from_json(j.at("num"));
        std::vector<Character> den;
        for (const auto& d : j.at("den")) den.push_back(character_from_json(set.group, d));
        return LocalizedElement(std::move(num), std::move(den), set);
    });
}

inline Json fan_to_json(const Fan& fan) {
    return Json{{"dim", fan.dim()}, {"rays", fan.rays()}, {"cones", fan.max_cones()}};
}

inline Fan fan_from_json(const Json& j) {
    return detail::json_guard("fan", [&] {
        detail::require_keys("fan", j, {"dim", "rays", "cones"});
        return Fan(j.at("dim").get<std::size_t>(),
                   j.at("rays").get<std::vector<LatticeVector>>(),
                   j.at("cones").get<std::vector<std::vector<std::size_t>>>());
    });
}

inline std::vector<long long> divisor_from_json(const Json& j) {
    return detail::json_guard("divisor", [&] {
        detail::require_keys("divisor", j, {"coeffs"});
        return j.at("coeffs").get<std::vector<long long>>();
    });
}

inline Json cyclotomic_image_to_json(const CyclotomicImage& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.poly) coeffs.push_back(rat_to_string(c));
    return Json{{"n", x.n}, {"r", x.r.str()}, {"coeffs", coeffs}};
}

inline CyclotomicImage cyclotomic_image_from_json(const Json& j) {
    return detail::json_guard("cyclotomic image", [&] {
        detail::require_keys("cyclotomic image", j, {"n", "r", "coeffs"});
        RatPoly poly;
        for (const auto& c : j.at("coeffs")) poly.push_back(rat_from_string(c.get<std::string>()));
        Int r = j.at("r").is_string() ? Int(j.at("r").get<std::string>())
                                      : Int(j.at("r").get<long long>());
        return CyclotomicImage(j.at("n").get<long long>(), std::move(r), std::move(poly));
    });
}

inline Json phi_component_to_json(const PhiComponent& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.poly) coeffs.push_back(rat_to_string(c));
    return Json{{"n", x.n}, {"d", x.d}, {"r", x.r.str()}, {"coeffs", coeffs}};
}

// Either {"dim", "normals", "rhs"} or {"dim", "vertices"}.
inline Polytope polytope_from_json(const Json& j) {
    return detail::json_guard("polytope", [&] {
        detail::require_keys("polytope", j, {"dim"});
        std::size_t dim = j.at("dim").get<std::size_t>();
        if (j.contains("vertices"))
            return Polytope::from_vertices(dim, j.at("vertices").get<std::vector<LatticeVector>>());
        return Polytope(dim, j.at("normals").get<std::vector<LatticeVector>>(),
                        j.at("rhs").get<std::vector<long long>>());
    });
}

}  // namespace eqloc
