// Command-line front end: parse JSON inputs, dispatch computations, emit
// canonical text or JSON results and check verdicts.
//
// Exit codes: 0 success / verdict true, 1 check or membership failure,
// 2 malformed input or domain error.

#include <algorithm>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqloc/corpus.hpp"
#include "eqloc/json_io.hpp"
#include "eqloc/lrr.hpp"

namespace {

using namespace eqloc;

Fan load_fan(const std::string& spec) {
    const auto& names = corpus_names();
    if (std::find(names.begin(), names.end(), spec) != names.end()) return corpus_fan(spec);
    return fan_from_json(load_json(spec));
}

std::string poly_to_string(const RatPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        const bool negative = p[i] < 0;
        Rat mag = negative ? Rat(-p[i]) : p[i];
        if (out.empty())
            out = negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
        if (mono.empty())
            out += rat_to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += rat_to_string(mag) + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

int run_lrr(const std::string& fan_spec, const std::string& divisor_spec,
            const std::string& format) {
    Fan fan = load_fan(fan_spec);
    CartierData d = cartier_from_divisor(fan, divisor_from_json(load_json(divisor_spec)));
    RingElement chi = euler_characteristic(fan, d);
    if (format == "json")
        std::cout << ring_element_to_json(chi).dump(2) << "\n";
    else
        std::cout << to_string(chi) << "\n";
    return 0;
}

int run_brion(const std::string& polytope_spec, const std::string& format) {
    Polytope p = polytope_from_json(load_json(polytope_spec));
    RingElement gf = brion_generating_function(p);
    Rat count = augmentation(gf);
    if (format == "json") {
        Json out{{"generating_function", ring_element_to_json(gf)},
                 {"count", rat_to_string(count)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << to_string(gf) << "\n";
        std::cout << "count = " << rat_to_string(count) << "\n";
    }
    return 0;
}

int run_support(const std::string& group_spec, const std::string& format) {
    Json j = load_json(group_spec);
    CharacterGroup g = group_from_json(j);
    std::vector<RootAssignment> eval;
    for (const auto& pair : j.at("eval")) {
        if (!pair.is_array() || pair.size() != 2)
            throw MalformedInput("eval entries must be [numerator, order] pairs");
        eval.push_back({pair[0].get<long long>(), pair[1].get<long long>()});
    }
    PrimeSupport s = prime_support(g, eval);
    if (format == "json") {
        Json out{{"congruence", Json{{"coeffs", s.congruence}, {"modulus", s.modulus}}},
                 {"H", group_to_json(s.h)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "H_rho = " << s.h.describe() << "\n";
        std::string lhs;
        for (std::size_t i = 0; i < s.congruence.size(); ++i) {
            if (i) lhs += " + ";
            lhs += std::to_string(s.congruence[i]) + "*x" + std::to_string(i);
        }
        std::cout << "K_rho: " << lhs << " = 0 (mod " << s.modulus << ")\n";
    }
    return 0;
}

int run_sbar(const std::string& element_spec, const std::string& embedding_spec, long long n,
             long long r, const std::string& format) {
    RingElement s = ring_element_from_json(load_json(element_spec));
    auto c = load_json(embedding_spec).get<std::vector<long long>>();
    bool member = in_sbar_mu_n(s, c, n, Int(r));
    if (format == "json")
        std::cout << Json{{"member", member}}.dump(2) << "\n";
    else
        std::cout << (member ? "true" : "false") << "\n";
    return member ? 0 : 1;
}

int run_decompose(const std::string& image_spec, const std::string& format) {
    CyclotomicImage x = cyclotomic_image_from_json(load_json(image_spec));
    auto components = crt_decompose(x);
    if (format == "json") {
        Json out = Json::array();
        for (const auto& comp : components) out.push_back(phi_component_to_json(comp));
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& comp : components)
            std::cout << "Phi_" << comp.d << ": " << poly_to_string(comp.poly) << "\n";
    }
    return 0;
}

// ---- the `check` suites ----

struct CheckCase {
    std::string fan_name;
    std::vector<long long> coeffs;
};

const std::vector<std::pair<std::string, CheckCase>>& check_cases() {
    static const std::vector<std::pair<std::string, CheckCase>> cases = {
        {"p1-o0", {"p1", {0, 0}}},        {"p1-o2", {"p1", {0, 2}}},
        {"p2-o1", {"p2", {0, 0, 1}}},     {"p1xp1-o11", {"p1xp1", {0, 0, 1, 1}}},
        {"f1-nef", {"f1", {1, 0, 0, 1}}}, {"f2-nef", {"f2", {1, 0, 0, 1}}},
        {"p3-o1", {"p3", {0, 0, 0, 1}}},
    };
    return cases;
}

LocalizedElement random_localized(std::mt19937& rng, const MultiplicativeSet& set) {
    std::uniform_int_distribution<long long> exp(-2, 2);
    std::uniform_int_distribution<long long> coef(-5, 5);
    std::uniform_int_distribution<int> count(1, 3);
    auto random_char = [&](bool nonzero) {
        for (;;) {
            std::vector<long long> e(set.group.rank());
            for (auto& v : e) v = exp(rng);
            Character chi = set.group.character(std::move(e));
            if (!nonzero || !chi.is_zero()) return chi;
        }
    };
    RingElement num(set.group);
    for (int i = count(rng); i-- > 0;) num.add_term(random_char(false), Rat(coef(rng)));
    std::vector<Character> den;
    for (int i = count(rng) - 1; i-- > 0;) den.push_back(random_char(true));
    return LocalizedElement(std::move(num), std::move(den), set);
}

bool run_one_check(const std::string& name, const CheckCase& c) {
    Fan fan = corpus_fan(c.fan_name);
    CartierData d = cartier_from_divisor(fan, c.coeffs);
    bool ok = true;

    if (is_nef(d)) {
        RingElement chi = euler_characteristic(fan, d);
        RingElement oracle = points_generating_function(fan.torus(), polytope_points(d));
        bool pass = chi == oracle;
        std::cout << (pass ? "ok" : "FAIL") << " " << name << ": oracle-equivalence\n";
        ok = ok && pass;
    }

    {
        MultiplicativeSet set = MultiplicativeSet::full_torus(fan.dim());
        std::mt19937 rng(7001);
        bool pass = true;
        for (std::size_t x = 0; x < fan.max_cones().size(); ++x)
            for (int i = 0; i < 20; ++i)
                pass = pass && self_intersection_check(fan, x, random_localized(rng, set));
        std::cout << (pass ? "ok" : "FAIL") << " " << name << ": self-intersection\n";
        ok = ok && pass;
    }

    {
        bool pass = concentration_roundtrip(fan, d);
        // A small grid around the named divisor, non-nef included.
        std::vector<long long> coeffs(fan.rays().size(), -1);
        for (;;) {
            pass = pass && concentration_roundtrip(fan, cartier_from_divisor(fan, coeffs));
            std::size_t i = coeffs.size();
            bool adv = false;
            while (i-- > 0) {
                if (coeffs[i] < 1) {
                    ++coeffs[i];
                    for (std::size_t j = i + 1; j < coeffs.size(); ++j) coeffs[j] = -1;
                    adv = true;
                    break;
                }
            }
            if (!adv) break;
        }
        std::cout << (pass ? "ok" : "FAIL") << " " << name << ": concentration-roundtrip\n";
        ok = ok && pass;
    }
    return ok;
}

int run_check(const std::string& case_name) {
    bool ok = true;
    bool matched = false;
    for (const auto& [name, c] : check_cases()) {
        if (case_name != "all" && case_name != name) continue;
        matched = true;
        ok = run_one_check(name, c) && ok;
    }
    if (!matched) throw MalformedInput("unknown check case: " + case_name);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact equivariant Euler characteristics on smooth complete toric varieties"};
    app.require_subcommand(1);

    std::string fan_spec, divisor_spec, polytope_spec, group_spec, element_spec, image_spec;
    std::string embedding_spec = "[]";
    std::string case_name = "all";
    std::string format = "text";
    long long n = 1, r = 1;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* lrr = app.add_subcommand("lrr", "Equivariant Euler characteristic of O(D)");
    lrr->add_option("--fan", fan_spec, "Fan: corpus name, file path or inline JSON")->required();
    lrr->add_option("--divisor", divisor_spec, "Divisor coefficients, file path or inline JSON")
        ->required();
    add_format(lrr);

    auto* brion = app.add_subcommand("brion", "Lattice-point generating function of a polytope");
    brion->add_option("--polytope", polytope_spec, "Polytope: file path or inline JSON")
        ->required();
    add_format(brion);

    auto* support = app.add_subcommand("support", "Support of an evaluation prime");
    support->add_option("--group", group_spec, "Group with eval data: path or inline JSON")
        ->required();
    add_format(support);

    auto* sbar = app.add_subcommand("sbar", "Membership in the multiplicative set S-bar_{mu_n}");
    sbar->add_option("element", element_spec, "Ring element: path or inline JSON")->required();
    sbar->add_option("--embedding", embedding_spec, "Embedding vector JSON, e.g. [1,0]")
        ->required();
    sbar->add_option("--n", n, "Subgroup order")->required();
    sbar->add_option("--r", r, "Inverted scalar")->required();
    add_format(sbar);

    auto* decompose = app.add_subcommand("decompose", "Cyclotomic component splitting");
    decompose->add_option("image", image_spec, "Cyclotomic image: path or inline JSON")
        ->required();
    add_format(decompose);

    auto* check = app.add_subcommand("check", "Run the invariant suites on a corpus entry");
    check->add_option("--case", case_name, "Case name or 'all'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (lrr->parsed()) return run_lrr(fan_spec, divisor_spec, format);
        if (brion->parsed()) return run_brion(polytope_spec, format);
        if (support->parsed()) return run_support(group_spec, format);
        if (sbar->parsed()) return run_sbar(element_spec, embedding_spec, n, r, format);
        if (decompose->parsed()) return run_decompose(image_spec, format);
        if (check->parsed()) return run_check(case_name);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
