#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqloc/characters.hpp"
#include "eqloc/rational.hpp"

namespace eqloc {

// An element of the group ring Z[G^vee] (rational coefficients allowed; the
// Z[1/r] constraint is validated at the operations that require it).  Terms
// are kept in a map with lexicographic character order, zero coefficients are
// never stored, and torsion exponents are canonical, so equality and printing
// are structural.
class RingElement {
public:
    using TermMap = std::map<Character, Rat>;

    explicit RingElement(CharacterGroup group) : group_(std::move(group)) {}

    static RingElement zero(const CharacterGroup& g) { return RingElement(g); }
    static RingElement constant(const CharacterGroup& g, Rat c) {
        RingElement out(g);
        out.add_term(g.zero(), std::move(c));
        return out;
    }
    static RingElement one(const CharacterGroup& g) { return constant(g, 1); }
    static RingElement monomial(const CharacterGroup& g, const Character& chi, Rat c = 1) {
        RingElement out(g);
        out.add_term(g.canonicalize(chi), std::move(c));
        return out;
    }

    const CharacterGroup& group() const { return group_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rat coefficient(const Character& chi) const {
        auto it = terms_.find(group_.canonicalize(chi));
        return it == terms_.end() ? Rat(0) : it->second;
    }

    // chi is assumed canonical when coming from internal paths.
    void add_term(const Character& chi, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(chi, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend bool operator==(const RingElement&, const RingElement&) = default;

    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        a.check_same_group(b);
        RingElement out = a;
        for (const auto& [chi, c] : b.terms_) out.add_term(chi, c);
        return out;
    }

    friend RingElement operator-(const RingElement& a) {
        RingElement out = a;
        for (auto& [chi, c] : out.terms_) c = -c;
        return out;
    }

    friend RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        a.check_same_group(b);
        RingElement out(a.group_);
        for (const auto& [ca, va] : a.terms_)
            for (const auto& [cb, vb] : b.terms_) out.add_term(a.group_.add(ca, cb), va * vb);
        return out;
    }

    friend RingElement operator*(const Rat& s, const RingElement& a) {
        RingElement out(a.group_);
        if (s == 0) return out;
        for (const auto& [chi, c] : a.terms_) out.terms_.emplace(chi, s * c);
        return out;
    }

    RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
    RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

private:
    void check_same_group(const RingElement& b) const {
        if (group_ != b.group_) throw GroupMismatch("ring elements over different groups");
    }

    CharacterGroup group_;
    TermMap terms_;
};

inline RingElement ring_add(const RingElement& a, const RingElement& b) { return a + b; }
inline RingElement ring_mul(const RingElement& a, const RingElement& b) { return a * b; }
inline RingElement ring_neg(const RingElement& a) { return -a; }

// Sum of the coefficients: the ring map sending every character to 1.
inline Rat augmentation(const RingElement& a) {
    Rat out = 0;
    for (const auto& [chi, c] : a.terms()) out += c;
    return out;
}

// A class that splits as a sum of one-dimensional character eigenspaces
// (a conormal bundle or cotangent space at an isolated fixed point).
// Order-insensitive: the characters are kept sorted.
struct BundleClass {
    CharacterGroup group;
    std::vector<Character> characters;

    BundleClass(CharacterGroup g, std::vector<Character> chars)
        : group(std::move(g)), characters(std::move(chars)) {
        for (auto& chi : characters) chi = group.canonicalize(std::move(chi));
        std::sort(characters.begin(), characters.end());
    }

    friend bool operator==(const BundleClass&, const BundleClass&) = default;
};

// lambda_{-1} of a split class: the product of (1 - t^chi) over its
// characters, equivalently the alternating sum of its exterior powers.
inline RingElement lambda_minus_one(const BundleClass& n) {
    RingElement out = RingElement::one(n.group);
    for (const auto& chi : n.characters)
        out *= RingElement::one(n.group) - RingElement::monomial(n.group, chi);
    return out;
}

// Applies an integer matrix to every character (free part only; requires a
// torus group): t^chi -> t^(A chi).  Used for unimodular lattice changes.
inline RingElement substitute_characters(const RingElement& a, const IntMat& m) {
    const CharacterGroup& g = a.group();
    if (!g.is_torsion_free()) throw TorsionUnsupported("substitution needs a torus group");
    if (m.size() != g.rank()) throw GroupMismatch("substitution matrix has wrong shape");
    RingElement out(g);
    for (const auto& [chi, c] : a.terms()) {
        std::vector<long long> image(g.rank(), 0);
        for (std::size_t i = 0; i < g.rank(); ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < g.rank(); ++j) acc += m[i][j] * chi.free[j];
            image[i] = static_cast<long long>(acc);
        }
        out.add_term(g.character(std::move(image)), c);
    }
    return out;
}

// t_i -> t_i^{-1} on a torus group.
inline RingElement invert_variables(const RingElement& a) {
    RingElement out(a.group());
    for (const auto& [chi, c] : a.terms()) out.add_term(a.group().negate(chi), c);
    return out;
}

// Exact evaluation t_i -> values[i] (tors generators -> roots are not
// representable exactly, so this requires a torus group).
inline Rat evaluate(const RingElement& a, const std::vector<Rat>& values) {
    const CharacterGroup& g = a.group();
    if (!g.is_torsion_free()) throw TorsionUnsupported("evaluation needs a torus group");
    if (values.size() != g.rank()) throw GroupMismatch("one value per torus variable required");
    Rat out = 0;
    for (const auto& [chi, c] : a.terms()) {
        Rat term = c;
        for (std::size_t i = 0; i < g.rank(); ++i) term *= rat_pow(values[i], chi.free[i]);
        out += term;
    }
    return out;
}

namespace detail {

inline std::string monomial_to_string(const CharacterGroup& g, const Character& chi) {
    std::string out;
    auto append = [&out](const std::string& name, long long e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (e != 1) out += "^" + std::to_string(e);
    };
    for (std::size_t i = 0; i < g.rank(); ++i)
        append(g.rank() == 1 ? "t" : "t" + std::to_string(i + 1), chi.free[i]);
    for (std::size_t i = 0; i < g.torsion().size(); ++i)
        append(g.torsion().size() == 1 ? "u" : "u" + std::to_string(i + 1), chi.tors[i]);
    return out.empty() ? "1" : out;
}

}  // namespace detail

// Canonical rendering: terms in lexicographic character order, e.g.
// "1 + t + t^2" or "1 - 2*t1*t2^-1".
inline std::string to_string(const RingElement& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [chi, c] : a.terms()) {
        const bool negative = c < 0;
        Rat mag = negative ? Rat(-c) : c;
        if (out.empty())
            out = negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono = detail::monomial_to_string(a.group(), chi);
        if (mag == 1 && mono != "1")
            out += mono;
        else if (mono == "1")
            out += rat_to_string(mag);
        else
            out += rat_to_string(mag) + "*" + mono;
    }
    return out;
}

}  // namespace eqloc
