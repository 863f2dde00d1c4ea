#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "eqloc/rep_ring.hpp"

namespace eqloc {

// The multiplicative subset of Z[G^vee] generated by the elements 1 - t^chi
// with chi restricting nontrivially to H.
struct MultiplicativeSet {
    CharacterGroup group;
    Subgroup h;

    MultiplicativeSet(CharacterGroup g, Subgroup subgroup)
        : group(std::move(g)), h(std::move(subgroup)) {
        if (group != this->h.ambient())
            throw GroupMismatch("multiplicative set subgroup lives in a different group");
    }

    static MultiplicativeSet full_torus(std::size_t rank) {
        CharacterGroup t = CharacterGroup::torus(rank);
        return MultiplicativeSet(t, Subgroup::full(t));
    }

    bool is_generator(const Character& chi) const { return is_nontrivial_on(chi, h); }

    friend bool operator==(const MultiplicativeSet&, const MultiplicativeSet&) = default;
};

// A formal fraction num / prod (1 - t^chi) over S_H^{-1} Z[G^vee].  The
// denominator is the multiset of generator characters, kept sorted; no
// reduction is ever performed, and equality is semantic (frac_eq).
class LocalizedElement {
public:
    LocalizedElement(RingElement numerator, std::vector<Character> denominator,
                     MultiplicativeSet set)
        : num_(std::move(numerator)), den_(std::move(denominator)), set_(std::move(set)) {
        if (num_.group() != set_.group)
            throw GroupMismatch("fraction numerator over the wrong group");
        for (auto& chi : den_) {
            chi = set_.group.canonicalize(std::move(chi));
            if (!set_.is_generator(chi))
                throw NotInvertible("denominator factor 1 - t^chi restricts trivially to H");
        }
        std::sort(den_.begin(), den_.end());
    }

    static LocalizedElement from_ring(RingElement a, MultiplicativeSet set) {
        return LocalizedElement(std::move(a), {}, std::move(set));
    }
    static LocalizedElement zero(const MultiplicativeSet& set) {
        return from_ring(RingElement::zero(set.group), set);
    }
    static LocalizedElement one(const MultiplicativeSet& set) {
        return from_ring(RingElement::one(set.group), set);
    }

    const RingElement& numerator() const { return num_; }
    const std::vector<Character>& denominator() const { return den_; }
    const MultiplicativeSet& set() const { return set_; }

    RingElement denominator_expanded() const {
        RingElement out = RingElement::one(set_.group);
        for (const auto& chi : den_)
            out *= RingElement::one(set_.group) - RingElement::monomial(set_.group, chi);
        return out;
    }

private:
    RingElement num_;
    std::vector<Character> den_;
    MultiplicativeSet set_;
};

namespace detail {
inline void check_same_set(const LocalizedElement& a, const LocalizedElement& b) {
    if (a.set().group != b.set().group) throw GroupMismatch("fractions over different groups");
    if (!(a.set() == b.set())) throw SetMismatch("fractions over different multiplicative sets");
}

inline std::vector<Character> merge_denominators(const std::vector<Character>& a,
                                                 const std::vector<Character>& b) {
    std::vector<Character> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}
}  // namespace detail

inline LocalizedElement frac_add(const LocalizedElement& a, const LocalizedElement& b) {
    detail::check_same_set(a, b);
    RingElement num = a.numerator() * b.denominator_expanded() +
                      b.numerator() * a.denominator_expanded();
    return LocalizedElement(std::move(num),
                            detail::merge_denominators(a.denominator(), b.denominator()),
                            a.set());
}

inline LocalizedElement frac_mul(const LocalizedElement& a, const LocalizedElement& b) {
    detail::check_same_set(a, b);
    return LocalizedElement(a.numerator() * b.numerator(),
                            detail::merge_denominators(a.denominator(), b.denominator()),
                            a.set());
}

inline LocalizedElement frac_neg(const LocalizedElement& a) {
    return LocalizedElement(-a.numerator(), a.denominator(), a.set());
}

inline LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b) {
    return frac_add(a, b);
}
inline LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b) {
    return frac_mul(a, b);
}

// Semantic equality by cross multiplication.  Valid only when Z[G^vee] is an
// integral domain, i.e. for torsion-free G^vee; torsion groups must be routed
// through the cyclotomic splitting instead.
inline bool frac_eq(const LocalizedElement& a, const LocalizedElement& b) {
    detail::check_same_set(a, b);
    if (!a.set().group.is_torsion_free())
        throw TorsionUnsupported("fraction equality needs a torsion-free character group");
    return a.numerator() * b.denominator_expanded() == b.numerator() * a.denominator_expanded();
}

// The inverse of lambda_{-1}(N) as the fraction 1 / prod (1 - t^chi).  Every
// character of N must restrict nontrivially to H; otherwise some factor fails
// to be a unit after localization.
inline LocalizedElement invert_lambda(const BundleClass& n, const MultiplicativeSet& set) {
    if (n.group != set.group) throw GroupMismatch("bundle class over the wrong group");
    for (const auto& chi : n.characters)
        if (!set.is_generator(chi))
            throw NotInvertible("lambda_{-1} factor for a character trivial on H");
    return LocalizedElement(RingElement::one(set.group), n.characters, set);
}

// Exact rational evaluation of a fraction at t_i -> values[i].  The caller
// picks values (e.g. distinct primes) keeping every denominator factor
// nonzero.
inline Rat evaluate(const LocalizedElement& a, const std::vector<Rat>& values) {
    Rat den = 1;
    for (const auto& chi : a.denominator()) {
        Rat monomial = 1;
        for (std::size_t i = 0; i < values.size(); ++i)
            monomial *= rat_pow(values[i], chi.free[i]);
        den *= Rat(1) - monomial;
    }
    if (den == 0) throw InternalError("fraction evaluation hit a pole");
    return evaluate(a.numerator(), values) / den;
}

inline std::string to_string(const LocalizedElement& a) {
    std::string out = "(" + to_string(a.numerator()) + ")";
    if (a.denominator().empty()) return out;
    out += " / ";
    for (const auto& chi : a.denominator())
        out += "(1-" + detail::monomial_to_string(a.set().group, chi) + ")";
    return out;
}

}  // namespace eqloc
