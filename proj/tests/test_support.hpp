#pragma once

#include <random>

#include "eqloc/localization.hpp"

// Shared deterministic random generators for the property tests.

namespace eqloc::testing {

inline Character random_character(std::mt19937& rng, const CharacterGroup& g, long long lo = -3,
                                  long long hi = 3) {
    std::uniform_int_distribution<long long> dist(lo, hi);
    std::vector<long long> free(g.rank()), tors(g.torsion().size());
    for (auto& v : free) v = dist(rng);
    for (auto& v : tors) v = dist(rng);
    return g.character(std::move(free), std::move(tors));
}

inline Character random_nonzero_character(std::mt19937& rng, const CharacterGroup& g,
                                          long long lo = -3, long long hi = 3) {
    for (;;) {
        Character chi = random_character(rng, g, lo, hi);
        if (!chi.is_zero()) return chi;
    }
}

inline RingElement random_ring_element(std::mt19937& rng, const CharacterGroup& g,
                                       int max_terms = 4, long long coef_bound = 5) {
    std::uniform_int_distribution<int> count(0, max_terms);
    std::uniform_int_distribution<long long> coef(-coef_bound, coef_bound);
    RingElement out(g);
    for (int i = count(rng); i-- > 0;) out.add_term(random_character(rng, g), Rat(coef(rng)));
    return out;
}

inline LocalizedElement random_localized(std::mt19937& rng, const MultiplicativeSet& set,
                                         int max_den = 2) {
    std::uniform_int_distribution<int> den_count(0, max_den);
    std::vector<Character> den;
    for (int i = den_count(rng); i-- > 0;) {
        for (;;) {
            Character chi = random_character(rng, set.group, -2, 2);
            if (set.is_generator(chi)) {
                den.push_back(chi);
                break;
            }
        }
    }
    return LocalizedElement(random_ring_element(rng, set.group), std::move(den), set);
}

}  // namespace eqloc::testing
