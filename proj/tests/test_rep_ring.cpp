#include <catch2/catch_amalgamated.hpp>

#include "eqloc/rep_ring.hpp"
#include "test_support.hpp"

using namespace eqloc;

namespace {

RingElement t_power(const CharacterGroup& g, long long e) {
    return RingElement::monomial(g, g.character({e}));
}

// Independent elementary-symmetric expansion of lambda_{-1}: the alternating
// sum of e_j of the monomials, with e_j computed by the standard recursion
// e_j(x_1..x_k) = e_j(x_1..x_{k-1}) + x_k e_{j-1}(x_1..x_{k-1}).
RingElement lambda_by_elementary_symmetric(const BundleClass& n) {
    const CharacterGroup& g = n.group;
    std::vector<RingElement> e{RingElement::one(g)};
    for (const auto& chi : n.characters) {
        RingElement x = RingElement::monomial(g, chi);
        std::vector<RingElement> next;
        for (std::size_t j = 0; j <= e.size(); ++j) {
            RingElement v = j < e.size() ? e[j] : RingElement::zero(g);
            if (j > 0) v += x * e[j - 1];
            next.push_back(std::move(v));
        }
        e = std::move(next);
    }
    RingElement out = RingElement::zero(g);
    for (std::size_t j = 0; j < e.size(); ++j) out += (j % 2 == 0 ? Rat(1) : Rat(-1)) * e[j];
    return out;
}

}  // namespace

TEST_CASE("group ring arithmetic in Z[Z]") {
    CharacterGroup z = CharacterGroup::torus(1);
    RingElement one = RingElement::one(z);
    RingElement t = t_power(z, 1);
    CHECK(ring_add(one - t, t) == one);
    CHECK(ring_mul(one - t, one + t) == one - t_power(z, 2));
    CHECK(ring_neg(t) == -t);
}

TEST_CASE("zero divisors appear in Z[Z/2]") {
    CharacterGroup mu2 = CharacterGroup::mu(2);
    RingElement one = RingElement::one(mu2);
    RingElement u = RingElement::monomial(mu2, mu2.character({}, {1}));
    // (1 - u)(1 + u) = 1 - u^2 = 0 since u^2 = 1
    CHECK(ring_mul(one - u, one + u).is_zero());
}

TEST_CASE("torsion exponents are reduced at construction") {
    CharacterGroup mu3 = CharacterGroup::mu(3);
    CHECK(RingElement::monomial(mu3, mu3.character({}, {5})) ==
          RingElement::monomial(mu3, mu3.character({}, {2})));
}

TEST_CASE("ring elements over different groups do not mix") {
    RingElement a = RingElement::one(CharacterGroup::torus(1));
    RingElement b = RingElement::one(CharacterGroup::torus(2));
    CHECK_THROWS_AS(a + b, GroupMismatch);
}

TEST_CASE("ring axioms hold on random triples") {
    std::vector<CharacterGroup> shapes = {
        CharacterGroup::torus(1), CharacterGroup::torus(3), make_character_group(1, {2}),
        make_character_group(0, {12}), make_character_group(2, {3, 4})};
    std::mt19937 rng(21);
    for (const auto& g : shapes) {
        RingElement one = RingElement::one(g);
        for (int i = 0; i < 1000; ++i) {
            RingElement a = testing::random_ring_element(rng, g);
            RingElement b = testing::random_ring_element(rng, g);
            RingElement c = testing::random_ring_element(rng, g);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * one == a);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("lambda_{-1} base cases") {
    CharacterGroup z = CharacterGroup::torus(1);
    CHECK(lambda_minus_one(BundleClass(z, {})) == RingElement::one(z));
    Character chi = z.character({2});
    CHECK(lambda_minus_one(BundleClass(z, {chi})) ==
          RingElement::one(z) - RingElement::monomial(z, chi));

    CharacterGroup t2 = CharacterGroup::torus(2);
    Character a = t2.character({1, 0}), b = t2.character({0, 1});
    RingElement expected = RingElement::one(t2) - RingElement::monomial(t2, a) -
                           RingElement::monomial(t2, b) +
                           RingElement::monomial(t2, t2.add(a, b));
    CHECK(lambda_minus_one(BundleClass(t2, {a, b})) == expected);
}

TEST_CASE("bundle classes are order-insensitive multisets") {
    CharacterGroup t2 = CharacterGroup::torus(2);
    Character a = t2.character({1, 0}), b = t2.character({0, 1});
    CHECK(BundleClass(t2, {a, b}) == BundleClass(t2, {b, a}));
    CHECK(BundleClass(t2, {a, a}) == BundleClass(t2, {a, a}));
}

TEST_CASE("lambda_{-1} equals the alternating elementary-symmetric expansion") {
    std::mt19937 rng(22);
    CharacterGroup t3 = CharacterGroup::torus(3);
    std::uniform_int_distribution<int> size(0, 6);
    for (int i = 0; i < 300; ++i) {
        std::vector<Character> chars;
        for (int k = size(rng); k-- > 0;) chars.push_back(testing::random_character(rng, t3, -2, 2));
        BundleClass n(t3, chars);
        CHECK(lambda_minus_one(n) == lambda_by_elementary_symmetric(n));
    }
}

TEST_CASE("Whitney formula on random splits") {
    std::mt19937 rng(23);
    CharacterGroup t2 = CharacterGroup::torus(2);
    std::uniform_int_distribution<int> size(0, 4);
    for (int i = 0; i < 1000; ++i) {
        std::vector<Character> c1, c2;
        for (int k = size(rng); k-- > 0;) c1.push_back(testing::random_character(rng, t2));
        for (int k = size(rng); k-- > 0;) c2.push_back(testing::random_character(rng, t2));
        std::vector<Character> both = c1;
        both.insert(both.end(), c2.begin(), c2.end());
        CHECK(lambda_minus_one(BundleClass(t2, both)) ==
              lambda_minus_one(BundleClass(t2, c1)) * lambda_minus_one(BundleClass(t2, c2)));
    }
}

TEST_CASE("augmentation") {
    CharacterGroup z = CharacterGroup::torus(1);
    CHECK(augmentation(RingElement::one(z)) == 1);
    CHECK(augmentation(RingElement::one(z) - t_power(z, 1)) == 0);
    CHECK(augmentation(Rat(3) * t_power(z, 2) - t_power(z, 1)) == 2);
}

TEST_CASE("augmentation is a ring homomorphism") {
    std::mt19937 rng(24);
    CharacterGroup g = make_character_group(1, {3});
    for (int i = 0; i < 500; ++i) {
        RingElement a = testing::random_ring_element(rng, g);
        RingElement b = testing::random_ring_element(rng, g);
        CHECK(augmentation(a * b) == augmentation(a) * augmentation(b));
        CHECK(augmentation(a + b) == augmentation(a) + augmentation(b));
    }
}

TEST_CASE("canonical text rendering") {
    CharacterGroup z = CharacterGroup::torus(1);
    CHECK(to_string(RingElement::zero(z)) == "0");
    CHECK(to_string(RingElement::one(z) + t_power(z, 1) + t_power(z, 2)) == "1 + t + t^2");
    CHECK(to_string(t_power(z, -1)) == "t^-1");
    CHECK(to_string(Rat(-2) * t_power(z, 1) + RingElement::one(z)) == "1 - 2*t");
    CHECK(to_string(RingElement::constant(z, Rat(1, 2))) == "1/2");

    CharacterGroup mu4 = CharacterGroup::mu(4);
    CHECK(to_string(RingElement::monomial(mu4, mu4.character({}, {3}))) == "u^3");

    CharacterGroup t2 = CharacterGroup::torus(2);
    RingElement mixed = RingElement::one(t2) +
                        RingElement::monomial(t2, t2.character({1, -1}), Rat(-1));
    CHECK(to_string(mixed) == "1 - t1*t2^-1");
}

TEST_CASE("variable inversion and substitution") {
    CharacterGroup t2 = CharacterGroup::torus(2);
    RingElement a = RingElement::monomial(t2, t2.character({1, 2}));
    CHECK(invert_variables(a) == RingElement::monomial(t2, t2.character({-1, -2})));
    IntMat swap = {{Int(0), Int(1)}, {Int(1), Int(0)}};
    CHECK(substitute_characters(a, swap) == RingElement::monomial(t2, t2.character({2, 1})));
}

TEST_CASE("exact evaluation at rational points") {
    CharacterGroup t2 = CharacterGroup::torus(2);
    RingElement a = RingElement::one(t2) + RingElement::monomial(t2, t2.character({1, -1}));
    CHECK(evaluate(a, {Rat(2), Rat(3)}) == Rat(1) + Rat(2) / Rat(3));
}
