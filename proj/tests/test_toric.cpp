#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "eqloc/corpus.hpp"
#include "eqloc/toric.hpp"

using namespace eqloc;

TEST_CASE("standard fans validate") {
    CHECK_NOTHROW(corpus_fan("p1"));
    CHECK_NOTHROW(corpus_fan("p2"));
    CHECK_NOTHROW(corpus_fan("p1xp1"));
    CHECK_NOTHROW(corpus_fan("f1"));
    CHECK_NOTHROW(corpus_fan("f2"));
    CHECK_NOTHROW(corpus_fan("p3"));
}

TEST_CASE("fan validation failures name the offender") {
    CHECK_THROWS_AS(Fan(2, {{2, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}), NotPrimitive);
    // cone spanned by (1,0) and (1,2) has determinant 2
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {1, 2}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}), NotSmooth);
    // a missing cone leaves unpaired facets
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}}), NotComplete);
    CHECK_THROWS_AS(Fan(1, {{1}}, {{0}}), NotComplete);
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {{0, 1}, {1, 5}}), MalformedInput);
    CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {{0, 0}}), MalformedInput);

    try {
        Fan(2, {{1, 0}, {1, 2}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
        FAIL("expected NotSmooth");
    } catch (const NotSmooth& e) {
        CHECK(std::string(e.what()).find("cone 0") != std::string::npos);
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("fan validation is invariant under relabeling") {
    // P^2 with rays listed in a different order and cones permuted.
    Fan relabeled(2, {{-1, -1}, {1, 0}, {0, 1}}, {{2, 0}, {1, 2}, {0, 1}});
    CHECK(relabeled.max_cones().size() == 3);
    CHECK(fixed_points(relabeled).size() == 3);
}

TEST_CASE("fixed points correspond to maximal cones") {
    CHECK(fixed_points(corpus_fan("p1")).size() == 2);
    CHECK(fixed_points(corpus_fan("p2")).size() == 3);
    CHECK(fixed_points(corpus_fan("p1xp1")).size() == 4);
    CHECK(fixed_points(product_fan(corpus_fan("p1"), corpus_fan("p1"))).size() == 4);
    for (const auto& name : corpus_names())
        CHECK(fixed_points(corpus_fan(name)).size() == corpus_fan(name).max_cones().size());
}

TEST_CASE("cotangent characters are dual to the cone rays") {
    for (const auto& name : corpus_names()) {
        Fan fan = corpus_fan(name);
        for (const auto& fp : fixed_points(fan)) {
            const auto& cone = fan.max_cones()[fp.cone];
            for (std::size_t i = 0; i < fan.dim(); ++i)
                for (std::size_t j = 0; j < fan.dim(); ++j) {
                    long long pairing = detail::dot(fp.cotangent_chars[i].free,
                                                    fan.rays()[cone[j]]);
                    CHECK(pairing == (i == j ? 1 : 0));
                }
            for (const auto& chi : fp.cotangent_chars) CHECK_FALSE(chi.is_zero());
        }
    }
}

TEST_CASE("Cartier data on P^1") {
    Fan p1 = corpus_fan("p1");
    CartierData d = cartier_from_divisor(p1, {0, 3});
    // vertices of the segment [0, 3]
    CHECK(d.per_cone_m == std::vector<LatticeVector>{{0}, {3}});
    CartierData zero = cartier_from_divisor(p1, {0, 0});
    CHECK(zero.per_cone_m == std::vector<LatticeVector>{{0}, {0}});
}

TEST_CASE("Cartier data on P^2") {
    Fan p2 = corpus_fan("p2");
    CartierData d = cartier_from_divisor(p2, {0, 0, 1});
    CHECK(d.per_cone_m == std::vector<LatticeVector>{{0, 0}, {1, 0}, {0, 1}});
    CHECK_THROWS_AS(cartier_from_divisor(p2, {0, 0}), MalformedInput);
}

TEST_CASE("fiber characters come from the Cartier data") {
    Fan p1 = corpus_fan("p1");
    CartierData d = cartier_from_divisor(p1, {0, 2});
    auto fps = fixed_points(p1, &d);
    REQUIRE(fps.size() == 2);
    CHECK(fps[0].fiber_char == p1.torus().character({0}));
    CHECK(fps[1].fiber_char == p1.torus().character({2}));
}

TEST_CASE("nefness") {
    Fan p2 = corpus_fan("p2");
    CHECK(is_nef(cartier_from_divisor(p2, {0, 0, 1})));
    CHECK(is_nef(cartier_from_divisor(p2, {0, 0, 0})));
    Fan p1 = corpus_fan("p1");
    CHECK_FALSE(is_nef(cartier_from_divisor(p1, {0, -1})));
    Fan f1 = corpus_fan("f1");
    CHECK(is_nef(cartier_from_divisor(f1, {0, 0, 0, 1})));
    CHECK(is_nef(cartier_from_divisor(f1, {1, 0, 0, 1})));
    // D_2 + D_4 fails convexity against the ray (-1, 1)
    CHECK_FALSE(is_nef(cartier_from_divisor(f1, {0, 1, 0, 1})));
    CHECK_FALSE(is_nef(cartier_from_divisor(f1, {0, 0, 0, -1})));
}

TEST_CASE("lattice point enumeration") {
    Fan p1 = corpus_fan("p1");
    CHECK(polytope_points(cartier_from_divisor(p1, {0, 2})) ==
          std::vector<LatticeVector>{{0}, {1}, {2}});
    CHECK(polytope_points(cartier_from_divisor(p1, {0, 0})) ==
          std::vector<LatticeVector>{{0}});

    Fan p2 = corpus_fan("p2");
    CHECK(polytope_points(cartier_from_divisor(p2, {0, 0, 1})) ==
          std::vector<LatticeVector>{{0, 0}, {0, 1}, {1, 0}});

    // Non-nef divisors still enumerate the (possibly empty) inequality set.
    CHECK(polytope_points(cartier_from_divisor(p1, {0, -1})).empty());

    CHECK_THROWS_AS(polytope_points(cartier_from_divisor(p1, {0, 2000000})), OracleTooLarge);
}

TEST_CASE("for nef divisors the Cartier vertices are the polytope vertices") {
    for (const auto& name : corpus_names()) {
        Fan fan = corpus_fan(name);
        for (long long a : {0, 1, 2}) {
            std::vector<long long> coeffs(fan.rays().size(), a);
            coeffs[0] = 0;
            CartierData d = cartier_from_divisor(fan, coeffs);
            if (!is_nef(d)) continue;
            std::vector<LatticeVector> normals = fan.rays();
            std::vector<long long> rhs;
            for (long long c : coeffs) rhs.push_back(-c);
            Polytope p(fan.dim(), normals, rhs);
            auto vertices = p.lattice_vertices();
            std::sort(vertices.begin(), vertices.end());
            std::vector<LatticeVector> cartier_vertices = d.per_cone_m;
            std::sort(cartier_vertices.begin(), cartier_vertices.end());
            cartier_vertices.erase(
                std::unique(cartier_vertices.begin(), cartier_vertices.end()),
                cartier_vertices.end());
            CHECK(vertices == cartier_vertices);
        }
    }
}

TEST_CASE("polytope from inequalities") {
    // the segment [0, 2]
    Polytope seg(1, {{1}, {-1}}, {0, -2});
    CHECK(seg.lattice_points() == std::vector<LatticeVector>{{0}, {1}, {2}});
    CHECK(seg.lattice_vertices() == std::vector<LatticeVector>{{0}, {2}});

    // empty
    Polytope empty(1, {{1}, {-1}}, {1, 0});
    CHECK(empty.lattice_points().empty());
}

TEST_CASE("polytope from vertices") {
    Polytope square = Polytope::from_vertices(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(square.lattice_points() ==
          std::vector<LatticeVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(square.normals().size() == 4);

    Polytope point = Polytope::from_vertices(2, {{3, -1}});
    CHECK(point.lattice_points() == std::vector<LatticeVector>{{3, -1}});
    CHECK(point.lattice_vertices() == std::vector<LatticeVector>{{3, -1}});

    Polytope seg = Polytope::from_vertices(1, {{2}, {0}});
    CHECK(seg.lattice_points() == std::vector<LatticeVector>{{0}, {1}, {2}});
}

TEST_CASE("product fans multiply cone counts") {
    Fan prod = product_fan(corpus_fan("p1"), corpus_fan("p2"));
    CHECK(prod.dim() == 3);
    CHECK(prod.max_cones().size() == 6);
    CHECK(prod.rays().size() == 5);
}
