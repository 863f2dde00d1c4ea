#include <cstdio>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "eqloc/corpus.hpp"
#include "eqloc/json_io.hpp"
#include "test_support.hpp"

using namespace eqloc;

TEST_CASE("group and character round-trip") {
    CharacterGroup g = make_character_group(2, {3, 6});
    CHECK(group_from_json(group_to_json(g)) == g);
    std::mt19937 rng(61);
    for (int i = 0; i < 50; ++i) {
        Character chi = testing::random_character(rng, g, -7, 7);
        CHECK(character_from_json(g, character_to_json(chi)) == chi);
    }
}

TEST_CASE("subgroup round-trip uses the fixed field names") {
    CharacterGroup t2 = CharacterGroup::torus(2);
    Subgroup h = Subgroup::mu_in_torus(t2, {1, 2}, 5);
    Json j = subgroup_to_json(h);
    CHECK(j.contains("matrix"));
    CHECK(j["ambient"]["rank"] == 2);
    CHECK(j["target"]["torsion"] == Json::array({5}));
    CHECK(subgroup_from_json(j) == h);
}

TEST_CASE("ring element round-trip") {
    std::mt19937 rng(62);
    CharacterGroup g = make_character_group(2, {4});
    for (int i = 0; i < 50; ++i) {
        RingElement a = testing::random_ring_element(rng, g);
        a.add_term(g.zero(), Rat(1, 2));
        CHECK(ring_element_from_json(ring_element_to_json(a)) == a);
    }
}

TEST_CASE("localized element round-trip") {
    std::mt19937 rng(63);
    MultiplicativeSet s = MultiplicativeSet::full_torus(2);
    for (int i = 0; i < 50; ++i) {
        LocalizedElement a = testing::random_localized(rng, s);
        LocalizedElement back = localized_from_json(localized_to_json(a), s);
        CHECK(back.numerator() == a.numerator());
        CHECK(back.denominator() == a.denominator());
    }
}

TEST_CASE("fan JSON matches the fixed schema") {
    Json j = Json::parse(R"({"dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "cones": [[0,1],[1,2],[2,0]]})");
    Fan fan = fan_from_json(j);
    CHECK(fan == corpus_fan("p2"));
    CHECK(fan_from_json(fan_to_json(fan)) == fan);
    CHECK(divisor_from_json(Json::parse(R"({"coeffs": [0,0,1]})")) ==
          std::vector<long long>{0, 0, 1});
}

TEST_CASE("cyclotomic image round-trip") {
    CyclotomicImage x(6, 6, {Rat(1), Rat(1, 2), Rat(0), Rat(-3)});
    CHECK(cyclotomic_image_from_json(cyclotomic_image_to_json(x)) == x);
}

TEST_CASE("polytope JSON accepts both forms") {
    Polytope a = polytope_from_json(Json::parse(R"({"dim":1,"normals":[[1],[-1]],"rhs":[0,-2]})"));
    CHECK(a.lattice_points() == std::vector<LatticeVector>{{0}, {1}, {2}});
    Polytope b = polytope_from_json(Json::parse(R"({"dim":1,"vertices":[[0],[2]]})"));
    CHECK(b.lattice_points() == std::vector<LatticeVector>{{0}, {1}, {2}});
}

TEST_CASE("malformed input is reported with a diagnostic") {
    CHECK_THROWS_AS(load_json("{broken"), MalformedInput);
    CHECK_THROWS_AS(load_json("/no/such/file.json"), MalformedInput);
    CHECK_THROWS_AS(fan_from_json(Json::parse(R"({"dim": 2})")), MalformedInput);
    try {
        fan_from_json(Json::parse(R"({"dim": 2})"));
    } catch (const MalformedInput& e) {
        CHECK(std::string(e.what()).find("rays") != std::string::npos);
    }
}

TEST_CASE("load_json reads files and inline text") {
    const char* path = "eqloc_test_fan.json";
    {
        std::ofstream out(path);
        out << fan_to_json(corpus_fan("p1")).dump();
    }
    CHECK(fan_from_json(load_json(path)) == corpus_fan("p1"));
    std::remove(path);
    CHECK(fan_from_json(load_json(R"({"dim":1,"rays":[[1],[-1]],"cones":[[0],[1]]})")) ==
          corpus_fan("p1"));
}
