#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chacon/render.hpp"
#include "chacon/serialize.hpp"

#include <filesystem>
#include <fstream>

using namespace chacon;

TEST_CASE("triadic json round trip") {
    TriadicRational t = TriadicRational::scaled(302, 3);
    Json j = triadic_to_json(t);
    CHECK(j["num"] == "302");
    CHECK(j["exp"] == 3);
    CHECK(triadic_from_json(j) == t);
    CHECK(triadic_from_json(Json("302/27")) == t);
}

TEST_CASE("family json round trip") {
    ConsistentFamily f;
    f.n0 = 1;
    f.initial = DiagonalD{1, {0, 2}};
    f.taus = {{1, 3}, {1, 1}};
    f.tail = TailPolicy::RepeatPrefix;
    Json j = family_to_json(f);
    CHECK(j["tail"] == "repeat");
    ConsistentFamily g = family_from_json(j);
    CHECK(g.n0 == 1);
    CHECK(g.initial.offsets == f.initial.offsets);
    CHECK(g.initial.depth == 1);
    CHECK(g.taus == f.taus);
    CHECK(g.tail == TailPolicy::RepeatPrefix);

    CHECK(family_from_json(Json::parse(R"({"n0":1,"offsets":[0,0],"taus":[]})")).tail ==
          TailPolicy::AllCentral);
    CHECK_THROWS_AS(tail_from_name("sometimes"), std::invalid_argument);
}

TEST_CASE("tensor csv round trip") {
    BoxTensor t;
    t.depth = 1;
    t.d = 2;
    t.values[{0, 0}] = Rational(1, 4);
    t.values[{1, 3}] = Rational(5, 1);
    std::string csv = tensor_to_csv(t);
    BoxTensor u = tensor_from_csv(csv, 2);
    CHECK(u.values == t.values);

    // triadic pair encoding
    BoxTensor v = tensor_from_csv("0,0,5,2\n1,1,1,0\n", 2);
    CHECK(v.at({0, 0}) == Rational(5, 9));
    CHECK(v.at({1, 1}) == 1);
    CHECK_THROWS_AS(tensor_from_csv("0,0\n", 2), std::invalid_argument);
}

TEST_CASE("rational strings") {
    CHECK(rational_string(Rational(25, 12)) == "25/12");
    CHECK(rational_string(Rational(4, 1)) == "4");
    CHECK(parse_rational("25/12") == Rational(25, 12));
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("5/3^2") == Rational(5, 9));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("atomic write") {
    auto dir = std::filesystem::temp_directory_path() / "chacon-serialize-test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "out.txt").string();
    atomic_write(path, "hello\n");
    std::ifstream in(path);
    std::string s;
    std::getline(in, s);
    CHECK(s == "hello");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("figure 1 svg shows every level of the step") {
    TowerGeometry g(4);
    std::string svg = render_figure1(g, 2);
    CHECK(svg.find("<svg") == 0);
    size_t rects = 0, at = 0;
    while ((at = svg.find("<rect", at)) != std::string::npos) {
        ++rects;
        at += 5;
    }
    CHECK(rects == 50);  // h_2
    // deterministic output
    CHECK(svg == render_figure1(g, 2));
}

TEST_CASE("figure 2 svg derives its cells from the tau rules") {
    TowerGeometry g(4);
    std::string svg = render_figure2(g, DiagonalD{1, {0, 0}});
    // 4 starred cells at value sets {1,2} and {2,3}
    size_t stars = 0, at = 0;
    while ((at = svg.find("class='star'", at)) != std::string::npos) {
        ++stars;
        at += 10;
    }
    CHECK(stars == 4);
    // three identical central labels
    size_t centrals = 0;
    at = 0;
    while ((at = svg.find("(0,0) central", at)) != std::string::npos) {
        ++centrals;
        at += 5;
    }
    CHECK(centrals == 3);
    // the two corner cells carry the refined offsets
    CHECK(svg.find("(0,17)") != std::string::npos);
    CHECK(svg.find("(17,0)") != std::string::npos);
    CHECK_THROWS_AS(render_figure2(g, DiagonalD{1, {0, 0, 0}}), std::invalid_argument);
}
