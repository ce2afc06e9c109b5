#include <doctest.h>

#include <memory>

#include "coxtile/ball.hpp"
#include "coxtile/tiling_space.hpp"
#include "coxtile/walls.hpp"

using namespace coxtile;

namespace {

struct Fixture {
    explicit Fixture(int radius)
        : ball(enumerate_ball(std::make_shared<CoxeterGroup>(right_angled_polygon_system(6)), radius)),
          walls(enumerate_walls(ball)) {}
    Ball ball;
    WallSet walls;
    std::vector<int> palette{0, 1, 0, 1, 0, 1};
};

}  // namespace

TEST_SUITE("tiling_space") {

TEST_CASE("labels intern faces in generator order") {
    TileLabels space;
    const int a = space.intern({{0, 1}, {1, -1}});
    const int b = space.intern({{1, -1}, {0, 1}});
    CHECK(a != b);
    CHECK(space.intern({{0, 1}, {1, -1}}) == a);
    CHECK(space.size() == 2);
    CHECK(space.faces(b)[0] == FaceLabel{1, -1});
}

TEST_CASE("translates of the refined tiling differ") {
    const Fixture f(8);
    TileLabels space;
    const Resolution r = refined_resolution(f.walls, f.palette);
    const LabeledTiling t = label_tiling(f.walls, r.wall_color, r.orientation, space);
    for (Index g = 1; g < f.ball.ball_end(2); ++g) {
        const TranslateVerdict v = translate_compare(t, g, 6);
        CHECK_FALSE(v.fixed);
        REQUIRE(v.witness != kNone);
        CHECK(f.ball.norm(v.witness) == v.first_depth);
        const Index y = f.ball.walk(f.ball.inverse(g), f.ball.word(v.witness));
        CHECK(t.label[y] != t.label[v.witness]);
    }
    CHECK(translate_compare(t, 0, 6).fixed);
}

TEST_CASE("the constant tiling is fixed by every translate") {
    const Fixture f(8);
    TileLabels space;
    const LabeledTiling c = constant_tiling(f.ball, space);
    CHECK(space.size() == 1);
    for (Index g = 1; g < f.ball.ball_end(2); ++g) CHECK(translate_compare(c, g, 6).fixed);
}

TEST_CASE("window errors name the radius needed") {
    const Fixture f(5);
    TileLabels space;
    const Resolution r = alternating_palette_resolution(f.walls, f.palette);
    const LabeledTiling t = label_tiling(f.walls, r.wall_color, r.orientation, space);
    const LabeledTiling c = constant_tiling(f.ball, space);
    try {
        translate_compare(c, 1, 6);
        FAIL("expected a window error");
    } catch (const WindowError& e) {
        CHECK(std::string(e.what()).find("required radius is at least 8") != std::string::npos);
    }
    CHECK_THROWS_AS(restrict_patch(t, 5), std::invalid_argument);
    CHECK(t.label[f.ball.ball_end(4)] == -1);
}

TEST_CASE("patch distance is an ultrametric on rebased tilings") {
    const Fixture f(6);
    TileLabels space;
    std::vector<TilingPatch> patches;
    for (Index base : {Index{0}, Index{1}, Index{2}, f.ball.find(Word{0, 2})}) {
        const Resolution r = alternating_palette_resolution(f.walls, f.palette, base);
        patches.push_back(restrict_patch(label_tiling(f.walls, r.wall_color, r.orientation, space), 4));
    }
    for (const auto& p : patches) CHECK(patch_distance(p, p) == 0);
    for (const auto& p : patches)
        for (const auto& q : patches) {
            CHECK(patch_distance(p, q) == patch_distance(q, p));
            for (const auto& s : patches) CHECK(patch_distance(p, s) <= std::max(patch_distance(p, q), patch_distance(q, s)));
        }
    CHECK(patch_distance(patches[0], patches[1]) > 0);
    const TilingPatch small = restrict_patch(patches[0], 2);
    CHECK(small.depth == 2);
    CHECK(small.chambers.size() == f.ball.ball_end(2));
    CHECK_THROWS_AS(patch_distance(small, patches[1]), std::invalid_argument);
    CHECK_THROWS_AS(restrict_patch(small, 3), std::invalid_argument);
}

TEST_CASE("patch distance values") {
    TilingPatch p;
    p.depth = 3;
    p.words = {Word{}, Word{0}, Word{1}, Word{0, 1}};
    p.chambers = {0, 1, 2, 3};
    p.labels = {0, 1, 1, 2};
    TilingPatch q = p;
    CHECK(patch_distance(p, q) == 0);
    q.labels[3] = 5;
    CHECK(patch_distance(p, q) == Rational(1, 2));
    q.labels[1] = 5;
    CHECK(patch_distance(p, q) == 1);
    q.labels[0] = 5;
    CHECK(patch_distance(p, q) == 2);
}

}
