#include <doctest.h>

#include <memory>
#include <set>

#include "coxtile/ball.hpp"
#include "coxtile/exact_lp.hpp"
#include "coxtile/tiles.hpp"
#include "coxtile/walls.hpp"
#include "oracles.hpp"

using namespace coxtile;

namespace {

struct Fixture {
    explicit Fixture(const CoxeterSystem& sys, int radius)
        : ball(enumerate_ball(std::make_shared<CoxeterGroup>(sys), radius)), walls(enumerate_walls(ball)) {}
    Ball ball;
    WallSet walls;
};

std::vector<int> alternating(std::size_t rank) {
    std::vector<int> p;
    for (std::size_t i = 0; i < rank; ++i) p.push_back(static_cast<int>(i % 2));
    return p;
}

TileAlphabet hand_alphabet(std::vector<std::vector<FaceLabel>> tiles) {
    TileAlphabet a;
    std::set<int> colors;
    for (auto& t : tiles) {
        std::sort(t.begin(), t.end());
        for (const auto& f : t) colors.insert(f.color);
    }
    a.tiles = std::move(tiles);
    a.face_colors.assign(colors.begin(), colors.end());
    return a;
}

FaceLabel P(int c) { return {c, 1}; }
FaceLabel M(int c) { return {c, -1}; }

}  // namespace

TEST_SUITE("exact_lp") {

TEST_CASE("small programs") {
    // max x + y with x + 2y <= 4, 3x + y <= 6.
    const LpResult r = maximize({1, 1}, {{1, 2}, {3, 1}}, {4, 6});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == Rational(14, 5));
    CHECK(r.x[0] == Rational(8, 5));
    CHECK(r.x[1] == Rational(6, 5));
    CHECK(maximize({1}, {{-1}}, {0}).status == LpStatus::unbounded);
    // x >= 1 and x <= 0.
    CHECK(maximize({1}, {{-1}, {1}}, {-1, 0}).status == LpStatus::infeasible);
    // Degenerate start needing phase one.
    const LpResult d = maximize({0, 1}, {{-1, 0}, {1, 1}}, {-2, 5});
    REQUIRE(d.status == LpStatus::optimal);
    CHECK(d.value == 3);
}

}

TEST_SUITE("tiles_balance") {

TEST_CASE("weights are antisymmetric") {
    const WeightFunction w(std::map<int, Rational>{{0, 2}, {1, -1}});
    CHECK(w(P(0)) == 2);
    CHECK(w(M(0)) == -2);
    CHECK(w(FaceLabel{1, 0}) == 0);
    CHECK(w(P(7)) == 0);
    CHECK(tile_sum({P(0), M(1), M(1)}, w) == 4);
    CHECK(w.scaled(3)(P(1)) == -3);
    CHECK_FALSE(w.trivial());
    CHECK(WeightFunction().trivial());
    CHECK_THROWS_AS(WeightFunction::from_signed({{P(0), 1}, {M(0), 1}}), std::invalid_argument);
    const WeightFunction s = WeightFunction::from_signed({{P(0), 1}, {M(0), -1}});
    CHECK(s(M(0)) == -1);
}

TEST_CASE("classifier on hand-built alphabets agrees with the grid oracle") {
    const std::vector<std::pair<std::vector<std::vector<FaceLabel>>, BalanceKind>> cases{
        {{{P(0)}}, BalanceKind::unbalanced},
        {{{P(0)}, {M(0)}}, BalanceKind::strictly_balanced},
        {{{P(0), M(0)}}, BalanceKind::semibalanced},
        {{{P(0), M(1)}, {M(0), P(1)}}, BalanceKind::semibalanced},
        {{{P(0), P(1)}, {M(0), P(1)}, {P(0), M(1)}}, BalanceKind::semibalanced},
        {{{P(0), P(1)}, {M(0), M(1)}, {P(0), M(1)}, {M(0), P(1)}}, BalanceKind::strictly_balanced},
        {{{P(0), P(1), M(2)}, {M(0), P(2)}, {P(1)}}, BalanceKind::unbalanced},
        {{{P(0), M(1)}, {P(1), M(2)}, {P(2), M(0)}, {M(0), M(1), P(2), P(2)}}, BalanceKind::semibalanced},
        {{{FaceLabel{0, 0}, FaceLabel{1, 0}}}, BalanceKind::semibalanced},
    };
    for (const auto& [tiles, expect] : cases) {
        const TileAlphabet a = hand_alphabet(tiles);
        const BalanceVerdict v = classify_balance(a);
        CHECK(v.kind == expect);
        CHECK(oracle::grid_balance(a.tiles, a.face_colors) == v.kind);
        if (v.kind == BalanceKind::unbalanced) {
            REQUIRE(v.witness.has_value());
            CHECK(verify_unbalanced_witness(a, *v.witness).all_positive);
            for (const auto& [c, q] : v.witness->plus_values()) CHECK(q.get_den() == 1);
        }
        if (v.kind == BalanceKind::semibalanced) {
            REQUIRE(v.witness.has_value());
            CHECK_FALSE(v.witness->trivial());
            for (const auto& t : a.tiles) CHECK(tile_sum(t, *v.witness) >= 0);
        }
    }
    CHECK(classify_balance(TileAlphabet{}).kind == BalanceKind::zero_cone);
}

TEST_CASE("alternating resolution of the hexagon group is strictly balanced") {
    const Fixture f(right_angled_polygon_system(6), 5);
    const Resolution r = alternating_palette_resolution(f.walls, alternating(6));
    const TileAlphabet a = build_alphabet(f.walls, r.wall_color, r.orientation);
    CHECK(a.face_colors == std::vector<int>{0, 1});
    const BalanceVerdict v = classify_balance(a);
    CHECK(v.kind == BalanceKind::strictly_balanced);
    CHECK(oracle::grid_balance(a.tiles, a.face_colors) == v.kind);
    CHECK_FALSE(a.excluded.empty());
}

TEST_CASE("all-plus resolution is unbalanced with the unit witness") {
    const Fixture f(right_angled_polygon_system(6), 5);
    const WallClasses c = color_walls(f.walls, alternating(6));
    const TileAlphabet a = build_alphabet(f.walls, c.color, orient_all_plus(f.walls));
    const BalanceVerdict v = classify_balance(a);
    REQUIRE(v.kind == BalanceKind::unbalanced);
    CHECK(verify_unbalanced_witness(a, *v.witness).all_positive);
    const WeightFunction ones(std::map<int, Rational>{{0, 1}, {1, 1}});
    const WitnessCheck check = verify_unbalanced_witness(a, ones);
    CHECK(check.all_positive);
    CHECK(check.sums.size() == a.tiles.size());
    CHECK(oracle::grid_balance(a.tiles, a.face_colors) == v.kind);
}

TEST_CASE("pentagon alphabets against the grid oracle") {
    const Fixture f(right_angled_polygon_system(5), 5);
    const WallClasses c = color_walls(f.walls, {0, 1, 2, 3, 4});
    for (const OrientationAssignment& o :
         {alternating_resolution(f.walls, c), orient_all_plus(f.walls), orient_unsigned(f.walls)}) {
        const TileAlphabet a = build_alphabet(f.walls, c.color, o);
        const BalanceVerdict v = classify_balance(a);
        CHECK(oracle::grid_balance(a.tiles, a.face_colors) == v.kind);
    }
    const TileAlphabet alt = build_alphabet(f.walls, c.color, alternating_resolution(f.walls, c));
    CHECK(classify_balance(alt).kind == BalanceKind::strictly_balanced);
}

TEST_CASE("orientation conventions") {
    const Fixture f(right_angled_polygon_system(6), 4);
    const WallClasses c = color_walls(f.walls, alternating(6));
    const OrientationAssignment o = alternating_resolution(f.walls, c);
    // Level-one walls point away from the base chamber.
    for (Letter s = 0; s < 6; ++s) CHECK(face_sign(f.walls, o, 0, s) == -1);
    // Across a wall the sign of the shared face flips.
    for (Index x = 0; x < f.ball.ball_end(2); ++x)
        for (Letter s = 0; s < 6; ++s) {
            const Index y = f.ball.neighbor(x, s);
            const WallId w = f.walls.wall_of(x, s);
            if (y == kNone || o.sign[static_cast<std::size_t>(w)] == 0) continue;
            CHECK(face_sign(f.walls, o, x, s) == -face_sign(f.walls, o, y, s));
        }
    const OrientationAssignment plus = orient_all_plus(f.walls);
    for (Letter s = 0; s < 6; ++s) CHECK(face_sign(f.walls, plus, 0, s) == 1);
    const OrientationAssignment none = orient_unsigned(f.walls);
    CHECK_FALSE(none.signed_faces);
    CHECK(face_sign(f.walls, none, 3, 2) == 0);
    const Tile t = chamber_tile(f.walls, c.color, o, 0);
    CHECK(t.faces.size() == 6);
    CHECK(t.multiset() == std::vector<FaceLabel>{M(0), M(0), M(0), M(1), M(1), M(1)});
}

TEST_CASE("refined resolution") {
    const Fixture f(right_angled_polygon_system(6), 6);
    const Resolution r = refined_resolution(f.walls, alternating(6));
    CHECK(r.trees.size() == 2);
    CHECK(r.classes.valid());
    const TileAlphabet a = build_alphabet(f.walls, r.wall_color, r.orientation);
    CHECK(a.face_colors.size() > 2);
    const auto refined = tree_refined_colors(f.walls, r.base_classes);
    CHECK(refined == r.wall_color);
}

}
