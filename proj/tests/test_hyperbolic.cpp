#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <set>

#include "coxtile/ball.hpp"
#include "coxtile/hyperbolic.hpp"
#include "coxtile/seqs.hpp"
#include "coxtile/tiles.hpp"
#include "coxtile/walls.hpp"
#include "oracles.hpp"

using namespace coxtile;
using std::numbers::pi;

namespace {

double max_diff(const Mat3& a, const Mat3& b) {
    double m = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

struct Demo {
    explicit Demo(int n, int radius)
        : ball(enumerate_ball(std::make_shared<CoxeterGroup>(right_angled_polygon_system(2 * n)), radius + 2)),
          walls(enumerate_walls(ball)),
          poly(build_polygon(n)) {
        std::vector<int> pal;
        for (int i = 0; i < 2 * n; ++i) pal.push_back(i % 2);
        res = refined_resolution(walls, pal);
        placed = place_tiles(ball, poly, reflection_matrices(poly), radius);
        deform.wall_class.assign(walls.size(), -1);
        deform.wall_index.assign(walls.size(), -1);
        for (const WallTree& t : res.trees)
            for (std::size_t i = 0; i < t.walls.size(); ++i) {
                if (t.depth[i] < 0) continue;
                const auto d = static_cast<std::uint64_t>(t.depth[i]);
                deform.wall_class[static_cast<std::size_t>(t.walls[i])] = t.color;
                deform.wall_index[static_cast<std::size_t>(t.walls[i])] = 3 * seqs::ternary_at(d) + static_cast<int>(d % 3);
            }
    }
    Ball ball;
    WallSet walls;
    HPolygon poly;
    Resolution res;
    PlacedTiling placed;
    VertexDeformation deform;
};

}  // namespace

TEST_SUITE("hyperbolic_render") {

TEST_CASE("lorentz basics") {
    const Vec3 o{0, 0, 1};
    CHECK(lorentz_dot(o, o) == doctest::Approx(-1));
    const Vec3 p{std::sinh(1.5), 0, std::cosh(1.5)};
    CHECK(hyperbolic_distance(o, p) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(lorentz_defect(identity3()) == 0);
}

TEST_CASE("right-angled polygons match the law of cosines") {
    for (int p : {5, 6, 8, 10}) {
        const HPolygon poly = right_angled_polygon(p);
        REQUIRE(poly.vertices.size() == static_cast<std::size_t>(p));
        for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
            CHECK(std::abs(interior_angle(poly, i) - pi / 2) < 1e-9);
            CHECK(side_length(poly, i) == doctest::Approx(oracle::regular_side(p, pi / 2)).epsilon(1e-10));
            CHECK(hyperbolic_distance(Vec3{0, 0, 1}, poly.vertices[i]) ==
                  doctest::Approx(oracle::regular_circumradius(p, pi / 2)).epsilon(1e-10));
            CHECK(std::abs(lorentz_dot(poly.vertices[i], poly.vertices[i]) + 1) < 1e-12);
        }
        CHECK(polygon_area(poly) == doctest::Approx((p / 2.0 - 2.0) * pi).epsilon(1e-9));
    }
    CHECK_THROWS_AS(right_angled_polygon(4), GeometryError);
    CHECK_THROWS_AS(build_polygon(2), GeometryError);
    CHECK(build_polygon(3).vertices.size() == 6);
}

TEST_CASE("reflections are involutive Lorentz maps with right-angled products") {
    const HPolygon poly = build_polygon(3);
    const auto r = reflection_matrices(poly);
    REQUIRE(r.size() == 6);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(lorentz_defect(r[i]) < 1e-12);
        CHECK(max_diff(multiply(r[i], r[i]), identity3()) < 1e-12);
        const Mat3 rr = multiply(r[i], r[(i + 1) % r.size()]);
        CHECK(max_diff(multiply(rr, rr), identity3()) < 1e-8);
        // The reflection fixes both ends of its side.
        const Vec3 a = act(r[i], poly.vertices[i]);
        const Vec3 b = act(r[i], poly.vertices[(i + 1) % 6]);
        for (int k = 0; k < 3; ++k) {
            CHECK(a[k] == doctest::Approx(poly.vertices[i][k]));
            CHECK(b[k] == doctest::Approx(poly.vertices[(i + 1) % 6][k]));
        }
        const Vec3 n = side_normal(poly, i);
        CHECK(lorentz_dot(n, n) == doctest::Approx(1));
        CHECK(lorentz_dot(n, Vec3{0, 0, 1}) < 0);
    }
}

TEST_CASE("gram-schmidt repairs drift") {
    Mat3 m = reflection_matrices(build_polygon(3))[0];
    m[0][0] += 1e-6;
    CHECK(lorentz_defect(m) > 1e-7);
    CHECK(lorentz_defect(lorentz_gram_schmidt(m)) < 1e-12);
}

TEST_CASE("placement tiles the disk without gaps between neighbours") {
    const Demo d(3, 4);
    REQUIRE(d.placed.tiles.size() == d.ball.ball_end(4));
    CHECK(d.placed.max_drift < kDriftTolerance);
    const PlacedTiling serial = place_tiles_serial(d.ball, d.poly, reflection_matrices(d.poly), 4);
    REQUIRE(serial.tiles.size() == d.placed.tiles.size());
    for (std::size_t t = 0; t < serial.tiles.size(); ++t)
        for (std::size_t v = 0; v < 6; ++v)
            for (int k = 0; k < 3; ++k) CHECK(serial.tiles[t].vertices[v][k] == d.placed.tiles[t].vertices[v][k]);
    // Neighbouring tiles share the side between them.
    for (Index g = 0; g < d.ball.ball_end(3); ++g)
        for (Letter s = 0; s < 6; ++s) {
            const Index h = d.ball.neighbor(g, s);
            const auto& a = d.placed.tiles[g].vertices;
            const auto& b = d.placed.tiles[h].vertices;
            CHECK(hyperbolic_distance(a[s], b[s]) < 1e-7);
            CHECK(hyperbolic_distance(a[(s + 1) % 6], b[(s + 1) % 6]) < 1e-7);
        }
    const OverlapReport o = overlap_check(d.placed.tiles, 32, 7);
    CHECK(o.max_fraction < 1e-6);
}

TEST_CASE("deformed tiles stay convex and face-to-face") {
    const Demo d(3, 4);
    const double eps = 0.05 * side_length(d.poly, 0);
    VertexDeformation deform = d.deform;
    deform.magnitude = [eps](int i, int j) { return default_magnitude(eps, i, j); };
    const DeformedTiling def = deform_vertices(d.placed, d.walls, d.res.orientation, deform);
    REQUIRE(def.tiles.size() == d.placed.tiles.size());
    CHECK(def.moved_vertices > 0);
    for (const HPolygon& t : def.tiles) CHECK(convexity_check(t).convex);
    for (Index g = 0; g < d.ball.ball_end(3); ++g)
        for (Letter s = 0; s < 6; ++s) {
            const Index h = d.ball.neighbor(g, s);
            CHECK(hyperbolic_distance(def.tiles[g].vertices[s], def.tiles[h].vertices[s]) < 1e-7);
            CHECK(hyperbolic_distance(def.tiles[g].vertices[(s + 1) % 6], def.tiles[h].vertices[(s + 1) % 6]) < 1e-7);
        }
    const OverlapReport o = overlap_check(def.tiles, 32, 11);
    CHECK(o.max_fraction < 1e-6);
    // Vertex types get distinct displacements, so some vertex moved by a
    // different amount than another.
    std::set<long> moved;
    for (std::size_t v = 0; v < 6; ++v)
        moved.insert(std::lround(1e9 * hyperbolic_distance(def.tiles[0].vertices[v], d.placed.tiles[0].vertices[v])));
    CHECK(moved.size() > 1);
    CHECK(default_magnitude(1.0, 0, 0) == doctest::Approx(0.01));
    CHECK(default_magnitude(1.0, 8, 8) == doctest::Approx(0.81));
}

TEST_CASE("convexity and overlap detect bad shapes") {
    HPolygon square = right_angled_polygon(6);
    CHECK(convexity_check(square).convex);
    HPolygon dented = square;
    dented.vertices[2] = {0.0, 0.0, 1.0};
    CHECK_FALSE(convexity_check(dented).convex);
    HPolygon bow = square;
    std::swap(bow.vertices[1], bow.vertices[3]);
    CHECK_THROWS_AS(convexity_check(bow), GeometryError);
    const OverlapReport o = overlap_check({square, square}, 16, 3);
    CHECK(o.max_fraction > 0.5);
}

TEST_CASE("svg output") {
    const HPolygon poly = build_polygon(3);
    RenderTile t{poly, "", {0, 1, 0, 1, 0, 1}, {1, -1, 0, 1, -1, 0}, 0};
    SvgOptions opts;
    opts.title = "a <b> & c";
    const std::string svg = render_svg({t}, opts);
    CHECK(svg.find("<g class=\"tile\" data-word=\"\" data-colors=\"0 1 0 1 0 1\" data-signs=\"+ - 0 + - 0\">") !=
          std::string::npos);
    CHECK(svg.find("a &lt;b&gt; &amp; c") != std::string::npos);
    CHECK(svg.find("-0.00000") == std::string::npos);
    std::size_t ticks = 0;
    for (std::size_t p = svg.find("class=\"tick\""); p != std::string::npos; p = svg.find("class=\"tick\"", p + 1))
        ++ticks;
    CHECK(ticks == 4);
    CHECK(render_svg({t}, opts) == svg);
    const auto q = to_disk(Vec3{0, 0, 1});
    CHECK(q[0] == 0);
    const auto pts = sample_geodesic(poly.vertices[0], poly.vertices[1], 1e-4);
    CHECK(pts.size() > 2);
    for (const auto& pt : pts) CHECK(pt[0] * pt[0] + pt[1] * pt[1] < 1);
}

}
