#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxtile/ball.hpp"
#include "coxtile/tiles.hpp"

namespace coxtile {

/// Hyperboloid coordinates (x, y, z); points satisfy x^2 + y^2 - z^2 = -1.
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

double lorentz_dot(const Vec3& a, const Vec3& b);
double hyperbolic_distance(const Vec3& a, const Vec3& b);
Vec3 act(const Mat3& m, const Vec3& v);
Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 identity3();
/// max |(M^T J M - J)_ij|
double lorentz_defect(const Mat3& m);

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HPolygon {
    std::vector<Vec3> vertices;  // counterclockwise; side i joins vertex i and i + 1
};

/// Interior angle at vertex i, measured between tangent vectors.
double interior_angle(const HPolygon& poly, std::size_t i);
double side_length(const HPolygon& poly, std::size_t i);
/// Gauss-Bonnet: (p - 2) pi minus the angle sum.
double polygon_area(const HPolygon& poly);

/// Regular right-angled p-gon centered at (0, 0, 1), p >= 5; vertex 0 on
/// the positive x axis. Throws GeometryError for p <= 4.
HPolygon right_angled_polygon(int p);
/// Regular right-angled 2n-gon.
HPolygon build_polygon(int n);

/// Spacelike unit normal of side i, pointing away from the polygon.
Vec3 side_normal(const HPolygon& poly, std::size_t i);
/// Reflection in side i: x -> x - 2 <n, x> n.
std::vector<Mat3> reflection_matrices(const HPolygon& poly);

/// Re-orthonormalizes the columns of a Lorentz matrix in the Lorentz form.
Mat3 lorentz_gram_schmidt(const Mat3& m);

struct PlacedTiling {
    HPolygon base;
    std::vector<Mat3> transforms;  // per placed element, ball order
    std::vector<HPolygon> tiles;
    double max_drift = 0.0;        // max |<v, v> + 1| over placed vertices
    int drift_norm = 0;            // word length where max_drift occurs
};

inline constexpr double kDriftTolerance = 1e-8;

/// Places the base polygon at every element of norm <= max_norm (the whole
/// ball by default) by evaluating its normal form in the reflections,
/// renormalizing every 6 multiplications.
PlacedTiling place_tiles(const Ball& ball, const HPolygon& base, const std::vector<Mat3>& reflections,
                         int max_norm = -1);
PlacedTiling place_tiles_serial(const Ball& ball, const HPolygon& base,
                                const std::vector<Mat3>& reflections, int max_norm = -1);

/// d_ij = eps (9 i + j + 1) / 100.
double default_magnitude(double eps, int i, int j);

struct VertexDeformation {
    std::vector<int> wall_class;  // per wall: 0 for a, 1 for b, -1 when unusable
    std::vector<int> wall_index;  // per wall: color index within its class
    std::function<double(int i, int j)> magnitude;
};

struct DeformedTiling {
    std::vector<HPolygon> tiles;
    std::size_t moved_vertices = 0;   // distinct geometric vertices displaced
    std::size_t fixed_vertices = 0;   // vertices left in place for lack of data
};

/// Moves each vertex, the crossing of an a-wall and a b-wall, by d_ij along
/// the diagonal of the quadrant on the + side of both oriented walls. One
/// displacement per geometric vertex, so neighbours stay face-to-face.
/// Throws GeometryError naming the vertex when a tile stops being simple.
DeformedTiling deform_vertices(const PlacedTiling& placed, const WallSet& walls,
                               const OrientationAssignment& orientation, const VertexDeformation& deform);

struct ConvexityVerdict {
    bool convex = true;
    std::size_t first_bad_vertex = 0;
};

/// Klein-model test: consecutive edge cross products share a sign.
/// Throws GeometryError on self-intersection.
ConvexityVerdict convexity_check(const HPolygon& poly);

struct OverlapReport {
    double max_fraction = 0.0;  // largest share of one tile's samples inside another
    std::size_t worst_a = 0;
    std::size_t worst_b = 0;
    std::size_t samples = 0;
};

/// Samples points strictly inside every tile and counts how many fall
/// strictly inside another tile. Deterministic for a fixed seed.
OverlapReport overlap_check(const std::vector<HPolygon>& tiles, std::size_t samples_per_tile,
                            std::uint64_t seed);

struct RenderTile {
    HPolygon polygon;
    std::string word;
    std::vector<int> face_colors;  // per side
    std::vector<int> face_signs;   // per side: +1 tile on the + side, -1 opposite, 0 none
    int fill = 0;                  // palette slot for the interior
};

struct SvgOptions {
    double stroke_width = 0.004;
    double chord_error = 0.005;  // in disk radii
    double tick_length = 0.12;   // hyperbolic length of sign ticks
    std::vector<std::string> palette = {"#e8eef7", "#f7efe2", "#e6f2e6", "#f4e4ec"};
    std::vector<std::string> face_palette = {"#1f4e99", "#b5651d", "#2e7d32", "#8e24aa", "#c62828",
                                             "#00838f", "#6d4c41", "#ef6c00", "#37474f"};
    std::string title;
};

/// Poincare-disk SVG: the unit circle plus one <g class="tile"> per tile.
std::string render_svg(const std::vector<RenderTile>& tiles, const SvgOptions& options);

/// Poincare-disk image (x, y) / (1 + z).
std::array<double, 2> to_disk(const Vec3& p);
/// Adaptive samples of the geodesic from a to b in the disk, endpoints
/// included, with chordal error at most `tolerance`.
std::vector<std::array<double, 2>> sample_geodesic(const Vec3& a, const Vec3& b, double tolerance);

}  // namespace coxtile
