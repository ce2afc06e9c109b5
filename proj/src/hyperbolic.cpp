#include "coxtile/hyperbolic.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace coxtile {

double lorentz_dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]; }

// <a - b, a - b> = 4 sinh^2(d / 2); stable for nearby points, unlike acosh.
double hyperbolic_distance(const Vec3& a, const Vec3& b) {
    const Vec3 d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, lorentz_dot(d, d))));
}

Vec3 act(const Mat3& m, const Vec3& v) {
    Vec3 out{};
    for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return out;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return out;
}

Mat3 identity3() { return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

double lorentz_defect(const Mat3& m) {
    constexpr double J[3] = {1, 1, -1};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k) v += m[k][i] * J[k] * m[k][j];
            worst = std::max(worst, std::abs(v - (i == j ? J[i] : 0.0)));
        }
    return worst;
}

namespace {

Vec3 scale(const Vec3& v, double k) { return {v[0] * k, v[1] * k, v[2] * k}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

// Tangent vector at p toward q.
Vec3 tangent_toward(const Vec3& p, const Vec3& q) { return add(q, scale(p, lorentz_dot(p, q))); }

// Normal of the geodesic through p and q: J (p x q), unit spacelike.
Vec3 geodesic_normal(const Vec3& p, const Vec3& q) {
    Vec3 n{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
    n[2] = -n[2];
    const double len2 = lorentz_dot(n, n);
    if (!(len2 > 1e-300)) throw GeometryError("degenerate side: endpoints coincide");
    return scale(n, 1.0 / std::sqrt(len2));
}

Vec3 centroid(const HPolygon& poly) {
    Vec3 c{0, 0, 0};
    for (const auto& v : poly.vertices) c = add(c, v);
    return scale(c, 1.0 / std::sqrt(-lorentz_dot(c, c)));
}

std::array<double, 2> klein(const Vec3& p) { return {p[0] / p[2], p[1] / p[2]}; }

double cross2(const std::array<double, 2>& o, const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool segments_cross(const std::array<double, 2>& a, const std::array<double, 2>& b,
                    const std::array<double, 2>& c, const std::array<double, 2>& d) {
    const double d1 = cross2(a, b, c);
    const double d2 = cross2(a, b, d);
    const double d3 = cross2(c, d, a);
    const double d4 = cross2(c, d, b);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

HPolygon regular_polygon(int p, double r) {
    HPolygon poly;
    for (int k = 0; k < p; ++k) {
        const double t = 2.0 * std::numbers::pi * k / p;
        poly.vertices.push_back({std::sinh(r) * std::cos(t), std::sinh(r) * std::sin(t), std::cosh(r)});
    }
    return poly;
}

}  // namespace

double interior_angle(const HPolygon& poly, std::size_t i) {
    const std::size_t p = poly.vertices.size();
    const Vec3& v = poly.vertices[i];
    const Vec3 a = tangent_toward(v, poly.vertices[(i + p - 1) % p]);
    const Vec3 b = tangent_toward(v, poly.vertices[(i + 1) % p]);
    const double c = lorentz_dot(a, b) / std::sqrt(lorentz_dot(a, a) * lorentz_dot(b, b));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double side_length(const HPolygon& poly, std::size_t i) {
    const std::size_t p = poly.vertices.size();
    return hyperbolic_distance(poly.vertices[i], poly.vertices[(i + 1) % p]);
}

double polygon_area(const HPolygon& poly) {
    const std::size_t p = poly.vertices.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < p; ++i) sum += interior_angle(poly, i);
    return (static_cast<double>(p) - 2.0) * std::numbers::pi - sum;
}

HPolygon right_angled_polygon(int p) {
    if (p <= 4) {
        throw GeometryError("no regular right-angled " + std::to_string(p) +
                            "-gon exists in the hyperbolic plane; need at least 5 sides");
    }
    // Vertex angle falls from the Euclidean value toward 0 as R grows.
    double lo = 1e-6;
    double hi = 20.0;
    const double target = std::numbers::pi / 2.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (interior_angle(regular_polygon(p, mid), 0) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return regular_polygon(p, 0.5 * (lo + hi));
}

HPolygon build_polygon(int n) {
    if (n < 3) {
        throw GeometryError("no regular right-angled " + std::to_string(2 * n) +
                            "-gon exists in the hyperbolic plane; need n >= 3");
    }
    return right_angled_polygon(2 * n);
}

Vec3 side_normal(const HPolygon& poly, std::size_t i) {
    const std::size_t p = poly.vertices.size();
    Vec3 n = geodesic_normal(poly.vertices[i], poly.vertices[(i + 1) % p]);
    if (lorentz_dot(n, centroid(poly)) > 0) n = scale(n, -1.0);
    return n;
}

std::vector<Mat3> reflection_matrices(const HPolygon& poly) {
    std::vector<Mat3> out;
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        const Vec3 n = side_normal(poly, i);
        const Vec3 jn{n[0], n[1], -n[2]};
        Mat3 r = identity3();
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) r[a][b] -= 2.0 * n[a] * jn[b];
        out.push_back(r);
    }
    return out;
}

Mat3 lorentz_gram_schmidt(const Mat3& m) {
    Vec3 c[3];
    for (int j = 0; j < 3; ++j) c[j] = {m[0][j], m[1][j], m[2][j]};
    c[2] = scale(c[2], 1.0 / std::sqrt(-lorentz_dot(c[2], c[2])));
    c[0] = add(c[0], scale(c[2], lorentz_dot(c[0], c[2])));
    c[0] = scale(c[0], 1.0 / std::sqrt(lorentz_dot(c[0], c[0])));
    c[1] = add(c[1], scale(c[2], lorentz_dot(c[1], c[2])));
    c[1] = add(c[1], scale(c[0], -lorentz_dot(c[1], c[0])));
    c[1] = scale(c[1], 1.0 / std::sqrt(lorentz_dot(c[1], c[1])));
    Mat3 out{};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) out[i][j] = c[j][i];
    return out;
}

namespace {

PlacedTiling prepare(const Ball& ball, const HPolygon& base, const std::vector<Mat3>& reflections,
                     int max_norm, Index& end) {
    if (reflections.size() != ball.num_letters()) {
        throw std::invalid_argument("one reflection per generator expected");
    }
    if (max_norm < 0 || max_norm > ball.radius()) max_norm = ball.radius();
    end = ball.ball_end(max_norm);
    PlacedTiling out;
    out.base = base;
    out.transforms.resize(end);
    out.tiles.resize(end);
    out.transforms[0] = identity3();
    return out;
}

void place_one(const Ball& ball, const std::vector<Mat3>& reflections, PlacedTiling& out, Index g) {
    const Letter s = ball.word(g).back();
    const Index p = ball.neighbor(g, s);
    Mat3 t = multiply(out.transforms[p], reflections[s]);
    if (ball.norm(g) % 6 == 0) t = lorentz_gram_schmidt(t);
    out.transforms[g] = t;
}

void finish(const Ball& ball, PlacedTiling& out, Index end) {
    for (Index g = 0; g < end; ++g) {
        HPolygon& tile = out.tiles[g];
        tile.vertices.clear();
        for (const auto& v : out.base.vertices) {
            const Vec3 w = act(out.transforms[g], v);
            const double drift = std::abs(lorentz_dot(w, w) + 1.0);
            if (drift > out.max_drift) {
                out.max_drift = drift;
                out.drift_norm = ball.norm(g);
            }
            tile.vertices.push_back(w);
        }
    }
}

}  // namespace

PlacedTiling place_tiles(const Ball& ball, const HPolygon& base, const std::vector<Mat3>& reflections,
                         int max_norm) {
    Index end = 0;
    PlacedTiling out = prepare(ball, base, reflections, max_norm, end);
    for (int k = 1; k <= ball.radius(); ++k) {
        const auto [first, last] = ball.sphere(k);
        const auto stop = static_cast<std::int64_t>(std::min(last, end));
#pragma omp parallel for schedule(static)
        for (std::int64_t g = first; g < stop; ++g) place_one(ball, reflections, out, static_cast<Index>(g));
    }
    finish(ball, out, end);
    return out;
}

PlacedTiling place_tiles_serial(const Ball& ball, const HPolygon& base,
                                const std::vector<Mat3>& reflections, int max_norm) {
    Index end = 0;
    PlacedTiling out = prepare(ball, base, reflections, max_norm, end);
    for (Index g = 1; g < end; ++g) place_one(ball, reflections, out, g);
    finish(ball, out, end);
    return out;
}

double default_magnitude(double eps, int i, int j) { return eps * (9.0 * i + j + 1.0) / 100.0; }

DeformedTiling deform_vertices(const PlacedTiling& placed, const WallSet& walls,
                               const OrientationAssignment& orientation, const VertexDeformation& deform) {
    const Ball& ball = walls.ball();
    const std::size_t p = placed.base.vertices.size();
    if (p != ball.num_letters()) throw std::invalid_argument("polygon sides and generators disagree");
    std::vector<Vec3> base_normals;
    for (std::size_t i = 0; i < p; ++i) base_normals.push_back(side_normal(placed.base, i));

    DeformedTiling out;
    out.tiles = placed.tiles;
    std::map<std::pair<WallId, WallId>, Vec3> moved;
    for (Index g = 0; g < placed.tiles.size(); ++g) {
        for (std::size_t i = 0; i < p; ++i) {
            // Vertex i lies on sides i - 1 and i.
            const auto sa = static_cast<Letter>((i + p - 1) % p);
            const auto sb = static_cast<Letter>(i);
            const WallId wa = walls.wall_of(g, sa);
            const WallId wb = walls.wall_of(g, sb);
            const Vec3 v = placed.tiles[g].vertices[i];
            if (wa == kNoWall || wb == kNoWall) {
                ++out.fixed_vertices;
                continue;
            }
            const auto key = std::minmax(wa, wb);
            auto it = moved.find(key);
            if (it != moved.end()) {
                out.tiles[g].vertices[i] = it->second;
                continue;
            }
            const int ca = deform.wall_class[static_cast<std::size_t>(wa)];
            const int cb = deform.wall_class[static_cast<std::size_t>(wb)];
            const int fa = face_sign(walls, orientation, g, sa);
            const int fb = face_sign(walls, orientation, g, sb);
            if (ca < 0 || cb < 0 || ca == cb || fa == 0 || fb == 0) {
                moved.emplace(key, v);
                ++out.fixed_vertices;
                continue;
            }
            // Normals toward the + side of each wall.
            Vec3 ma = act(placed.transforms[g], base_normals[sa]);
            Vec3 mb = act(placed.transforms[g], base_normals[sb]);
            if (fa > 0) ma = scale(ma, -1.0);
            if (fb > 0) mb = scale(mb, -1.0);
            Vec3 u = add(ma, mb);
            u = add(u, scale(v, lorentz_dot(u, v)));
            u = scale(u, 1.0 / std::sqrt(lorentz_dot(u, u)));
            const WallId a_wall = ca == 0 ? wa : wb;
            const WallId b_wall = ca == 0 ? wb : wa;
            const double d = deform.magnitude(deform.wall_index[static_cast<std::size_t>(a_wall)],
                                            deform.wall_index[static_cast<std::size_t>(b_wall)]);
            const Vec3 w = add(scale(v, std::cosh(d)), scale(u, std::sinh(d)));
            moved.emplace(key, w);
            out.tiles[g].vertices[i] = w;
            ++out.moved_vertices;
        }
    }
    for (Index g = 0; g < out.tiles.size(); ++g) {
        try {
            convexity_check(out.tiles[g]);
        } catch (const GeometryError& e) {
            throw GeometryError("deformed tile '" + ball.group().format_word(ball.word(g)) +
                                "' is no longer simple: " + e.what());
        }
    }
    return out;
}

ConvexityVerdict convexity_check(const HPolygon& poly) {
    const std::size_t p = poly.vertices.size();
    if (p < 3) throw GeometryError("polygon needs at least 3 vertices");
    std::vector<std::array<double, 2>> k;
    for (const auto& v : poly.vertices) k.push_back(klein(v));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 2; j < p; ++j) {
            if (i == 0 && j == p - 1) continue;
            if (segments_cross(k[i], k[(i + 1) % p], k[j], k[(j + 1) % p])) {
                throw GeometryError("edges at vertices " + std::to_string(i) + " and " + std::to_string(j) +
                                    " intersect");
            }
        }
    }
    ConvexityVerdict out;
    double first_sign = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        const double c = cross2(k[(i + p - 1) % p], k[i], k[(i + 1) % p]);
        if (c == 0.0 || (first_sign != 0.0 && (c > 0) != (first_sign > 0))) {
            out.convex = false;
            out.first_bad_vertex = i;
            return out;
        }
        if (first_sign == 0.0) first_sign = c;
    }
    return out;
}

namespace {

struct Box {
    double x0, y0, x1, y1;
};

bool strictly_inside(const std::vector<std::array<double, 2>>& poly, const std::array<double, 2>& q) {
    constexpr double margin = 1e-9;
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto& a = poly[i];
        const auto& b = poly[j];
        const double dx = b[0] - a[0];
        const double dy = b[1] - a[1];
        const double len2 = dx * dx + dy * dy;
        double t = len2 > 0 ? ((q[0] - a[0]) * dx + (q[1] - a[1]) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double ex = a[0] + t * dx - q[0];
        const double ey = a[1] + t * dy - q[1];
        if (ex * ex + ey * ey < margin * margin) return false;
        if ((a[1] > q[1]) != (b[1] > q[1]) && q[0] < (b[0] - a[0]) * (q[1] - a[1]) / (b[1] - a[1]) + a[0]) {
            inside = !inside;
        }
    }
    return inside;
}

}  // namespace

OverlapReport overlap_check(const std::vector<HPolygon>& tiles, std::size_t samples_per_tile,
                            std::uint64_t seed) {
    OverlapReport out;
    out.samples = samples_per_tile;
    const std::size_t n = tiles.size();
    std::vector<std::vector<std::array<double, 2>>> k(n);
    std::vector<Box> box(n);
    for (std::size_t t = 0; t < n; ++t) {
        Box b{1e9, 1e9, -1e9, -1e9};
        for (const auto& v : tiles[t].vertices) {
            const auto q = klein(v);
            k[t].push_back(q);
            b = {std::min(b.x0, q[0]), std::min(b.y0, q[1]), std::max(b.x1, q[0]), std::max(b.y1, q[1])};
        }
        box[t] = b;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t t = 0; t < n; ++t) {
        const auto& poly = k[t];
        if (poly.size() < 3) continue;
        // Fan triangles from vertex 0, chosen by area.
        std::vector<double> cumulative;
        double total = 0.0;
        for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
            total += std::abs(cross2(poly[0], poly[i], poly[i + 1]));
            cumulative.push_back(total);
        }
        std::vector<std::size_t> hits(n, 0);
        for (std::size_t s = 0; s < samples_per_tile; ++s) {
            const double pick = unit(rng) * total;
            const std::size_t tri =
                std::min<std::size_t>(std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(),
                                      cumulative.size() - 1);
            double a = unit(rng);
            double b = unit(rng);
            if (a + b > 1.0) {
                a = 1.0 - a;
                b = 1.0 - b;
            }
            const auto& p0 = poly[0];
            const auto& p1 = poly[tri + 1];
            const auto& p2 = poly[tri + 2];
            const std::array<double, 2> q{p0[0] + a * (p1[0] - p0[0]) + b * (p2[0] - p0[0]),
                                          p0[1] + a * (p1[1] - p0[1]) + b * (p2[1] - p0[1])};
            if (!strictly_inside(poly, q)) continue;
            for (std::size_t u = 0; u < n; ++u) {
                if (u == t || q[0] < box[u].x0 || q[0] > box[u].x1 || q[1] < box[u].y0 || q[1] > box[u].y1) continue;
                if (strictly_inside(k[u], q)) ++hits[u];
            }
        }
        for (std::size_t u = 0; u < n; ++u) {
            const double f = samples_per_tile ? static_cast<double>(hits[u]) / samples_per_tile : 0.0;
            if (f > out.max_fraction) {
                out.max_fraction = f;
                out.worst_a = t;
                out.worst_b = u;
            }
        }
    }
    return out;
}

}  // namespace coxtile
