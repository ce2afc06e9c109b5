#include <fmt/format.h>

#include <cmath>

#include "coxtile/hyperbolic.hpp"

namespace coxtile {

namespace {

std::string num(double v) {
    if (std::abs(v) < 5e-6) v = 0.0;
    return fmt::format("{:.5f}", v);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// SVG y grows downward.
std::string point(const std::array<double, 2>& q) { return num(q[0]) + " " + num(-q[1]); }

Vec3 geodesic_point(const Vec3& a, const Vec3& b, double dist, double t) {
    if (dist < 1e-12) return a;
    const double sa = std::sinh((1.0 - t) * dist) / std::sinh(dist);
    const double sb = std::sinh(t * dist) / std::sinh(dist);
    return {sa * a[0] + sb * b[0], sa * a[1] + sb * b[1], sa * a[2] + sb * b[2]};
}

void refine(const Vec3& a, const Vec3& b, double dist, double t0, double t1, const std::array<double, 2>& q0,
            const std::array<double, 2>& q1, double tol, int depth, std::vector<std::array<double, 2>>& out) {
    const double tm = 0.5 * (t0 + t1);
    const auto qm = to_disk(geodesic_point(a, b, dist, tm));
    const double mx = 0.5 * (q0[0] + q1[0]) - qm[0];
    const double my = 0.5 * (q0[1] + q1[1]) - qm[1];
    if (depth >= 20 || std::sqrt(mx * mx + my * my) <= tol) {
        out.push_back(q1);
        return;
    }
    refine(a, b, dist, t0, tm, q0, qm, tol, depth + 1, out);
    refine(a, b, dist, tm, t1, qm, q1, tol, depth + 1, out);
}

}  // namespace

std::array<double, 2> to_disk(const Vec3& p) { return {p[0] / (1.0 + p[2]), p[1] / (1.0 + p[2])}; }

std::vector<std::array<double, 2>> sample_geodesic(const Vec3& a, const Vec3& b, double tolerance) {
    std::vector<std::array<double, 2>> out{to_disk(a)};
    refine(a, b, hyperbolic_distance(a, b), 0.0, 1.0, to_disk(a), to_disk(b), tolerance, 0, out);
    return out;
}

std::string render_svg(const std::vector<RenderTile>& tiles, const SvgOptions& options) {
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
         "width=\"800\" height=\"800\">\n";
    if (!options.title.empty()) s += "<title>" + escape(options.title) + "</title>\n";
    s += fmt::format("<circle class=\"boundary\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" "
                     "stroke-width=\"{}\"/>\n",
                     num(options.stroke_width));
    for (const RenderTile& tile : tiles) {
        const auto& v = tile.polygon.vertices;
        const std::size_t p = v.size();
        std::string colors;
        std::string signs;
        for (std::size_t i = 0; i < tile.face_colors.size(); ++i) {
            if (i) colors += ' ';
            colors += std::to_string(tile.face_colors[i]);
        }
        for (std::size_t i = 0; i < tile.face_signs.size(); ++i) {
            if (i) signs += ' ';
            signs += tile.face_signs[i] > 0 ? "+" : tile.face_signs[i] < 0 ? "-" : "0";
        }
        s += fmt::format("<g class=\"tile\" data-word=\"{}\" data-colors=\"{}\" data-signs=\"{}\">\n",
                         escape(tile.word), colors, signs);

        std::vector<std::vector<std::array<double, 2>>> sides;
        for (std::size_t i = 0; i < p; ++i) sides.push_back(sample_geodesic(v[i], v[(i + 1) % p], options.chord_error));
        std::string d = "M " + point(sides[0][0]);
        for (const auto& side : sides)
            for (std::size_t k = 1; k < side.size(); ++k) d += " L " + point(side[k]);
        d += " Z";
        const auto& fill = options.palette.empty()
                               ? std::string("#ffffff")
                               : options.palette[static_cast<std::size_t>(tile.fill) % options.palette.size()];
        s += fmt::format("<path class=\"cell\" d=\"{}\" fill=\"{}\" stroke=\"none\"/>\n", d, fill);

        Vec3 center{0, 0, 0};
        for (const auto& x : v) center = {center[0] + x[0], center[1] + x[1], center[2] + x[2]};
        for (std::size_t i = 0; i < p; ++i) {
            std::string fd = "M " + point(sides[i][0]);
            for (std::size_t k = 1; k < sides[i].size(); ++k) fd += " L " + point(sides[i][k]);
            const int color = i < tile.face_colors.size() ? tile.face_colors[i] : 0;
            const auto& stroke =
                options.face_palette.empty()
                    ? std::string("#000000")
                    : options.face_palette[static_cast<std::size_t>(std::max(color, 0)) % options.face_palette.size()];
            s += fmt::format("<path class=\"face\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n", fd,
                             stroke, num(options.stroke_width));

            const int sign = i < tile.face_signs.size() ? tile.face_signs[i] : 0;
            if (sign == 0) continue;
            const Vec3& a = v[i];
            const Vec3& b = v[(i + 1) % p];
            Vec3 m{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
            const double ml = std::sqrt(-lorentz_dot(m, m));
            m = {m[0] / ml, m[1] / ml, m[2] / ml};
            HPolygon seg{{a, b, center}};
            Vec3 n = side_normal(seg, 0);  // away from the tile
            if (sign > 0) n = {-n[0], -n[1], -n[2]};
            const double t = options.tick_length;
            const Vec3 end{std::cosh(t) * m[0] + std::sinh(t) * n[0], std::cosh(t) * m[1] + std::sinh(t) * n[1],
                           std::cosh(t) * m[2] + std::sinh(t) * n[2]};
            s += fmt::format("<path class=\"tick\" d=\"M {} L {}\" stroke=\"#000000\" stroke-width=\"{}\"/>\n",
                             point(to_disk(m)), point(to_disk(end)), num(options.stroke_width));
        }
        s += "</g>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace coxtile
