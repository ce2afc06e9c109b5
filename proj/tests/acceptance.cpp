// Acceptance run: one PASS/FAIL line per criterion.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>

#include "coxtile/ball.hpp"
#include "coxtile/cli.hpp"
#include "coxtile/coloring.hpp"
#include "coxtile/hyperbolic.hpp"
#include "coxtile/report.hpp"
#include "coxtile/seqs.hpp"
#include "coxtile/tiles.hpp"
#include "coxtile/tiling_space.hpp"
#include "coxtile/walls.hpp"
#include "oracles.hpp"

using namespace coxtile;

namespace {

struct Result {
    bool ok = true;
    std::string note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "coxtile");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

std::shared_ptr<CoxeterGroup> group_of(const CoxeterSystem& s) { return std::make_shared<CoxeterGroup>(s); }

std::vector<int> ab_palette(int n) {
    std::vector<int> p;
    for (int i = 0; i < 2 * n; ++i) p.push_back(i % 2);
    return p;
}

Result sequences() {
    Result r;
    const auto mt = seqs::morse_thue_prefix(4096);
    r.require(seqs::verify_power_free(mt, 3, mt.size()).is_free(), "Morse-Thue prefix has a cube");
    const auto t = seqs::square_free_prefix(4096);
    r.require(seqs::verify_power_free(t, 2, t.size()).is_free(), "ternary prefix has a square");
    std::string head;
    for (int i = 0; i < 9; ++i) head += static_cast<char>('0' + t[static_cast<std::size_t>(i)]);
    r.require(head == "021012021", "ternary head is " + head);
    r.note = r.ok ? "cube-free and square-free to 4096, head " + head : r.note;
    return r;
}

Result z_colorings() {
    Result r;
    for (std::int64_t n = -100; n <= 100 && r.ok; ++n) {
        if (n == 0) continue;
        for (std::int64_t m = -100; m <= 100; ++m) {
            const auto q = seqs::z_witness(n, m);
            const bool good = q && std::llabs(*q - m) <= 3 * std::llabs(n) &&
                              seqs::z_color(seqs::ZColoringKind::morse_thue, *q) !=
                                  seqs::z_color(seqs::ZColoringKind::morse_thue, *q + n);
            r.require(good, fmt::format("no witness for n={} m={}", n, m));
        }
    }
    const CliRun c = cli({"color", "--kind", "squares", "--rho", "10"});
    const Json j = parse_report(c.out).results.at(0);
    r.require(j["report"]["unwitnessed"].get<int>() >= 1, "squares coloring has no unwitnessed pair at rho 10");
    if (r.ok) r.note = fmt::format("witnesses on 200x201 grid; squares unwitnessed pairs at rho 10: {}",
                                   j["report"]["unwitnessed"].get<int>());
    return r;
}

Result coxeter_core() {
    Result r;
    const Ball d = enumerate_ball(group_of(dihedral_system(0)), 50);
    for (int k = 0; k <= 50; ++k)
        r.require(d.sphere_sizes()[static_cast<std::size_t>(k)] == (k == 0 ? 1u : 2u),
                  fmt::format("infinite dihedral sphere {} wrong", k));
    std::size_t compared = 0;
    for (const auto& [sys, radius] : std::vector<std::pair<CoxeterSystem, int>>{
             {dihedral_system(3), 6}, {dihedral_system(4), 8}, {dihedral_system(5), 10},
             {dihedral_system(0), 60}, {right_angled_polygon_system(5), 9}}) {
        const Ball b = enumerate_ball(group_of(sys), radius);
        const auto words = oracle::naive_ball(sys, 10000, radius);
        r.require(words.size() == std::min<std::size_t>(10000, b.size()), "oracle size differs");
        for (std::size_t i = 0; i < words.size(); ++i) {
            r.require(b.word(static_cast<Index>(i)) == words[i], "normal form differs from oracle");
            ++compared;
        }
    }
    const Ball p = enumerate_ball(group_of(right_angled_polygon_system(5)), 5);
    const WallSet w = enumerate_walls(p);
    for (Index g = 0; g < p.size(); ++g)
        if (p.interior(g))
            r.require(w.inversion_set(g).size() == static_cast<std::size_t>(p.norm(g)), "wall count differs from norm");
    if (r.ok) r.note = fmt::format("{} normal forms match the oracle", compared);
    return r;
}

Result radial_claim() {
    Result r;
    const Ball b = enumerate_ball(group_of(right_angled_polygon_system(5)), 8);
    const Coloring c = norm_coloring(b);
    const ClaimScanResult s = radial_claim_scan(b, c, 2, 6, 5);
    r.require(s.failures.empty(), "claim fails on the norm coloring");
    Coloring flat;
    flat.palette_size = 1;
    flat.colors.assign(b.size(), flat.palette.intern({0}));
    r.require(!radial_claim_scan(b, flat, 2, 6, 5).failures.empty(), "planted violation missed");
    if (r.ok) r.note = fmt::format("{} translates, {} segment checks met the hypotheses", s.translates, s.hypotheses_satisfied);
    return r;
}

Result z2_counterexample() {
    Result r;
    const Lattice z2(2);
    const Word a = z2.word_of(std::vector<std::int64_t>{1, -1});
    for (int n = 1; n <= 8; ++n) {
        const Ball b = enumerate_ball(std::make_shared<Lattice>(2), 2 * n);
        const DisplacementVerdict v = displacement_exponent(b, a, n);
        const Index diag = b.find(z2.word_of(std::vector<std::int64_t>{n, n}));
        r.require(!v.exponent && std::find(v.failures.begin(), v.failures.end(), diag) != v.failures.end(),
                  fmt::format("(n,n) missing from failures at n={}", n));
        for (int k = 0; k <= n; ++k)
            r.require(z2.norm(z2.word_of(std::vector<std::int64_t>{n - k, n + k})) == 2u * static_cast<unsigned>(n),
                      "norm identity fails");
    }
    if (r.ok) r.note = "(n,n) fails for every k <= n, n = 1..8";
    return r;
}

Result walls_levels() {
    Result r;
    const Ball b = enumerate_ball(group_of(right_angled_polygon_system(6)), 6);
    const WallSet w = enumerate_walls(b);
    const WallClasses c = color_walls(w, ab_palette(3));
    r.require(c.valid(), "palette classes invalid");
    for (const auto& cls : c.classes) {
        r.require(cls.disjoint, "class not disjoint");
        const WallTree t = build_wall_tree(w, cls);
        r.require(t.acyclic && t.connected_core, "wall tree not acyclic and connected");
    }
    std::vector<Index> bases;
    for (Index g = 0; g < b.ball_end(2); ++g) bases.push_back(g);
    r.require(rebase_parity_check(w, c, bases).ok(), "rebasing is not a per-class flip");
    if (r.ok) r.note = fmt::format("{} walls, {} rebased chambers", w.size(), bases.size());
    return r;
}

Result balance() {
    Result r;
    const Ball b = enumerate_ball(group_of(right_angled_polygon_system(6)), 5);
    const WallSet w = enumerate_walls(b);
    const Resolution alt = alternating_palette_resolution(w, ab_palette(3));
    const TileAlphabet a = build_alphabet(w, alt.wall_color, alt.orientation);
    const BalanceVerdict va = classify_balance(a);
    r.require(va.kind == BalanceKind::strictly_balanced, "alternating resolution is " + to_string(va.kind));
    const TileAlphabet p = build_alphabet(w, alt.base_classes.color, orient_all_plus(w));
    const BalanceVerdict vp = classify_balance(p);
    r.require(vp.kind == BalanceKind::unbalanced, "all-plus resolution is " + to_string(vp.kind));
    const WeightFunction ones(std::map<int, Rational>{{0, 1}, {1, 1}});
    r.require(verify_unbalanced_witness(p, ones).all_positive, "unit witness leaves a tile sum <= 0");
    std::size_t compared = 0;
    const Ball pb = enumerate_ball(group_of(right_angled_polygon_system(5)), 5);
    const WallSet pw = enumerate_walls(pb);
    const WallClasses pc = color_walls(pw, {0, 1, 2, 3, 4});
    std::vector<TileAlphabet> set{a, p};
    for (const auto& o : {alternating_resolution(pw, pc), orient_all_plus(pw), orient_unsigned(pw)})
        set.push_back(build_alphabet(pw, pc.color, o));
    set.push_back(build_alphabet(w, alt.base_classes.color, orient_unsigned(w)));
    for (const TileAlphabet& t : set) {
        if (t.face_colors.size() > 6) continue;
        ++compared;
        r.require(oracle::grid_balance(t.tiles, t.face_colors) == classify_balance(t).kind,
                  "classifier disagrees with the grid oracle");
    }
    if (r.ok) r.note = fmt::format("alternating strictly_balanced, all-plus unbalanced, {} alphabets match the grid", compared);
    return r;
}

Result aperiodicity_proxy() {
    Result r;
    const Ball b = enumerate_ball(group_of(right_angled_polygon_system(6)), 8);
    const WallSet w = enumerate_walls(b);
    TileLabels space;
    const Resolution res = refined_resolution(w, ab_palette(3));
    const LabeledTiling t = label_tiling(w, res.wall_color, res.orientation, space);
    const LabeledTiling c = constant_tiling(b, space);
    std::size_t n = 0;
    for (Index g = 1; g < b.ball_end(2); ++g, ++n) {
        try {
            r.require(!translate_compare(t, g, 6).fixed, "a translate fixes the tiling");
            r.require(translate_compare(c, g, 6).fixed, "the constant tiling moved");
        } catch (const WindowError& e) {
            r.require(false, e.what());
        }
    }
    if (r.ok) r.note = fmt::format("{} translates differ, constant control fixed", n);
    return r;
}

Result geometry() {
    Result r;
    const HPolygon poly = build_polygon(3);
    for (std::size_t i = 0; i < 6; ++i)
        r.require(std::abs(interior_angle(poly, i) - std::numbers::pi / 2) <= 1e-9, "angle off pi/2");
    const auto refl = reflection_matrices(poly);
    for (std::size_t i = 0; i < 6; ++i) {
        const Mat3 m = multiply(refl[i], refl[(i + 1) % 6]);
        const Mat3 sq = multiply(m, m);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) r.require(std::abs(sq[a][b] - (a == b ? 1.0 : 0.0)) <= 1e-8, "(R_i R_i+1)^2 != I");
    }
    const std::size_t ball4 = enumerate_ball(group_of(right_angled_polygon_system(6)), 4).size();
    const CliRun svg = cli({"render", "--n", "3", "--radius", "4"});
    r.require(svg.code == kExitOk, "render exited with " + std::to_string(svg.code));
    std::size_t tiles = 0;
    for (std::size_t p = svg.out.find("class=\"tile\""); p != std::string::npos; p = svg.out.find("class=\"tile\"", p + 1))
        ++tiles;
    r.require(tiles == ball4, fmt::format("{} tiles for |B_4| = {}", tiles, ball4));
    const std::string path = "acceptance_render.json";
    cli({"render", "--n", "3", "--radius", "4", "--svg", "acceptance_render.svg", "--out", path});
    std::ifstream f(path);
    const Json j = parse_report({std::istreambuf_iterator<char>(f), {}}).results.at(0);
    r.require(j["nonconvex_tiles"].empty(), "a deformed tile is not convex");
    r.require(j["overlap_max_fraction"].get<double>() < 1e-6, "tiles overlap");
    r.require(cli({"render", "--n", "3", "--radius", "4"}).out == svg.out, "SVG bytes changed between runs");
    std::remove(path.c_str());
    std::remove("acceptance_render.svg");
    if (r.ok) r.note = fmt::format("{} tiles, max overlap {:.1e}", tiles, j["overlap_max_fraction"].get<double>());
    return r;
}

Result reproducibility() {
    Result r;
    const std::vector<std::vector<std::string>> runs{
        {"seq", "--kind", "ternary", "--n", "512"},
        {"ball", "--system", "pentagon", "--radius", "5", "--words"},
        {"color", "--system", "pentagon"},
        {"color", "--kind", "squares", "--rho", "10"},
        {"walls", "--system", "hexagon", "--palette", "alternating", "--radius", "5"},
        {"balance", "--system", "pentagon", "--orientation", "alternating", "--radius", "5"},
        {"render", "--n", "3", "--radius", "3", "--seed", "9"},
        {"space", "--radius", "8", "--depth", "6"},
    };
    for (const auto& args : runs) {
        const CliRun a = cli(args);
        const CliRun b = cli(args);
        r.require(a.code == b.code && a.out == b.out && !a.out.empty(), "output differs for " + args[0]);
    }
    if (r.ok) r.note = fmt::format("{} configurations byte-identical", runs.size());
    return r;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;  // 0: no runtime bound
        std::function<Result()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "sequences", 5, sequences},
        {2, "Z colorings", 10, z_colorings},
        {3, "coxeter core", 0, coxeter_core},
        {4, "radial claim", 60, radial_claim},
        {5, "Z2 counterexample", 0, z2_counterexample},
        {6, "walls and levels", 0, walls_levels},
        {7, "balance", 120, balance},
        {8, "strong aperiodicity proxy", 0, aperiodicity_proxy},
        {9, "geometry", 0, geometry},
        {10, "reproducibility", 0, reproducibility},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r.ok = false;
            r.note = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && s >= c.limit_s) {
            r.require(false, fmt::format("runtime {:.2f} s over the {:.0f} s limit", s, c.limit_s));
        }
        if (!r.ok) ++failed;
        fmt::print("criterion {:>2} {} {}: {} ({:.2f} s)\n", c.id, r.ok ? "PASS" : "FAIL", c.name, r.note, s);
    }
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
