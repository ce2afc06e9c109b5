#include "coxtile/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "coxtile/ball.hpp"
#include "coxtile/coloring.hpp"
#include "coxtile/hyperbolic.hpp"
#include "coxtile/report.hpp"
#include "coxtile/seqs.hpp"
#include "coxtile/tiles.hpp"
#include "coxtile/tiling_space.hpp"
#include "coxtile/walls.hpp"

namespace coxtile {

namespace {

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

CoxeterSystem builtin_system(const std::string& name) {
    if (name == "pentagon") return right_angled_polygon_system(5);
    if (name == "hexagon") return right_angled_polygon_system(6);
    if (name == "octagon") return right_angled_polygon_system(8);
    if (name == "dihedral3") return dihedral_system(3);
    if (name == "dihedral4") return dihedral_system(4);
    if (name == "dihedral5") return dihedral_system(5);
    if (name == "infinite_dihedral") return dihedral_system(0);
    throw InputError("unknown system '" + name +
                     "'; give a JSON file or one of pentagon, hexagon, octagon, dihedral3, dihedral4, "
                     "dihedral5, infinite_dihedral");
}

// A readable file wins; otherwise the file stem names a built-in system.
CoxeterSystem resolve_system(const std::string& text, const std::string& fallback) {
    const std::string name = text.empty() ? fallback : text;
    if (std::filesystem::is_regular_file(name)) return load_system_file(name);
    return builtin_system(std::filesystem::path(name).stem().string());
}

std::vector<int> parse_palette(const std::string& text, std::size_t rank) {
    std::vector<int> p;
    if (text.empty() || text == "distinct") {
        for (std::size_t i = 0; i < rank; ++i) p.push_back(static_cast<int>(i));
    } else if (text == "alternating") {
        for (std::size_t i = 0; i < rank; ++i) p.push_back(static_cast<int>(i % 2));
    } else if (text == "single") {
        p.assign(rank, 0);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(item, &used);
                if (used != item.size() || v < 0) throw std::invalid_argument(item);
                p.push_back(v);
            } catch (const std::exception&) {
                throw InputError("palette entry '" + item + "' is not a nonnegative integer");
            }
        }
    }
    if (p.size() != rank) {
        throw InputError("palette has " + std::to_string(p.size()) + " entries; the system has " +
                         std::to_string(rank) + " generators");
    }
    return p;
}

std::size_t cap_of(const RunConfig& c) { return c.cap ? c.cap : default_ball_cap(); }

int radius_or(const RunConfig& c, int fallback) { return c.radius >= 0 ? c.radius : fallback; }

Ball make_ball(const CoxeterSystem& sys, int radius, const RunConfig& c) {
    return enumerate_ball(std::make_shared<CoxeterGroup>(sys), radius, cap_of(c));
}

Json header(const RunConfig& c, const std::string& system) {
    Json j;
    j["subcommand"] = c.subcommand;
    if (!system.empty()) j["system"] = system;
    return j;
}

std::string system_label(const RunConfig& c, const std::string& fallback) {
    const std::string s = c.system.empty() ? fallback : c.system;
    return std::filesystem::path(s).stem().string();
}

int cmd_seq(const RunConfig& c, std::vector<Json>& results) {
    const std::string kind = c.kind.empty() ? "ternary" : c.kind;
    if (c.n < 0) throw InputError("--n must be nonnegative");
    const auto n = static_cast<std::size_t>(c.n);
    Json j = header(c, "");
    j["kind"] = kind;
    j["n"] = n;
    bool ok = true;
    if (kind == "morse_thue") {
        const auto seq = seqs::morse_thue_prefix(n);
        j["terms"] = seq;
        const auto v = seqs::verify_power_free(seq, 3, n);
        j["cube_free"] = power_verdict_json(v, 3, n);
        ok = v.is_free();
    } else if (kind == "ternary") {
        const auto seq = seqs::square_free_prefix(n);
        j["terms"] = seq;
        const auto v = seqs::verify_power_free(seq, 2, n);
        j["square_free"] = power_verdict_json(v, 2, n);
        ok = v.is_free();
    } else if (kind == "squares") {
        std::vector<int> terms;
        for (std::size_t i = 0; i < n; ++i) {
            terms.push_back(seqs::z_color(seqs::ZColoringKind::squares, static_cast<std::int64_t>(i)));
        }
        j["terms"] = terms;
    } else {
        throw InputError("unknown sequence kind '" + kind + "'");
    }
    results.push_back(j);
    return ok ? kExitOk : kExitVerification;
}

int cmd_ball(const RunConfig& c, std::vector<Json>& results) {
    const CoxeterSystem sys = resolve_system(c.system, "pentagon");
    const Ball ball = make_ball(sys, radius_or(c, 3), c);
    Json j = header(c, system_label(c, "pentagon"));
    j["ball"] = ball_json(ball, c.words);
    results.push_back(j);
    return kExitOk;
}

int cmd_color(const RunConfig& c, std::vector<Json>& results) {
    if (c.r1 < 1 || c.r2 < 0 || c.rho < 0) throw InputError("need r1 >= 1, r2 >= 0, rho >= 0");
    const std::string kind = c.kind.empty() ? "norm" : c.kind;
    if (kind == "norm") {
        const CoxeterSystem sys = resolve_system(c.system, "pentagon");
        const Ball ball = make_ball(sys, radius_or(c, c.r1 + c.r2 + c.rho), c);
        const Coloring col = norm_coloring(ball);
        const AperiodicityReport rep = aperiodicity_report(ball, col, c.r1, c.r2, c.rho);
        Json j = header(c, system_label(c, "pentagon"));
        j["coloring"] = kind;
        j["palette_size"] = col.palette_size;
        j["ball_size"] = ball.size();
        j["report"] = aperiodicity_json(ball, rep);
        results.push_back(j);
        return rep.unwitnessed() == 0 ? kExitOk : kExitVerification;
    }
    seqs::ZColoringKind zk;
    if (kind == "squares") {
        zk = seqs::ZColoringKind::squares;
    } else if (kind == "morse_thue") {
        zk = seqs::ZColoringKind::morse_thue;
    } else {
        throw InputError("unknown coloring kind '" + kind + "'");
    }
    const auto defect = seqs::squares_limit_defect(1, c.rho);
    const int reach = static_cast<int>(defect.center) + c.rho + c.r1;
    const int radius = std::max(radius_or(c, 0), std::max(c.r1 + c.r2 + c.rho, reach));
    const Ball ball = enumerate_ball(std::make_shared<Lattice>(1), radius, cap_of(c));
    const auto& lattice = static_cast<const Lattice&>(ball.group());
    Coloring col;
    col.palette_size = 2;
    for (Index x = 0; x < ball.size(); ++x) {
        col.colors.push_back(seqs::z_color(zk, lattice.coordinates(ball.word(x))[0]));
    }
    std::vector<std::pair<Index, Index>> pairs;
    for (Index g = 1; g < ball.ball_end(c.r1); ++g)
        for (Index h = 0; h < ball.ball_end(c.r2); ++h) pairs.emplace_back(g, h);
    const Index one = ball.find(lattice.word_of(std::vector<std::int64_t>{1}));
    const Index far = ball.find(lattice.word_of(std::vector<std::int64_t>{defect.center}));
    pairs.emplace_back(one, far);
    AperiodicityReport rep = aperiodicity_report_pairs(ball, col, pairs, c.rho);
    rep.r1 = c.r1;
    rep.r2 = c.r2;
    Json j = header(c, "Z");
    j["coloring"] = kind;
    j["palette_size"] = col.palette_size;
    j["defect"] = {{"m", defect.m}, {"center", defect.center}, {"half_width", defect.half_width}};
    j["report"] = aperiodicity_json(ball, rep);
    results.push_back(j);
    return kExitOk;
}

struct ClassData {
    WallClasses classes;
    std::vector<LevelMap> levels;
    std::vector<WallTree> trees;
};

int cmd_walls(const RunConfig& c, std::vector<Json>& results) {
    const CoxeterSystem sys = resolve_system(c.system, "hexagon");
    const Ball ball = make_ball(sys, radius_or(c, 4), c);
    const WallSet walls = enumerate_walls(ball);
    ClassData d;
    d.classes = color_walls(walls, parse_palette(c.palette, sys.rank()));
    Json j = header(c, system_label(c, "hexagon"));
    j["radius"] = ball.radius();
    j["wall_count"] = walls.size();
    j["palette_valid"] = d.classes.valid();
    int status = d.classes.valid() ? kExitOk : kExitVerification;
    if (d.classes.valid()) {
        for (const auto& cls : d.classes.classes) {
            d.levels.push_back(peel_levels(walls, cls, 0));
            try {
                d.trees.push_back(build_wall_tree(walls, cls));
                if (!d.trees.back().connected_core) status = kExitVerification;
            } catch (const StructuralError& e) {
                j["structural_error"] = e.what();
                status = kExitVerification;
            }
        }
    }
    j["walls"] = walls_json(walls, d.classes, d.levels, d.trees);
    results.push_back(j);
    return status;
}

int cmd_balance(const RunConfig& c, std::vector<Json>& results) {
    const CoxeterSystem sys = resolve_system(c.system, "hexagon");
    const Ball ball = make_ball(sys, radius_or(c, 5), c);
    const WallSet walls = enumerate_walls(ball);
    const std::vector<int> palette = parse_palette(c.palette, sys.rank());
    Json j = header(c, system_label(c, "hexagon"));
    j["radius"] = ball.radius();
    j["refined"] = c.refine;

    std::vector<int> wall_color;
    OrientationAssignment orientation;
    WallClasses classes = color_walls(walls, palette);
    if (!classes.valid()) {
        j["palette_valid"] = false;
        results.push_back(j);
        return kExitVerification;
    }
    if (c.orientation == "alternating") {
        const Resolution r = c.refine ? refined_resolution(walls, palette) : alternating_palette_resolution(walls, palette);
        wall_color = r.wall_color;
        orientation = r.orientation;
    } else {
        wall_color = c.refine ? tree_refined_colors(walls, classes) : classes.color;
        orientation = c.orientation == "all_plus" ? orient_all_plus(walls) : orient_unsigned(walls);
    }
    TileAlphabet alphabet = build_alphabet(walls, wall_color, orientation);
    alphabet.coloring = c.refine ? "tree_refined" : "palette";
    const BalanceVerdict verdict = classify_balance(alphabet);
    j["palette_valid"] = true;
    j["alphabet"] = alphabet_json(alphabet, verdict);
    int status = kExitOk;
    if (verdict.kind == BalanceKind::unbalanced) {
        const WitnessCheck check = verify_unbalanced_witness(alphabet, *verdict.witness);
        Json sums = Json::array();
        for (const auto& s : check.sums) sums.push_back(rational_string(s));
        j["witness_sums"] = sums;
        j["witness_verified"] = check.all_positive;
        if (!check.all_positive) status = kExitVerification;
    }
    results.push_back(j);
    return status;
}

int cmd_render(const RunConfig& c, std::vector<Json>& results, std::string& svg_text) {
    if (c.n < 3) throw InputError("--n must be at least 3 (a right-angled 2n-gon needs 2n >= 6 here)");
    const int radius = radius_or(c, 3);
    const CoxeterSystem sys = right_angled_polygon_system(2 * c.n);
    const Ball ball = make_ball(sys, radius + 2, c);
    const WallSet walls = enumerate_walls(ball);
    std::vector<int> palette;
    for (int i = 0; i < 2 * c.n; ++i) palette.push_back(i % 2);
    const Resolution res = refined_resolution(walls, palette);

    const HPolygon poly = build_polygon(c.n);
    const PlacedTiling placed = place_tiles(ball, poly, reflection_matrices(poly), radius);
    const double eps = c.epsilon >= 0 ? c.epsilon : 0.05 * side_length(poly, 0);

    VertexDeformation deform;
    deform.wall_class.assign(walls.size(), -1);
    deform.wall_index.assign(walls.size(), -1);
    for (std::size_t k = 0; k < res.trees.size(); ++k) {
        const WallTree& t = res.trees[k];
        for (std::size_t i = 0; i < t.walls.size(); ++i) {
            if (t.depth[i] < 0) continue;
            const auto d = static_cast<std::uint64_t>(t.depth[i]);
            deform.wall_class[static_cast<std::size_t>(t.walls[i])] = t.color;
            deform.wall_index[static_cast<std::size_t>(t.walls[i])] = 3 * seqs::ternary_at(d) + static_cast<int>(d % 3);
        }
    }
    deform.magnitude = [eps](int i, int j) { return default_magnitude(eps, i, j); };

    std::vector<HPolygon> tiles = placed.tiles;
    std::size_t moved = 0;
    if (!c.plain) {
        DeformedTiling def = deform_vertices(placed, walls, res.orientation, deform);
        tiles = std::move(def.tiles);
        moved = def.moved_vertices;
    }

    Json nonconvex = Json::array();
    std::vector<RenderTile> render;
    for (Index g = 0; g < tiles.size(); ++g) {
        if (!convexity_check(tiles[g]).convex) nonconvex.push_back(sys.format_word(ball.word(g)));
        RenderTile rt;
        rt.polygon = tiles[g];
        rt.word = sys.format_word(ball.word(g));
        rt.fill = ball.norm(g) % 2;
        for (std::size_t s = 0; s < sys.rank(); ++s) {
            const WallId w = walls.wall_of(g, static_cast<Letter>(s));
            const int cls = deform.wall_class[static_cast<std::size_t>(w)];
            rt.face_colors.push_back(cls < 0 ? -1 : 9 * cls + deform.wall_index[static_cast<std::size_t>(w)]);
            rt.face_signs.push_back(face_sign(walls, res.orientation, g, static_cast<Letter>(s)));
        }
        render.push_back(std::move(rt));
    }
    const OverlapReport overlap = overlap_check(tiles, c.samples, c.seed);
    SvgOptions opts;
    opts.title = "right-angled " + std::to_string(2 * c.n) + "-gon tiling, radius " + std::to_string(radius);
    svg_text = render_svg(render, opts);

    Json j = header(c, "");
    j["n"] = c.n;
    j["radius"] = radius;
    j["tiles"] = tiles.size();
    j["deformed"] = !c.plain;
    j["epsilon"] = eps;
    j["moved_vertices"] = moved;
    j["nonconvex_tiles"] = nonconvex;
    j["max_drift"] = placed.max_drift;
    j["overlap_max_fraction"] = overlap.max_fraction;
    j["overlap_samples_per_tile"] = overlap.samples;
    j["seed"] = c.seed;
    results.push_back(j);
    const bool ok = nonconvex.empty() && overlap.max_fraction < 1e-6 && placed.max_drift <= kDriftTolerance;
    return ok ? kExitOk : kExitVerification;
}

int cmd_space(const RunConfig& c, std::vector<Json>& results) {
    if (c.n < 3) throw InputError("--n must be at least 3");
    const int radius = radius_or(c, 8);
    const CoxeterSystem sys = right_angled_polygon_system(2 * c.n);
    const Ball ball = make_ball(sys, radius, c);
    const WallSet walls = enumerate_walls(ball);
    std::vector<int> palette;
    for (int i = 0; i < 2 * c.n; ++i) palette.push_back(i % 2);

    TileLabels space;
    const Resolution res = refined_resolution(walls, palette);
    const LabeledTiling tiling = label_tiling(walls, res.wall_color, res.orientation, space);
    const LabeledTiling constant = constant_tiling(ball, space);

    int status = kExitOk;
    Json translations = Json::array();
    Json control = Json::array();
    for (Index g = 1; g < ball.ball_end(c.r1); ++g) {
        const std::string word = sys.format_word(ball.word(g));
        for (int which = 0; which < 2; ++which) {
            Json r;
            r["g"] = word;
            try {
                const TranslateVerdict v = translate_compare(which == 0 ? tiling : constant, g, c.depth);
                r["verdict"] = v.fixed ? "fixed" : "differs";
                r["first_depth"] = v.fixed ? Json(nullptr) : Json(v.first_depth);
                if (which == 0 && v.fixed) status = kExitVerification;
                if (which == 1 && !v.fixed) status = kExitVerification;
            } catch (const WindowError& e) {
                r["verdict"] = "window_error";
                r["message"] = e.what();
                status = kExitVerification;
            }
            (which == 0 ? translations : control).push_back(r);
        }
    }

    Json distances = Json::array();
    const int pdepth = std::min(c.depth, radius - 1);
    const Resolution home = alternating_palette_resolution(walls, palette, 0);
    const TilingPatch p0 = restrict_patch(label_tiling(walls, home.wall_color, home.orientation, space), pdepth);
    for (Index g = 1; g < ball.ball_end(1); ++g) {
        const Resolution moved = alternating_palette_resolution(walls, palette, g);
        const TilingPatch pg = restrict_patch(label_tiling(walls, moved.wall_color, moved.orientation, space), pdepth);
        distances.push_back({{"base", sys.format_word(ball.word(g))}, {"distance", rational_string(patch_distance(p0, pg))}});
    }

    Json j = header(c, "");
    j["n"] = c.n;
    j["radius"] = radius;
    j["depth"] = c.depth;
    j["translations"] = translations;
    j["constant_control"] = control;
    j["rebased_distances"] = distances;
    results.push_back(j);
    return status;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
    if (!f) throw InputError("failed writing '" + path + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::vector<Json> results;
    std::string svg;
    int status = kExitOk;
    try {
        if (config.radius < -1) throw InputError("radius must be nonnegative");
        if (config.epsilon < 0 && config.epsilon != -1.0) throw InputError("epsilon must be nonnegative");
        const std::string& s = config.subcommand;
        if (s == "seq") {
            status = cmd_seq(config, results);
        } else if (s == "ball") {
            status = cmd_ball(config, results);
        } else if (s == "color") {
            status = cmd_color(config, results);
        } else if (s == "walls") {
            status = cmd_walls(config, results);
        } else if (s == "balance") {
            status = cmd_balance(config, results);
        } else if (s == "render") {
            status = cmd_render(config, results, svg);
        } else if (s == "space") {
            status = cmd_space(config, results);
        } else {
            throw InputError("unknown subcommand '" + s + "'");
        }
        const std::string json = emit_report(results);
        if (s == "render" && config.svg.empty()) {
            out << svg;
            if (!config.out.empty()) write_text(config.out, json);
        } else {
            if (s == "render") write_text(config.svg, svg);
            if (config.out.empty()) {
                out << json;
            } else {
                write_text(config.out, json);
            }
        }
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const StructuralError& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return status;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Limit-aperiodic colorings, walls and balanced tilings of Coxeter groups"};
    app.require_subcommand(1);

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "write the JSON report to this file");
        sub->add_option("--cap", c.cap, "ball size cap (default: COXTILE_BALL_CAP or 200000)");
    };
    const auto system_opt = [&](CLI::App* sub) {
        sub->add_option("--system", c.system, "Coxeter system JSON file or built-in name");
        sub->add_option("--radius", c.radius, "ball radius")->check(CLI::NonNegativeNumber);
    };

    auto* seq = app.add_subcommand("seq", "sequence prefixes and power-freeness");
    seq->add_option("--kind", c.kind)->check(CLI::IsMember({"morse_thue", "ternary", "squares"}));
    seq->add_option("--n", c.n, "prefix length")->check(CLI::NonNegativeNumber);
    common(seq);

    auto* ball = app.add_subcommand("ball", "ball enumeration statistics");
    system_opt(ball);
    ball->add_flag("--words", c.words, "list normal forms");
    common(ball);

    auto* color = app.add_subcommand("color", "norm coloring and aperiodicity report");
    system_opt(color);
    color->add_option("--kind", c.kind)->check(CLI::IsMember({"norm", "squares", "morse_thue"}));
    color->add_option("--r1", c.r1, "translation radius");
    color->add_option("--r2", c.r2, "translate radius");
    color->add_option("--rho", c.rho, "window radius");
    common(color);

    auto* walls = app.add_subcommand("walls", "wall classes, levels and trees");
    system_opt(walls);
    walls->add_option("--palette", c.palette, "distinct | alternating | single | comma list");
    common(walls);

    auto* balance = app.add_subcommand("balance", "tile alphabet and balance verdict");
    system_opt(balance);
    balance->add_option("--palette", c.palette, "distinct | alternating | single | comma list");
    balance->add_option("--orientation", c.orientation)
        ->check(CLI::IsMember({"alternating", "all_plus", "unsigned"}));
    balance->add_flag("--refine", c.refine, "refine colors by the wall-tree coloring");
    common(balance);

    auto* render = app.add_subcommand("render", "SVG of the deformed 2n-gon tiling");
    render->add_option("--n", c.n, "half the number of polygon sides");
    render->add_option("--radius", c.radius, "ball radius of placed tiles")->check(CLI::NonNegativeNumber);
    render->add_option("--epsilon", c.epsilon, "deformation scale (default 0.05 x side length)")
        ->check(CLI::NonNegativeNumber);
    render->add_flag("--plain", c.plain, "skip the vertex deformation");
    render->add_option("--svg", c.svg, "SVG file (default: stdout)");
    render->add_option("--seed", c.seed, "seed for overlap sampling");
    render->add_option("--samples", c.samples, "overlap samples per tile");
    common(render);

    auto* space = app.add_subcommand("space", "translation comparisons and patch distances");
    space->add_option("--n", c.n, "half the number of polygon sides");
    space->add_option("--radius", c.radius, "ball radius")->check(CLI::NonNegativeNumber);
    space->add_option("--depth", c.depth, "comparison depth")->check(CLI::NonNegativeNumber);
    space->add_option("--r1", c.r1, "translation radius");
    common(space);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInput;
    }
    for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
    if (c.subcommand == "seq" && seq->count("--n") == 0) c.n = 64;
    return run(c, out, err);
}

}  // namespace coxtile
