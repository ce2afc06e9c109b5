#include "coxtile/report.hpp"

#include <stdexcept>

namespace coxtile {

std::string rational_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string emit_report(const Report& report) {
    Json doc;
    doc["version"] = report.version;
    doc["results"] = Json::array();
    for (const auto& r : report.results) doc["results"].push_back(r);
    return doc.dump(2) + "\n";
}

std::string emit_report(const std::vector<Json>& results) { return emit_report(Report{kReportVersion, results}); }

Report parse_report(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("version") || !doc.contains("results") || !doc["version"].is_string() ||
        !doc["results"].is_array()) {
        throw std::invalid_argument("report needs a string 'version' and an array 'results'");
    }
    Report r;
    r.version = doc["version"].get<std::string>();
    if (r.version != kReportVersion) {
        throw std::invalid_argument("unsupported report version '" + r.version + "', expected " + kReportVersion);
    }
    for (const auto& item : doc["results"]) r.results.push_back(item);
    return r;
}

Json power_verdict_json(const seqs::PowerVerdict& v, int p, std::size_t scan) {
    Json j;
    j["power"] = p;
    j["scan"] = scan;
    j["free"] = v.is_free();
    if (v.witness) {
        Json w;
        w["position"] = v.witness->position;
        std::string word;
        for (auto s : v.witness->word) word += static_cast<char>('0' + s);
        w["word"] = word;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json ball_json(const Ball& ball, bool with_words) {
    Json j;
    j["radius"] = ball.radius();
    j["size"] = ball.size();
    j["sphere_sizes"] = ball.sphere_sizes();
    if (with_words) {
        Json words = Json::array();
        for (Index g = 0; g < ball.size(); ++g) words.push_back(ball.group().format_word(ball.word(g)));
        j["normal_forms"] = words;
    }
    return j;
}

namespace {

std::string word_of(const Ball& ball, Index g) { return ball.group().format_word(ball.word(g)); }

}  // namespace

Json aperiodicity_json(const Ball& ball, const AperiodicityReport& report) {
    Json j;
    j["r1"] = report.r1;
    j["r2"] = report.r2;
    j["rho"] = report.rho;
    j["pairs_tested"] = report.pairs.size();
    j["unwitnessed"] = report.unwitnessed();
    Json pairs = Json::array();
    for (const auto& p : report.pairs) {
        Json r;
        r["g"] = word_of(ball, p.g);
        r["h"] = word_of(ball, p.h);
        if (p.witness == kNone) {
            r["witness_x"] = nullptr;
        } else {
            r["witness_x"] = word_of(ball, p.witness);
        }
        r["radius_used"] = p.radius_used;
        pairs.push_back(r);
    }
    j["pairs"] = pairs;
    return j;
}

Json walls_json(const WallSet& walls, const WallClasses& classes, const std::vector<LevelMap>& levels,
                const std::vector<WallTree>& trees) {
    const CoxeterGroup& g = walls.group();
    Json j;
    Json cls = Json::array();
    for (const auto& c : classes.classes) {
        Json r;
        r["color"] = c.color;
        r["size"] = c.members.size();
        r["disjoint"] = c.disjoint;
        r["verified_radius"] = c.verified_radius;
        if (c.violation) {
            r["violation"] = {g.format_word(walls[c.violation->first].word),
                              g.format_word(walls[c.violation->second].word)};
        } else {
            r["violation"] = nullptr;
        }
        cls.push_back(r);
    }
    j["classes"] = cls;
    Json tr = Json::array();
    for (const auto& t : trees) {
        Json r;
        r["color"] = t.color;
        r["root"] = t.root == kNoWall ? Json(nullptr) : Json(g.format_word(walls[t.root].word));
        r["regions"] = t.regions;
        r["acyclic"] = t.acyclic;
        r["connected_core"] = t.connected_core;
        tr.push_back(r);
    }
    j["trees"] = tr;
    Json records = Json::array();
    for (WallId w = 0; w < static_cast<WallId>(walls.size()); ++w) {
        Json r;
        r["canonical_word"] = g.format_word(walls[w].word);
        const int color = classes.color[static_cast<std::size_t>(w)];
        r["color"] = color;
        Json level = "indeterminate";
        WallId parent = kNoWall;
        for (std::size_t c = 0; c < classes.classes.size(); ++c) {
            if (classes.classes[c].color != color) continue;
            if (c < levels.size() && levels[c].has(w)) level = levels[c].at(w);
            if (c < trees.size()) {
                if (auto pos = trees[c].position(w)) parent = trees[c].parent[*pos];
            }
        }
        r["level"] = level;
        r["tree_parent"] = parent == kNoWall ? Json(nullptr) : Json(g.format_word(walls[parent].word));
        records.push_back(r);
    }
    j["walls"] = records;
    return j;
}

Json weight_json(const WeightFunction& w) {
    Json j = Json::object();
    for (const auto& [c, v] : w.plus_values()) j[std::to_string(c)] = rational_string(v);
    return j;
}

Json alphabet_json(const TileAlphabet& alphabet, const BalanceVerdict& verdict) {
    Json j;
    j["orientation"] = alphabet.orientation;
    j["coloring"] = alphabet.coloring;
    j["radius"] = alphabet.radius;
    j["face_colors"] = alphabet.face_colors;
    Json tiles = Json::array();
    for (const auto& t : alphabet.tiles) {
        Json faces = Json::array();
        for (const auto& f : t) {
            faces.push_back(std::to_string(f.color) + (f.sign > 0 ? "+" : f.sign < 0 ? "-" : ""));
        }
        tiles.push_back(faces);
    }
    j["tiles"] = tiles;
    j["excluded_chambers"] = alphabet.excluded.size();
    j["verdict"] = to_string(verdict.kind);
    j["witness"] = verdict.witness ? weight_json(*verdict.witness) : Json(nullptr);
    return j;
}

Json patch_json(const WordProblem& group, const TilingPatch& patch) {
    Json j;
    j["depth"] = patch.depth;
    Json tiles = Json::array();
    for (std::size_t i = 0; i < patch.words.size(); ++i) {
        tiles.push_back({group.format_word(patch.words[i]), patch.labels[i]});
    }
    j["tiles"] = tiles;
    return j;
}

}  // namespace coxtile
