#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "coxtile/coloring.hpp"
#include "coxtile/exact_lp.hpp"
#include "coxtile/seqs.hpp"
#include "coxtile/tiles.hpp"
#include "coxtile/tiling_space.hpp"
#include "coxtile/walls.hpp"

namespace coxtile {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "coxtile-report/1";

/// "p/q" in lowest terms, or "p" for integers.
std::string rational_string(const Rational& q);
Rational parse_rational(const std::string& text);

struct Report {
    std::string version = kReportVersion;
    std::vector<Json> results;
};

/// {"version": ..., "results": [...]}, two-space indent, trailing newline.
std::string emit_report(const Report& report);
std::string emit_report(const std::vector<Json>& results);
/// Throws std::invalid_argument when the document is not a report.
Report parse_report(const std::string& text);

Json power_verdict_json(const seqs::PowerVerdict& v, int p, std::size_t scan);
Json ball_json(const Ball& ball, bool with_words);
Json aperiodicity_json(const Ball& ball, const AperiodicityReport& report);
/// One record per wall: canonical word, color, level or "indeterminate",
/// tree parent word (null at roots and unreached walls).
Json walls_json(const WallSet& walls, const WallClasses& classes, const std::vector<LevelMap>& levels,
                const std::vector<WallTree>& trees);
Json weight_json(const WeightFunction& w);
Json alphabet_json(const TileAlphabet& alphabet, const BalanceVerdict& verdict);
Json patch_json(const WordProblem& group, const TilingPatch& patch);

}  // namespace coxtile
