#include "coxtile/tiles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace coxtile {

std::vector<FaceLabel> Tile::multiset() const {
    std::vector<FaceLabel> out = faces;
    std::sort(out.begin(), out.end());
    return out;
}

WeightFunction WeightFunction::from_signed(const std::map<FaceLabel, Rational>& w) {
    std::map<int, Rational> plus;
    for (const auto& [f, v] : w) {
        if (f.sign == 0) {
            if (v != 0) throw std::invalid_argument("an unsigned face is its own opposite and must weigh 0");
            continue;
        }
        auto it = w.find(opposite(f));
        const Rational other = it == w.end() ? Rational(0) : it->second;
        if (v != -other) {
            throw std::invalid_argument("weights are not antisymmetric on color " + std::to_string(f.color));
        }
        plus[f.color] = f.sign > 0 ? v : Rational(-v);
    }
    return WeightFunction(std::move(plus));
}

Rational WeightFunction::operator()(FaceLabel f) const {
    if (f.sign == 0) return 0;
    auto it = plus_.find(f.color);
    if (it == plus_.end()) return 0;
    return f.sign > 0 ? it->second : Rational(-it->second);
}

bool WeightFunction::trivial() const {
    return std::all_of(plus_.begin(), plus_.end(), [](const auto& kv) { return kv.second == 0; });
}

WeightFunction WeightFunction::scaled(const Rational& k) const {
    std::map<int, Rational> out;
    for (const auto& [c, v] : plus_) out[c] = v * k;
    return WeightFunction(std::move(out));
}

OrientationAssignment orient_alternating(const WallSet& walls, const std::vector<LevelMap>& levels,
                                         const std::vector<int>& flipped) {
    OrientationAssignment o;
    o.name = "alternating";
    o.sign.assign(walls.size(), 0);
    if (!levels.empty()) o.base = levels.front().base;
    std::vector<char> seen(walls.size(), 0);
    for (const LevelMap& lm : levels) {
        if (lm.base != o.base) throw std::invalid_argument("level maps use different base chambers");
        const bool flip = std::find(flipped.begin(), flipped.end(), lm.color) != flipped.end();
        for (WallId w = 0; w < static_cast<WallId>(walls.size()); ++w) {
            const int lev = lm.at(w);
            if (lev == 0) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            if (!lm.has(w)) continue;
            int s = lev % 2 == 0 ? 1 : -1;
            if (flip) s = -s;
            o.sign[static_cast<std::size_t>(w)] = s;
        }
    }
    for (WallId w = 0; w < static_cast<WallId>(walls.size()); ++w) {
        if (seen[static_cast<std::size_t>(w)] && o.sign[static_cast<std::size_t>(w)] == 0) o.excluded.push_back(w);
    }
    return o;
}

OrientationAssignment orient_all_plus(const WallSet& walls, Index base) {
    OrientationAssignment o;
    o.name = "all_plus";
    o.base = base;
    o.sign.assign(walls.size(), 1);
    return o;
}

OrientationAssignment orient_unsigned(const WallSet& walls) {
    OrientationAssignment o;
    o.name = "unsigned";
    o.sign.assign(walls.size(), 0);
    o.signed_faces = false;
    return o;
}

OrientationAssignment alternating_resolution(const WallSet& walls, const WallClasses& classes, Index base) {
    std::vector<LevelMap> levels;
    for (const auto& cls : classes.classes) levels.push_back(peel_levels(walls, cls, base));
    OrientationAssignment o = orient_alternating(walls, levels);
    o.base = base;
    return o;
}

int face_sign(const WallSet& walls, const OrientationAssignment& o, Index x, Letter s) {
    const WallId w = walls.wall_of(x, s);
    if (w == kNoWall) return 0;
    const int sigma = o.sign[static_cast<std::size_t>(w)];
    if (sigma == 0) return 0;
    return separates_exact(walls, w, o.base, x) ? -sigma : sigma;
}

Tile chamber_tile(const WallSet& walls, const std::vector<int>& wall_color,
                  const OrientationAssignment& orientation, Index x) {
    Tile t;
    for (std::size_t s = 0; s < walls.ball().num_letters(); ++s) {
        const WallId w = walls.wall_of(x, static_cast<Letter>(s));
        const int color = w == kNoWall ? -1 : wall_color[static_cast<std::size_t>(w)];
        t.faces.push_back({color, face_sign(walls, orientation, x, static_cast<Letter>(s))});
    }
    return t;
}

TileAlphabet build_alphabet(const WallSet& walls, const std::vector<int>& wall_color,
                            const OrientationAssignment& orientation) {
    if (wall_color.size() != walls.size()) throw std::invalid_argument("one color per wall expected");
    const Ball& ball = walls.ball();
    TileAlphabet a;
    a.orientation = orientation.name;
    a.radius = ball.radius();
    a.chamber_tile.assign(ball.size(), -1);
    std::map<std::vector<FaceLabel>, int> ids;
    std::set<int> colors;
    const Index end = ball.ball_end(ball.radius() - 1);
    for (Index x = 0; x < end; ++x) {
        const Tile t = chamber_tile(walls, wall_color, orientation, x);
        const bool ok = std::all_of(t.faces.begin(), t.faces.end(), [&](const FaceLabel& f) {
            return f.color >= 0 && (!orientation.signed_faces || f.sign != 0);
        });
        if (!ok) {
            a.excluded.push_back(x);
            continue;
        }
        auto ms = t.multiset();
        for (const auto& f : ms) colors.insert(f.color);
        auto [it, inserted] = ids.emplace(ms, static_cast<int>(a.tiles.size()));
        if (inserted) a.tiles.push_back(std::move(ms));
        a.chamber_tile[x] = it->second;
    }
    a.face_colors.assign(colors.begin(), colors.end());
    return a;
}

std::vector<int> tree_refined_colors(const WallSet& walls, const WallClasses& classes) {
    std::vector<WallTree> trees;
    for (const auto& cls : classes.classes) trees.push_back(build_wall_tree(walls, cls));
    const Coloring c = wall_coloring(walls, trees);
    return std::vector<int>(c.colors.begin(), c.colors.end());
}

Resolution alternating_palette_resolution(const WallSet& walls, const std::vector<int>& palette, Index base) {
    Resolution r;
    r.base_classes = color_walls(walls, palette);
    r.wall_color = r.base_classes.color;
    r.classes = r.base_classes;
    r.orientation = alternating_resolution(walls, r.classes, base);
    return r;
}

Resolution refined_resolution(const WallSet& walls, const std::vector<int>& palette, Index base) {
    Resolution r;
    r.base_classes = color_walls(walls, palette);
    for (const auto& cls : r.base_classes.classes) r.trees.push_back(build_wall_tree(walls, cls));
    const Coloring c = wall_coloring(walls, r.trees);
    r.wall_color.assign(c.colors.begin(), c.colors.end());
    r.classes = classes_from_colors(walls, r.wall_color);
    r.orientation = alternating_resolution(walls, r.classes, base);
    return r;
}

std::string to_string(BalanceKind kind) {
    switch (kind) {
        case BalanceKind::unbalanced: return "unbalanced";
        case BalanceKind::strictly_balanced: return "strictly_balanced";
        case BalanceKind::semibalanced: return "semibalanced";
        case BalanceKind::zero_cone: return "zero_cone";
    }
    return "unknown";
}

Rational tile_sum(const std::vector<FaceLabel>& tile, const WeightFunction& w) {
    Rational sum = 0;
    for (const auto& f : tile) sum += w(f);
    return sum;
}

namespace {

WeightFunction integer_weights(const std::vector<int>& colors, const std::vector<Rational>& w) {
    mpz_class lcm = 1;
    for (const auto& v : w) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    mpz_class g = 0;
    for (const auto& v : w) {
        const mpz_class num = v.get_num() * (lcm / v.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    if (g == 0) g = 1;
    std::map<int, Rational> plus;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        plus[colors[i]] = Rational(w[i].get_num() * (lcm / w[i].get_den()) / g);
    }
    return WeightFunction(std::move(plus));
}

}  // namespace

BalanceVerdict classify_balance(const TileAlphabet& alphabet) {
    const std::vector<int>& colors = alphabet.face_colors;
    const std::size_t k = colors.size();
    if (k == 0) return {BalanceKind::zero_cone, std::nullopt};
    std::set<std::vector<Rational>> unique_rows;
    for (const auto& tile : alphabet.tiles) {
        std::vector<Rational> row(k);
        for (const auto& f : tile) {
            const auto pos = std::lower_bound(colors.begin(), colors.end(), f.color) - colors.begin();
            row[static_cast<std::size_t>(pos)] += f.sign;
        }
        unique_rows.insert(std::move(row));
    }
    const std::vector<std::vector<Rational>> A(unique_rows.begin(), unique_rows.end());

    // Variables u = w + 1 in [0, 2]; A w >= t becomes -A u + t <= -A 1.
    const auto base_rows = [&](bool with_slack) {
        std::vector<std::vector<Rational>> G;
        std::vector<Rational> h;
        const std::size_t width = k + (with_slack ? 1 : 0);
        for (const auto& row : A) {
            std::vector<Rational> g(width);
            Rational rhs = 0;
            for (std::size_t j = 0; j < k; ++j) {
                g[j] = -row[j];
                rhs -= row[j];
            }
            if (with_slack) g[k] = 1;
            G.push_back(std::move(g));
            h.push_back(rhs);
        }
        for (std::size_t j = 0; j < width; ++j) {
            std::vector<Rational> g(width);
            g[j] = 1;
            G.push_back(std::move(g));
            h.push_back(j < k ? 2 : 1);
        }
        return std::make_pair(G, h);
    };

    {
        auto [G, h] = base_rows(true);
        std::vector<Rational> c(k + 1);
        c[k] = 1;
        const LpResult r = maximize(c, G, h);
        if (r.status == LpStatus::optimal && r.value > 0) {
            std::vector<Rational> w(k);
            for (std::size_t j = 0; j < k; ++j) w[j] = r.x[j] - 1;
            return {BalanceKind::unbalanced, integer_weights(colors, w)};
        }
    }

    auto [G, h] = base_rows(false);
    for (std::size_t j = 0; j < k; ++j) {
        for (int dir : {1, -1}) {
            std::vector<Rational> c(k);
            c[j] = dir;
            const LpResult r = maximize(c, G, h);
            if (r.status != LpStatus::optimal) continue;
            if (r.value > dir) {  // u_j moved away from 1
                std::vector<Rational> w(k);
                for (std::size_t i = 0; i < k; ++i) w[i] = r.x[i] - 1;
                return {BalanceKind::semibalanced, integer_weights(colors, w)};
            }
        }
    }
    return {BalanceKind::strictly_balanced, std::nullopt};
}

WitnessCheck verify_unbalanced_witness(const TileAlphabet& alphabet, const WeightFunction& w) {
    WitnessCheck out;
    out.all_positive = !alphabet.tiles.empty();
    for (const auto& tile : alphabet.tiles) {
        out.sums.push_back(tile_sum(tile, w));
        if (out.sums.back() <= 0) out.all_positive = false;
    }
    return out;
}

bool RebaseReport::ok() const {
    return std::all_of(records.begin(), records.end(), [](const RebaseRecord& r) { return r.consistent; });
}

RebaseReport rebase_parity_check(const WallSet& walls, const WallClasses& classes,
                                 const std::vector<Index>& bases) {
    RebaseReport report;
    std::vector<LevelMap> home;
    for (const auto& cls : classes.classes) home.push_back(peel_levels(walls, cls, 0));
    for (Index g : bases) {
        RebaseRecord rec;
        rec.g = g;
        for (std::size_t c = 0; c < classes.classes.size(); ++c) {
            const WallColorClass& cls = classes.classes[c];
            const LevelMap moved = peel_levels(walls, cls, g);
            int relation = 0;  // +1 agree, -1 flipped
            for (WallId w : cls.members) {
                if (!home[c].has(w) || !moved.has(w)) continue;
                ++rec.compared;
                const int from_e = home[c].at(w) % 2 == 0 ? 1 : -1;
                int from_g = moved.at(w) % 2 == 0 ? 1 : -1;
                if (separates_exact(walls, w, 0, g)) from_g = -from_g;
                const int r = from_e * from_g;
                if (relation == 0) {
                    relation = r;
                } else if (relation != r && rec.consistent) {
                    rec.consistent = false;
                    rec.offending = w;
                }
            }
            rec.colors.push_back(cls.color);
            rec.flipped.push_back(relation < 0);
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

}  // namespace coxtile
