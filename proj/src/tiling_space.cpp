#include "coxtile/tiling_space.hpp"

#include <algorithm>
#include <string>

namespace coxtile {

int TileLabels::intern(const std::vector<FaceLabel>& faces) {
    auto [it, inserted] = ids_.emplace(faces, static_cast<int>(tiles_.size()));
    if (inserted) tiles_.push_back(faces);
    return it->second;
}

LabeledTiling label_tiling(const WallSet& walls, const std::vector<int>& wall_color,
                           const OrientationAssignment& orientation, TileLabels& space) {
    const Ball& ball = walls.ball();
    LabeledTiling t;
    t.ball = &ball;
    t.label.assign(ball.size(), -1);
    const Index end = ball.ball_end(ball.radius() - 1);
    for (Index x = 0; x < end; ++x) {
        const Tile tile = chamber_tile(walls, wall_color, orientation, x);
        const bool ok = std::all_of(tile.faces.begin(), tile.faces.end(), [&](const FaceLabel& f) {
            return f.color >= 0 && (!orientation.signed_faces || f.sign != 0);
        });
        if (ok) t.label[x] = space.intern(tile.faces);
    }
    return t;
}

LabeledTiling constant_tiling(const Ball& ball, TileLabels& space) {
    LabeledTiling t;
    t.ball = &ball;
    const int label = space.intern(std::vector<FaceLabel>(ball.num_letters(), FaceLabel{0, 0}));
    t.label.assign(ball.size(), label);
    return t;
}

TilingPatch restrict_patch(const LabeledTiling& tiling, int n) {
    const Ball& ball = *tiling.ball;
    if (n < 0 || n > ball.radius() - 1) {
        throw std::invalid_argument("patch depth " + std::to_string(n) + " exceeds radius - 1 = " +
                                    std::to_string(ball.radius() - 1));
    }
    TilingPatch p;
    p.depth = n;
    for (Index x = 0; x < ball.ball_end(n); ++x) {
        p.chambers.push_back(x);
        p.words.push_back(ball.word(x));
        p.labels.push_back(tiling.label[x]);
    }
    return p;
}

TilingPatch restrict_patch(const TilingPatch& patch, int n) {
    if (n < 0 || n > patch.depth) throw std::invalid_argument("restriction depth exceeds the patch depth");
    TilingPatch p;
    p.depth = n;
    for (std::size_t i = 0; i < patch.chambers.size(); ++i) {
        if (static_cast<int>(patch.words[i].size()) > n) continue;
        p.chambers.push_back(patch.chambers[i]);
        p.words.push_back(patch.words[i]);
        p.labels.push_back(patch.labels[i]);
    }
    return p;
}

Rational patch_distance(const TilingPatch& p, const TilingPatch& q) {
    if (p.depth != q.depth) {
        throw std::invalid_argument("patch depths differ: " + std::to_string(p.depth) + " and " +
                                    std::to_string(q.depth));
    }
    if (p.words != q.words) throw std::invalid_argument("patches cover different chambers");
    int first = -1;
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        if (p.labels[i] == q.labels[i]) continue;
        const int d = static_cast<int>(p.words[i].size());
        if (first < 0 || d < first) first = d;
    }
    if (first < 0) return 0;
    Rational out = 2;
    for (int k = 0; k < first; ++k) out /= 2;
    return out;
}

TranslateVerdict translate_compare(const LabeledTiling& tiling, Index g, int depth) {
    const Ball& ball = *tiling.ball;
    if (g >= ball.size()) throw std::invalid_argument("translation outside the ball");
    const Index g_inv = ball.inverse(g);
    const int need = depth + ball.norm(g) + 1;
    TranslateVerdict v;
    for (int k = 0; k <= std::min(depth, ball.radius()); ++k) {
        const auto [first, last] = ball.sphere(k);
        for (Index x = first; x < last; ++x) {
            const Index y = g_inv == kNone ? kNone : ball.walk(g_inv, ball.word(x));
            if (tiling.label[x] < 0 || y == kNone || tiling.label[y] < 0) {
                throw WindowError("window leaves the labeled ball at depth " + std::to_string(k) +
                                  "; required radius is at least " + std::to_string(need));
            }
            if (tiling.label[y] != tiling.label[x]) {
                v.fixed = false;
                v.first_depth = k;
                v.witness = x;
                return v;
            }
        }
    }
    if (depth > ball.radius()) {
        throw WindowError("depth exceeds the ball; required radius is at least " + std::to_string(need));
    }
    return v;
}

}  // namespace coxtile
