#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "coxtile/tiles.hpp"

namespace coxtile {

/// Interns placed tiles (faces in generator order) to integer labels, so
/// tilings labeled through one space can be compared.
class TileLabels {
public:
    int intern(const std::vector<FaceLabel>& faces);
    const std::vector<FaceLabel>& faces(int label) const { return tiles_.at(static_cast<std::size_t>(label)); }
    std::size_t size() const { return tiles_.size(); }

private:
    std::vector<std::vector<FaceLabel>> tiles_;
    std::map<std::vector<FaceLabel>, int> ids_;
};

/// Tile label per ball chamber; -1 where a face is unlabeled or leaves the
/// ball.
struct LabeledTiling {
    const Ball* ball = nullptr;
    std::vector<int> label;
};

LabeledTiling label_tiling(const WallSet& walls, const std::vector<int>& wall_color,
                           const OrientationAssignment& orientation, TileLabels& space);

/// The same tile, every face color 0 and unsigned, on every chamber of the
/// ball, boundary included.
LabeledTiling constant_tiling(const Ball& ball, TileLabels& space);

/// Tiles wholly inside B_n, in ball (ShortLex) order.
struct TilingPatch {
    int depth = 0;
    std::vector<Index> chambers;
    std::vector<Word> words;
    std::vector<int> labels;
};

class WindowError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Requires n <= radius - 1.
TilingPatch restrict_patch(const LabeledTiling& tiling, int n);
/// Nested restriction of a patch to depth n <= its depth.
TilingPatch restrict_patch(const TilingPatch& patch, int n);

/// 0 when the patches agree; otherwise 2^{-k} where B_k is the largest
/// ball on which they agree, and 2 when they already differ at e.
/// Throws std::invalid_argument on a depth mismatch.
Rational patch_distance(const TilingPatch& p, const TilingPatch& q);

struct TranslateVerdict {
    bool fixed = true;
    int first_depth = -1;   // least depth with a disagreement
    Index witness = kNone;  // chamber x with label(g^{-1} x) != label(x)
};

/// Compares g applied to the tiling with the tiling itself on B_depth,
/// depth by depth. Throws WindowError, stating the radius needed, when an
/// unlabeled chamber is reached before any disagreement.
TranslateVerdict translate_compare(const LabeledTiling& tiling, Index g, int depth);

}  // namespace coxtile
