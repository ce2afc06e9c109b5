#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxtile/exact_lp.hpp"
#include "coxtile/walls.hpp"

namespace coxtile {

/// Face color plus sign: +1, -1, or 0 for unsigned faces (o(f) = f).
struct FaceLabel {
    int color = 0;
    int sign = 0;

    auto operator<=>(const FaceLabel&) const = default;
};

inline FaceLabel opposite(FaceLabel f) { return {f.color, -f.sign}; }

/// One face per generator, in generator order.
struct Tile {
    std::vector<FaceLabel> faces;

    /// Sorted face multiset; tiles are compared through it.
    std::vector<FaceLabel> multiset() const;
};

struct TileAlphabet {
    std::vector<std::vector<FaceLabel>> tiles;  // sorted face lists, first-seen order
    std::vector<int> chamber_tile;              // per ball element; -1 when excluded
    std::vector<Index> excluded;                // interior chambers with an unlabeled face
    std::vector<int> face_colors;               // distinct colors, sorted
    std::string coloring;
    std::string orientation;
    int radius = 0;
};

/// Antisymmetric weights, stored by their value on the + face of each
/// color. Unsigned faces always weigh 0.
class WeightFunction {
public:
    WeightFunction() = default;
    explicit WeightFunction(std::map<int, Rational> plus) : plus_(std::move(plus)) {}

    /// Throws std::invalid_argument unless w(c,-) = -w(c,+) for each color.
    static WeightFunction from_signed(const std::map<FaceLabel, Rational>& w);

    Rational operator()(FaceLabel f) const;
    const std::map<int, Rational>& plus_values() const { return plus_; }
    bool trivial() const;
    WeightFunction scaled(const Rational& k) const;

private:
    std::map<int, Rational> plus_;
};

/// Per-wall sign: +1 keeps the base chamber on the left, -1 flips it,
/// 0 leaves the wall unoriented (faces then stay unsigned).
struct OrientationAssignment {
    Index base = 0;
    std::vector<int> sign;
    std::vector<WallId> excluded;  // walls left unoriented for lack of a level
    std::string name;
    bool signed_faces = true;
};

/// sign(M) = (-1)^lev(M) per class; colors in `flipped` get the opposite
/// alternation. Walls without a determinate level are excluded.
OrientationAssignment orient_alternating(const WallSet& walls, const std::vector<LevelMap>& levels,
                                         const std::vector<int>& flipped = {});
OrientationAssignment orient_all_plus(const WallSet& walls, Index base = 0);
/// Every wall unoriented: the tiling by coloring itself.
OrientationAssignment orient_unsigned(const WallSet& walls);

/// Levels of every class from `base`, then orient_alternating.
OrientationAssignment alternating_resolution(const WallSet& walls, const WallClasses& classes,
                                             Index base = 0);

/// Sign of face s of chamber x as seen from x.
int face_sign(const WallSet& walls, const OrientationAssignment& o, Index x, Letter s);

/// Tiles of the interior chambers (norm < radius). Faces whose wall has no
/// color, or no sign under a signed orientation, exclude the chamber.
TileAlphabet build_alphabet(const WallSet& walls, const std::vector<int>& wall_color,
                            const OrientationAssignment& orientation);

Tile chamber_tile(const WallSet& walls, const std::vector<int>& wall_color,
                  const OrientationAssignment& orientation, Index x);

/// Tree refinement of a class coloring: wall -> palette id of
/// (class color, nu(depth), depth mod 3), or -1 when unreached.
std::vector<int> tree_refined_colors(const WallSet& walls, const WallClasses& classes);

/// Wall colors, their classes and the alternating orientation built on them.
struct Resolution {
    WallClasses base_classes;       // from the generator palette
    std::vector<WallTree> trees;    // per base class; empty unless refined
    std::vector<int> wall_color;    // colors the tiles carry
    WallClasses classes;            // classes of wall_color
    OrientationAssignment orientation;
};

/// Generator palette, then alternating orientation by levels from `base`.
Resolution alternating_palette_resolution(const WallSet& walls, const std::vector<int>& palette, Index base = 0);
/// Generator palette refined by the wall-tree coloring of each class, then
/// alternating orientation by levels of the refined classes.
Resolution refined_resolution(const WallSet& walls, const std::vector<int>& palette, Index base = 0);

enum class BalanceKind { unbalanced, strictly_balanced, semibalanced, zero_cone };

struct BalanceVerdict {
    BalanceKind kind = BalanceKind::zero_cone;
    std::optional<WeightFunction> witness;  // integer-scaled
};

std::string to_string(BalanceKind kind);

/// Exact decision. Unbalanced: some w gives every tile a positive sum.
/// Otherwise strictly balanced when w = 0 is the only weight with all sums
/// >= 0, semibalanced(w) when a nontrivial such w exists. zero_cone is
/// reserved for alphabets without face colors.
BalanceVerdict classify_balance(const TileAlphabet& alphabet);

Rational tile_sum(const std::vector<FaceLabel>& tile, const WeightFunction& w);

struct WitnessCheck {
    std::vector<Rational> sums;
    bool all_positive = false;
};

WitnessCheck verify_unbalanced_witness(const TileAlphabet& alphabet, const WeightFunction& w);

struct RebaseRecord {
    Index g = kNone;
    std::vector<int> colors;    // class colors
    std::vector<char> flipped;  // per class: global flip relative to base e
    bool consistent = true;
    WallId offending = kNoWall;
    std::size_t compared = 0;
};

struct RebaseReport {
    std::vector<RebaseRecord> records;
    bool ok() const;
};

/// Recomputes alternating orientations from base chamber g and compares
/// them, as absolute orientations, with those from e on walls determinate
/// for both. Each class must agree everywhere or disagree everywhere.
RebaseReport rebase_parity_check(const WallSet& walls, const WallClasses& classes,
                                 const std::vector<Index>& bases);

}  // namespace coxtile
