#pragma once

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coxtile/ball.hpp"
#include "coxtile/coloring.hpp"

namespace coxtile {

using WallId = std::int32_t;
inline constexpr WallId kNoWall = -1;

/// Cayley-graph edge {g, g s}, stored from its lower-index endpoint.
struct Edge {
    Index g = kNone;
    Letter s = 0;
};

struct Wall {
    Word word;                // canonical word of the reflection
    Letter generator = 0;     // label of the first crossed edge
    bool mixed_labels = false;  // crossed edges carry more than one label
    std::vector<Edge> edges;  // crossed edges inside the ball
};

/// Walls of every reflection crossing an edge of a ball, plus the
/// separation data derived from them.
class WallSet {
public:
    const Ball& ball() const { return *ball_; }
    const CoxeterGroup& group() const { return *group_; }
    std::size_t size() const { return walls_.size(); }
    const Wall& operator[](WallId w) const { return walls_[static_cast<std::size_t>(w)]; }
    const std::vector<Wall>& walls() const { return walls_; }

    /// Wall crossed by the edge {g, g s}, or kNoWall if g s is outside.
    WallId wall_of(Index g, Letter s) const { return edge_wall_[g * letters_ + s]; }
    WallId find(const Word& canonical) const;

    /// Walls separating e from g, sorted. Exact: they are the cocycle
    /// reflections of any reduced word for g.
    const std::vector<WallId>& inversion_set(Index g) const { return inversions_[g]; }

    /// Crosses some edge with both ends of norm <= radius - 1.
    bool determinate(WallId w) const { return determinate_[static_cast<std::size_t>(w)]; }

private:
    friend WallSet enumerate_walls(const Ball&);
    friend WallSet enumerate_walls_serial(const Ball&);
    friend WallSet finish_walls(const Ball&, const CoxeterGroup&, std::vector<Word>&&);

    const Ball* ball_ = nullptr;
    const CoxeterGroup* group_ = nullptr;
    std::size_t letters_ = 0;
    std::vector<Wall> walls_;
    std::vector<WallId> edge_wall_;
    std::unordered_map<Word, WallId, WordHash> index_;
    std::vector<std::vector<WallId>> inversions_;
    std::vector<char> determinate_;
};

/// Wall ids follow the first crossed edge in (g, s) order. The ball must
/// outlive the result and its group must be a CoxeterGroup.
WallSet enumerate_walls(const Ball& ball);
/// Reference version with sequential canonicalization.
WallSet enumerate_walls_serial(const Ball& ball);

class InconclusiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Component labels of the ball's chamber graph with the wall's crossed
/// edges removed.
std::vector<int> wall_components(const WallSet& walls, WallId w);

/// True iff g and h fall in different components after deleting the
/// crossed edges. Throws InconclusiveError when the deletion leaves more
/// than two components and g, h are in different ones.
bool separates(const WallSet& walls, WallId w, Index g, Index h);
/// Same verdict from inversion sets: w in N(g) xor w in N(h).
bool separates_exact(const WallSet& walls, WallId w, Index g, Index h);

struct IntersectionWitness {
    WallId first = kNoWall;
    WallId second = kNoWall;
    Index residue_base = kNone;  // least element of the shared spherical residue
};

struct WallColorClass {
    int color = 0;
    std::vector<WallId> members;
    bool disjoint = true;
    std::optional<IntersectionWitness> violation;
    int verified_radius = 0;
};

struct WallClasses {
    std::vector<int> color;  // per wall
    std::vector<WallColorClass> classes;  // sorted by color
    /// Walls whose crossed edges carry generators of different colors.
    std::vector<WallId> inconsistent;

    bool valid() const;
};

/// Wall of g s g^{-1} gets palette[s]. Disjointness within each class is
/// checked on every rank-2 spherical residue lying inside the ball: two
/// walls meet iff both cross edges of a common such residue.
WallClasses color_walls(const WallSet& walls, const std::vector<int>& palette);

/// Classes taken from an arbitrary per-wall color vector (colors >= 0,
/// kNoColor entries are ignored).
WallClasses classes_from_colors(const WallSet& walls, const std::vector<int>& color);

struct LevelMap {
    Index base = 0;
    int color = 0;
    /// Level per wall id; 0 for walls outside the class or unreached.
    std::vector<int> level;
    std::vector<char> determinate;

    bool has(WallId w) const { return determinate[static_cast<std::size_t>(w)] != 0; }
    int at(WallId w) const { return level[static_cast<std::size_t>(w)]; }
};

/// Region structure of one class: union-find components of the ball after
/// deleting every crossed edge of the class.
struct ClassRegions {
    std::vector<int> region;  // per ball element
    int count = 0;
    /// Regions on either side of each member wall, in member order.
    std::vector<std::vector<int>> wall_regions;
};

ClassRegions class_regions(const WallSet& walls, const WallColorClass& cls);

/// Peels the class away from the base chamber: walls bounding the base
/// region get level 1, the regions behind them are reached, and so on.
LevelMap peel_levels(const WallSet& walls, const WallColorClass& cls, Index base);

/// Level from separation counts: 1 + number of class walls separating the
/// base from the near side of the wall.
LevelMap levels_by_separation(const WallSet& walls, const WallColorClass& cls, Index base);

class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incidence tree of one class: walls and regions as nodes, a wall joined
/// to the regions it bounds. Wall depth is half the incidence distance from
/// the root, i.e. the number of regions crossed to reach it.
struct WallTree {
    int color = 0;
    std::vector<WallId> walls;  // class members
    int regions = 0;
    WallId root = kNoWall;
    /// Per class member (same order as walls): parent wall or kNoWall,
    /// and depth (-1 when unreached from the root).
    std::vector<WallId> parent;
    std::vector<int> depth;
    bool acyclic = true;
    bool connected_core = true;

    std::optional<std::size_t> position(WallId w) const;
    /// Parent/child tree on the reached walls, in member order.
    RootedTree as_rooted_tree() const;
};

/// Root is the level-1 wall (relative to e) with the ShortLex-least word.
/// Throws StructuralError if the incidence graph has a cycle.
WallTree build_wall_tree(const WallSet& walls, const WallColorClass& cls);

/// Union of per-class tree colorings: wall -> (class color, nu(d), d mod 3)
/// with d its tree depth. Palette size 9 per class.
Coloring wall_coloring(const WallSet& walls, const std::vector<WallTree>& trees);

}  // namespace coxtile
