#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxtile/ball.hpp"

namespace coxtile {

using ColorId = std::int32_t;
using ColorTuple = std::vector<int>;
inline constexpr ColorId kNoColor = -1;

/// Interns color tuples to dense ids.
class Palette {
public:
    ColorId intern(const ColorTuple& tuple);
    const ColorTuple& tuple(ColorId id) const { return tuples_.at(static_cast<std::size_t>(id)); }
    std::size_t used() const { return tuples_.size(); }

private:
    std::vector<ColorTuple> tuples_;
    std::map<ColorTuple, ColorId> ids_;
};

/// A coloring of a finite carrier (ball elements, tree vertices, walls).
struct Coloring {
    std::vector<ColorId> colors;  // kNoColor where undefined
    Palette palette;
    std::size_t palette_size = 0;  // size of the palette by construction

    ColorId at(std::size_t i) const { return colors[i]; }
    const ColorTuple& tuple_at(std::size_t i) const { return palette.tuple(colors[i]); }
    bool defined(std::size_t i) const { return colors[i] != kNoColor; }
};

/// (nu(d), d mod 3) where nu is the square-free ternary sequence.
ColorTuple norm_color(int d);

/// g -> (nu(|g|), |g| mod 3) on every ball element.
Coloring norm_coloring(const Ball& ball);

struct RootedTree {
    std::vector<std::vector<int>> adjacency;
    int root = 0;
};

/// Tree distances from the root; throws std::invalid_argument when the
/// tree is disconnected.
std::vector<int> tree_depths(const RootedTree& tree);

/// x -> (nu(d(x, root)), d(x, root) mod 3).
Coloring tree_norm_coloring(const RootedTree& tree);

enum class ClaimStatus { pass, fail, hypotheses_not_satisfied };

struct ClaimVerdict {
    ClaimStatus status = ClaimStatus::pass;
    std::size_t violated_index = 0;  // meaningful for fail
};

/// Checks the radial-segment claim for one left translate g: if g preserves
/// colors along the radial segment and moves some vertex by less than k/2
/// (k = vertex count), then g preserves every norm along it.
ClaimVerdict radial_claim_check(const Ball& ball, const Coloring& coloring, Index g,
                                const GeodesicSegment& segment);

struct ClaimScanFailure {
    Index g = kNone;
    std::vector<Index> segment;
    std::size_t violated_index = 0;
};

struct ClaimScanResult {
    std::size_t translates = 0;
    std::size_t hypotheses_satisfied = 0;
    std::vector<ClaimScanFailure> failures;
};

/// Runs the claim over every g with |g| <= g_radius and every radial
/// segment with at least min_edges edges inside B_{segment_radius}.
/// The ball must contain B_{segment_radius + g_radius}.
ClaimScanResult radial_claim_scan(const Ball& ball, const Coloring& coloring, int g_radius,
                                  int segment_radius, int min_edges);
/// Reference version: materializes every segment and calls
/// radial_claim_check on it.
ClaimScanResult radial_claim_scan_serial(const Ball& ball, const Coloring& coloring, int g_radius,
                                         int segment_radius, int min_edges);

/// All radial segments with at least min_edges edges whose vertices have
/// norm <= segment_radius, in DFS order from starts in ball order.
std::vector<GeodesicSegment> enumerate_radial_segments(const Ball& ball, int segment_radius,
                                                       int min_edges);

using SubgroupPredicate = std::function<bool(const Word& normal_form)>;

class TransversalError : public std::invalid_argument {
public:
    TransversalError(const std::string& what, Index element)
        : std::invalid_argument(what), element_(element) {}
    Index element() const { return element_; }

private:
    Index element_;
};

/// Forward transfer from G to a finite index subgroup H with right coset
/// representatives reps (reps[0] = e): psi(x) = (phi(x y_1), ..., phi(x y_n))
/// for x in H. Defined where every x y_i lies in the ball. Validates the
/// transversal on B_{r - max|y_i|}.
Coloring transfer_to_subgroup(const Ball& ball, const Coloring& phi, const std::vector<Index>& reps,
                              const SubgroupPredicate& in_subgroup);

/// Backward transfer for normal H: phi'(x) = (psi(y_i^{-1} x), i) for x in
/// y_i H, the tuple of psi's color followed by the coset index.
Coloring transfer_from_subgroup(const Ball& ball, const Coloring& psi, const std::vector<Index>& reps,
                                const SubgroupPredicate& in_subgroup);

struct TreeFactor {
    const Coloring* tree_coloring = nullptr;
    /// Vertex g.x0 in the tree, or empty if it is not enumerated.
    std::function<std::optional<std::size_t>(Index g)> orbit;
};

class OrbitError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// g -> (phi^1(g x0^1), ..., phi^n(g x0^n)); palette size 9n.
Coloring product_coloring(const Ball& ball, const std::vector<TreeFactor>& factors);

struct PairRecord {
    Index g = kNone;
    Index h = kNone;
    Index witness = kNone;  // x with coloring(g^{-1} x) != coloring(x), or kNone
    int radius_used = 0;    // d(h, witness), or the window radius if unwitnessed
};

struct AperiodicityReport {
    int r1 = 0;
    int r2 = 0;
    int rho = 0;
    std::vector<PairRecord> pairs;

    std::size_t unwitnessed() const;
};

/// For every g != e with |g| <= r1 and every h with |h| <= r2, searches the
/// window x = h u, |u| <= rho, in ball order of u for a color change under
/// g. Throws std::invalid_argument naming the required radius when the
/// ball is smaller than r1 + r2 + rho.
AperiodicityReport aperiodicity_report(const Ball& ball, const Coloring& coloring, int r1, int r2,
                                       int rho);
AperiodicityReport aperiodicity_report_serial(const Ball& ball, const Coloring& coloring, int r1,
                                              int r2, int rho);

/// Same search restricted to explicit (g, h) pairs.
AperiodicityReport aperiodicity_report_pairs(const Ball& ball, const Coloring& coloring,
                                             const std::vector<std::pair<Index, Index>>& pairs,
                                             int rho);

}  // namespace coxtile
