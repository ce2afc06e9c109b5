#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "coxtile/coxeter.hpp"

namespace coxtile {

using Index = std::uint32_t;
inline constexpr Index kNone = std::numeric_limits<Index>::max();

inline constexpr std::size_t kDefaultBallCap = 200'000;

/// Ball cap from COXTILE_BALL_CAP if set, else kDefaultBallCap.
std::size_t default_ball_cap();

class SizeLimitError : public std::runtime_error {
public:
    SizeLimitError(std::size_t cap, std::size_t partial, int radius_reached);
    std::size_t cap() const { return cap_; }
    std::size_t partial_count() const { return partial_; }
    int radius_reached() const { return radius_; }

private:
    std::size_t cap_;
    std::size_t partial_;
    int radius_;
};

class OutOfBall : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Radius-r ball of the Cayley graph around e. Elements are stored in
/// ShortLex order of their normal forms, so index 0 is the identity and
/// norms are nondecreasing in the index. Immutable after construction.
class Ball {
public:
    const WordProblem& group() const { return *group_; }
    std::shared_ptr<const WordProblem> group_ptr() const { return group_; }

    int radius() const { return radius_; }
    std::size_t size() const { return words_.size(); }
    std::size_t num_letters() const { return letters_; }

    const Word& word(Index g) const { return words_[g]; }
    int norm(Index g) const { return static_cast<int>(words_[g].size()); }

    /// g s for letter s, or kNone when outside the ball.
    Index neighbor(Index g, Letter s) const { return neighbors_[g * letters_ + s]; }

    Index find(const Word& normal_form) const;
    /// Looks up an arbitrary word after normalizing it.
    Index locate(std::span<const Letter> w) const;

    /// Right-multiplies g by the letters of w along Cayley-graph edges;
    /// falls back to normal-form lookup when the walk leaves the ball.
    Index walk(Index g, std::span<const Letter> w) const;
    Index product(Index g, Index h) const { return walk(g, words_[h]); }
    Index inverse(Index g) const;

    /// Element count of each sphere S_0..S_r.
    const std::vector<std::size_t>& sphere_sizes() const { return sphere_sizes_; }
    /// Index range [first, last) of sphere k.
    std::pair<Index, Index> sphere(int k) const;
    /// Elements of norm <= k form the prefix [0, ball_end(k)).
    Index ball_end(int k) const;

    /// Interior elements: every neighbor lies in the ball.
    bool interior(Index g) const { return norm(g) < radius_; }

private:
    friend Ball enumerate_ball(std::shared_ptr<const WordProblem>, int, std::size_t);

    std::shared_ptr<const WordProblem> group_;
    int radius_ = 0;
    std::size_t letters_ = 0;
    std::vector<Word> words_;
    std::vector<Index> neighbors_;
    std::vector<std::size_t> sphere_sizes_;
    std::unordered_map<Word, Index, WordHash> index_;
};

/// Breadth-first enumeration in ShortLex order. Candidate products for a
/// sphere are normalized in parallel and merged sequentially, so the
/// result does not depend on the thread count. Throws SizeLimitError when
/// the element count would exceed `cap`.
Ball enumerate_ball(std::shared_ptr<const WordProblem> group, int radius,
                    std::size_t cap = default_ball_cap());

struct GeodesicSegment {
    std::vector<Index> vertices;
    bool is_radial(const Ball& ball) const;
    bool is_geodesic(const Ball& ball) const;
};

/// Prefix path of the normal form of g, from e to g.
GeodesicSegment radial_segment(const Ball& ball, Index g);

struct Cocycle {
    std::vector<Word> reflections;  // canonical words, one per letter
    Word reduced_word;
    bool input_was_reduced = true;
};

/// Entry i is the canonical form of p_{i-1} s_i p_{i-1}^{-1}. Unreduced
/// input is normalized first and flagged.
Cocycle reflection_cocycle(const CoxeterGroup& group, std::span<const Letter> word);

struct DisplacementVerdict {
    /// Least n such that every element has some 1 <= k <= n with
    /// |g a^k| != |g|; empty when some element fails up to n_max.
    std::optional<int> exponent;
    /// All elements with |g a^k| = |g| for every k <= n_max, ball order.
    std::vector<Index> failures;
    /// Order of a if a^k = e for some k <= n_max.
    std::optional<int> torsion_order;

    Index first_failure() const { return failures.empty() ? kNone : failures.front(); }
};

DisplacementVerdict displacement_exponent(const Ball& ball, std::span<const Letter> a, int n_max);
DisplacementVerdict displacement_exponent_serial(const Ball& ball, std::span<const Letter> a,
                                                 int n_max);

}  // namespace coxtile
