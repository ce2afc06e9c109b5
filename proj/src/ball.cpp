#include "coxtile/ball.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace coxtile {

std::size_t default_ball_cap() {
    if (const char* env = std::getenv("COXTILE_BALL_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultBallCap;
}

SizeLimitError::SizeLimitError(std::size_t cap, std::size_t partial, int radius_reached)
    : std::runtime_error("ball size limit " + std::to_string(cap) + " exceeded with " +
                         std::to_string(partial) + " elements enumerated through radius " +
                         std::to_string(radius_reached)),
      cap_(cap),
      partial_(partial),
      radius_(radius_reached) {}

Index Ball::find(const Word& normal_form) const {
    auto it = index_.find(normal_form);
    return it == index_.end() ? kNone : it->second;
}

Index Ball::locate(std::span<const Letter> w) const {
    if (static_cast<int>(w.size()) <= radius_) {
        // cheap path: walking stays within norm |w|
        Index g = 0;
        for (Letter s : w) {
            g = neighbor(g, s);
            if (g == kNone) break;
        }
        if (g != kNone) return g;
    }
    return find(group_->normal_form(w));
}

Index Ball::walk(Index g, std::span<const Letter> w) const {
    Index cur = g;
    for (Letter s : w) {
        const Index next = neighbor(cur, s);
        if (next == kNone) {
            Word full = words_[g];
            full.insert(full.end(), w.begin(), w.end());
            return find(group_->normal_form(full));
        }
        cur = next;
    }
    return cur;
}

Index Ball::inverse(Index g) const { return find(group_->normal_form(group_->inverse_word(words_[g]))); }

std::pair<Index, Index> Ball::sphere(int k) const {
    if (k < 0 || k > radius_) return {0, 0};
    std::size_t first = 0;
    for (int j = 0; j < k; ++j) first += sphere_sizes_[j];
    return {static_cast<Index>(first), static_cast<Index>(first + sphere_sizes_[k])};
}

Index Ball::ball_end(int k) const {
    if (k < 0) return 0;
    k = std::min(k, radius_);
    std::size_t end = 0;
    for (int j = 0; j <= k; ++j) end += sphere_sizes_[j];
    return static_cast<Index>(end);
}

Ball enumerate_ball(std::shared_ptr<const WordProblem> group, int radius, std::size_t cap) {
    if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
    Ball ball;
    ball.group_ = std::move(group);
    ball.radius_ = radius;
    ball.letters_ = ball.group_->num_letters();
    const std::size_t L = ball.letters_;

    ball.words_.push_back(Word{});
    ball.index_.emplace(Word{}, 0);
    ball.sphere_sizes_.push_back(1);
    ball.neighbors_.assign(L, kNone);

    std::size_t first = 0;
    for (int k = 0; k <= radius; ++k) {
        const std::size_t last = ball.words_.size();
        const std::size_t count = last - first;
        std::vector<Word> cand(count * L);
        const auto n = static_cast<std::int64_t>(count * L);
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < n; ++c) {
            const std::size_t i = first + static_cast<std::size_t>(c) / L;
            const auto s = static_cast<Letter>(static_cast<std::size_t>(c) % L);
            Word w = ball.words_[i];
            w.push_back(s);
            cand[static_cast<std::size_t>(c)] = ball.group_->normal_form(w);
        }
        if (k < radius) {
            std::size_t added = 0;
            for (auto& w : cand) {
                if (static_cast<int>(w.size()) != k + 1 || ball.index_.count(w)) continue;
                if (ball.words_.size() + 1 > cap) {
                    throw SizeLimitError(cap, ball.words_.size() + 1, k);
                }
                ball.index_.emplace(w, static_cast<Index>(ball.words_.size()));
                ball.words_.push_back(w);
                ++added;
            }
            ball.sphere_sizes_.push_back(added);
            ball.neighbors_.resize(ball.words_.size() * L, kNone);
        }
        for (std::size_t c = 0; c < cand.size(); ++c) {
            const std::size_t i = first + c / L;
            ball.neighbors_[i * L + c % L] = ball.find(cand[c]);
        }
        first = last;
    }
    return ball;
}

bool GeodesicSegment::is_geodesic(const Ball& ball) const {
    if (vertices.empty()) return false;
    const WordProblem& g = ball.group();
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        // consecutive word distance 1
        bool adjacent = false;
        for (std::size_t s = 0; s < ball.num_letters() && !adjacent; ++s) {
            adjacent = ball.neighbor(vertices[i], static_cast<Letter>(s)) == vertices[i + 1];
        }
        if (!adjacent) return false;
    }
    const Word diff = g.multiply(g.inverse_word(ball.word(vertices.front())), ball.word(vertices.back()));
    return diff.size() + 1 == vertices.size();
}

bool GeodesicSegment::is_radial(const Ball& ball) const {
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        if (ball.norm(vertices[i]) >= ball.norm(vertices[i + 1])) return false;
    }
    return is_geodesic(ball);
}

GeodesicSegment radial_segment(const Ball& ball, Index g) {
    if (g >= ball.size()) throw OutOfBall("element is not in the enumerated ball");
    GeodesicSegment seg;
    Index cur = 0;
    seg.vertices.push_back(cur);
    for (Letter s : ball.word(g)) {
        cur = ball.neighbor(cur, s);
        seg.vertices.push_back(cur);
    }
    return seg;
}

Cocycle reflection_cocycle(const CoxeterGroup& group, std::span<const Letter> word) {
    Cocycle out;
    out.reduced_word = Word(word.begin(), word.end());
    const Word nf = group.normal_form(word);
    if (nf.size() != word.size()) {
        out.input_was_reduced = false;
        out.reduced_word = nf;
    }
    Word prefix;
    for (Letter s : out.reduced_word) {
        out.reflections.push_back(group.reflection(prefix, s));
        prefix.push_back(s);
    }
    return out;
}

namespace {

std::optional<int> torsion_order(const WordProblem& group, std::span<const Letter> a, int n_max) {
    Word power;
    for (int k = 1; k <= n_max; ++k) {
        power.insert(power.end(), a.begin(), a.end());
        power = group.normal_form(power);
        if (power.empty()) return k;
    }
    return std::nullopt;
}

// Least k in [1, n_max] with |g a^k| != |g|, or 0 if none.
int least_displacing_power(const WordProblem& group, const Word& g, std::span<const Letter> a,
                           int n_max) {
    Word cur = g;
    for (int k = 1; k <= n_max; ++k) {
        cur.insert(cur.end(), a.begin(), a.end());
        cur = group.normal_form(cur);
        if (cur.size() != g.size()) return k;
    }
    return 0;
}

DisplacementVerdict collect(const std::vector<int>& least, const WordProblem& group,
                            std::span<const Letter> a, int n_max) {
    DisplacementVerdict v;
    v.torsion_order = torsion_order(group, a, n_max);
    int worst = 0;
    for (std::size_t i = 0; i < least.size(); ++i) {
        if (least[i] == 0) {
            v.failures.push_back(static_cast<Index>(i));
        } else {
            worst = std::max(worst, least[i]);
        }
    }
    if (v.failures.empty()) v.exponent = worst;
    return v;
}

void check_displacement_args(std::span<const Letter> a, int n_max, const WordProblem& group) {
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
    if (group.normal_form(a).empty()) throw std::invalid_argument("displacing element must not be e");
}

}  // namespace

DisplacementVerdict displacement_exponent_serial(const Ball& ball, std::span<const Letter> a,
                                                 int n_max) {
    check_displacement_args(a, n_max, ball.group());
    std::vector<int> least(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i) {
        least[i] = least_displacing_power(ball.group(), ball.word(static_cast<Index>(i)), a, n_max);
    }
    return collect(least, ball.group(), a, n_max);
}

DisplacementVerdict displacement_exponent(const Ball& ball, std::span<const Letter> a, int n_max) {
    check_displacement_args(a, n_max, ball.group());
    std::vector<int> least(ball.size());
    const auto n = static_cast<std::int64_t>(ball.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
        least[static_cast<std::size_t>(i)] =
            least_displacing_power(ball.group(), ball.word(static_cast<Index>(i)), a, n_max);
    }
    return collect(least, ball.group(), a, n_max);
}

}  // namespace coxtile
