#include "coxtile/coloring.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "coxtile/seqs.hpp"

namespace coxtile {

ColorId Palette::intern(const ColorTuple& tuple) {
    auto [it, inserted] = ids_.emplace(tuple, static_cast<ColorId>(tuples_.size()));
    if (inserted) tuples_.push_back(tuple);
    return it->second;
}

ColorTuple norm_color(int d) {
    return {static_cast<int>(seqs::ternary_at(static_cast<std::uint64_t>(d))), d % 3};
}

Coloring norm_coloring(const Ball& ball) {
    Coloring c;
    c.palette_size = 9;
    c.colors.resize(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i) {
        c.colors[i] = c.palette.intern(norm_color(ball.norm(static_cast<Index>(i))));
    }
    return c;
}

std::vector<int> tree_depths(const RootedTree& tree) {
    const std::size_t n = tree.adjacency.size();
    if (tree.root < 0 || static_cast<std::size_t>(tree.root) >= n) {
        throw std::invalid_argument("tree root out of range");
    }
    std::vector<int> depth(n, -1);
    std::deque<int> queue{tree.root};
    depth[tree.root] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : tree.adjacency[v]) {
            if (depth[w] < 0) {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (depth[v] < 0) {
            throw std::invalid_argument("tree is disconnected: vertex " + std::to_string(v) +
                                        " is unreachable from the root");
        }
    }
    return depth;
}

Coloring tree_norm_coloring(const RootedTree& tree) {
    const std::vector<int> depth = tree_depths(tree);
    Coloring c;
    c.palette_size = 9;
    c.colors.resize(depth.size());
    for (std::size_t v = 0; v < depth.size(); ++v) c.colors[v] = c.palette.intern(norm_color(depth[v]));
    return c;
}

namespace {

// d(g x, x) = |x^{-1} g x|
int displacement(const Ball& ball, Index g, Index x) {
    const WordProblem& grp = ball.group();
    Word w = grp.inverse_word(ball.word(x));
    w.insert(w.end(), ball.word(g).begin(), ball.word(g).end());
    w.insert(w.end(), ball.word(x).begin(), ball.word(x).end());
    return static_cast<int>(grp.normal_form(w).size());
}

}  // namespace

ClaimVerdict radial_claim_check(const Ball& ball, const Coloring& coloring, Index g,
                                const GeodesicSegment& segment) {
    if (!segment.is_radial(ball)) throw std::invalid_argument("segment is not radial");
    const std::size_t k = segment.vertices.size();
    std::vector<Index> translated(k);
    for (std::size_t i = 0; i < k; ++i) {
        translated[i] = ball.product(g, segment.vertices[i]);
        if (translated[i] == kNone) throw OutOfBall("translated segment leaves the ball");
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (coloring.at(segment.vertices[i]) != coloring.at(translated[i])) {
            return {ClaimStatus::hypotheses_not_satisfied, 0};
        }
    }
    bool close = false;
    for (std::size_t i = 0; i < k && !close; ++i) {
        close = 2 * static_cast<std::size_t>(displacement(ball, g, segment.vertices[i])) < k;
    }
    if (!close) return {ClaimStatus::hypotheses_not_satisfied, 0};
    for (std::size_t i = 0; i < k; ++i) {
        if (ball.norm(translated[i]) != ball.norm(segment.vertices[i])) return {ClaimStatus::fail, i};
    }
    return {ClaimStatus::pass, 0};
}

std::vector<GeodesicSegment> enumerate_radial_segments(const Ball& ball, int segment_radius,
                                                       int min_edges) {
    std::vector<GeodesicSegment> out;
    std::vector<Index> path;
    const auto dfs = [&](auto&& self, Index x) -> void {
        path.push_back(x);
        if (static_cast<int>(path.size()) - 1 >= min_edges) out.push_back(GeodesicSegment{path});
        if (ball.norm(x) < segment_radius) {
            for (std::size_t s = 0; s < ball.num_letters(); ++s) {
                const Index y = ball.neighbor(x, static_cast<Letter>(s));
                if (y != kNone && ball.norm(y) == ball.norm(x) + 1) self(self, y);
            }
        }
        path.pop_back();
    };
    const Index starts = ball.ball_end(segment_radius - min_edges);
    for (Index x = 0; x < starts; ++x) dfs(dfs, x);
    return out;
}

namespace {

void check_scan_args(const Ball& ball, int g_radius, int segment_radius, int min_edges) {
    if (min_edges < 1) throw std::invalid_argument("min_edges must be positive");
    if (ball.radius() < segment_radius + g_radius) {
        throw std::invalid_argument("ball radius " + std::to_string(ball.radius()) +
                                    " too small; need at least " +
                                    std::to_string(segment_radius + g_radius));
    }
}

}  // namespace

ClaimScanResult radial_claim_scan_serial(const Ball& ball, const Coloring& coloring, int g_radius,
                                         int segment_radius, int min_edges) {
    check_scan_args(ball, g_radius, segment_radius, min_edges);
    const auto segments = enumerate_radial_segments(ball, segment_radius, min_edges);
    ClaimScanResult result;
    const Index g_end = ball.ball_end(g_radius);
    result.translates = g_end;
    for (Index g = 0; g < g_end; ++g) {
        for (const auto& seg : segments) {
            const ClaimVerdict v = radial_claim_check(ball, coloring, g, seg);
            if (v.status == ClaimStatus::hypotheses_not_satisfied) continue;
            ++result.hypotheses_satisfied;
            if (v.status == ClaimStatus::fail) {
                result.failures.push_back({g, seg.vertices, v.violated_index});
            }
        }
    }
    return result;
}

ClaimScanResult radial_claim_scan(const Ball& ball, const Coloring& coloring, int g_radius,
                                  int segment_radius, int min_edges) {
    check_scan_args(ball, g_radius, segment_radius, min_edges);
    const Index g_end = ball.ball_end(g_radius);
    const Index x_end = ball.ball_end(segment_radius);
    const Index starts = ball.ball_end(segment_radius - min_edges);

    std::vector<std::size_t> satisfied(g_end, 0);
    std::vector<std::vector<ClaimScanFailure>> failures(g_end);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t gi = 0; gi < static_cast<std::int64_t>(g_end); ++gi) {
        const auto g = static_cast<Index>(gi);
        // Per-vertex data: colors agree, displacement, norm preserved.
        std::vector<char> match(x_end);
        std::vector<int> disp(x_end);
        std::vector<char> norm_kept(x_end);
        for (Index x = 0; x < x_end; ++x) {
            const Index gx = ball.product(g, x);
            match[x] = coloring.at(x) == coloring.at(gx);
            norm_kept[x] = ball.norm(gx) == ball.norm(x);
            disp[x] = match[x] ? displacement(ball, g, x) : 0;
        }
        // DFS over outward paths through color-matching vertices only; a
        // mismatch anywhere voids the hypothesis for every extension.
        std::vector<Index> path;
        std::vector<int> min_disp;
        std::vector<std::size_t> first_broken;  // first index with norm change, or npos
        const std::size_t npos = static_cast<std::size_t>(-1);
        const auto dfs = [&](auto&& self, Index x) -> void {
            path.push_back(x);
            const int md = min_disp.empty() ? disp[x] : std::min(min_disp.back(), disp[x]);
            min_disp.push_back(md);
            const std::size_t fb = first_broken.empty() || first_broken.back() == npos
                                       ? (norm_kept[x] ? npos : path.size() - 1)
                                       : first_broken.back();
            first_broken.push_back(fb);
            const std::size_t k = path.size();
            if (static_cast<int>(k) - 1 >= min_edges && 2 * static_cast<std::size_t>(md) < k) {
                ++satisfied[g];
                if (fb != npos) failures[g].push_back({g, path, fb});
            }
            if (ball.norm(x) < segment_radius) {
                for (std::size_t s = 0; s < ball.num_letters(); ++s) {
                    const Index y = ball.neighbor(x, static_cast<Letter>(s));
                    if (y != kNone && match[y] && ball.norm(y) == ball.norm(x) + 1) self(self, y);
                }
            }
            path.pop_back();
            min_disp.pop_back();
            first_broken.pop_back();
        };
        for (Index x = 0; x < starts; ++x) {
            if (match[x]) dfs(dfs, x);
        }
    }

    ClaimScanResult result;
    result.translates = g_end;
    for (Index g = 0; g < g_end; ++g) {
        result.hypotheses_satisfied += satisfied[g];
        for (auto& f : failures[g]) result.failures.push_back(std::move(f));
    }
    return result;
}

namespace {

Word nf_product(const WordProblem& grp, const Word& a, const Word& b) { return grp.multiply(a, b); }

int max_norm(const Ball& ball, const std::vector<Index>& reps) {
    int m = 0;
    for (Index y : reps) m = std::max(m, ball.norm(y));
    return m;
}

void validate_reps(const Ball& ball, const std::vector<Index>& reps) {
    if (reps.empty() || reps.front() != 0) {
        throw std::invalid_argument("coset representatives must start with the identity");
    }
    for (Index y : reps) {
        if (y >= ball.size()) throw std::invalid_argument("coset representative not in the ball");
    }
}

}  // namespace

Coloring transfer_to_subgroup(const Ball& ball, const Coloring& phi, const std::vector<Index>& reps,
                              const SubgroupPredicate& in_subgroup) {
    validate_reps(ball, reps);
    const WordProblem& grp = ball.group();
    const int reach = max_norm(ball, reps);
    std::vector<Word> rep_inverse;
    for (Index y : reps) rep_inverse.push_back(grp.inverse_word(ball.word(y)));

    // x lies in H y_i iff x y_i^{-1} in H.
    const Index check_end = ball.ball_end(ball.radius() - reach);
    for (Index x = 0; x < check_end; ++x) {
        int hits = 0;
        for (const Word& yinv : rep_inverse) hits += in_subgroup(nf_product(grp, ball.word(x), yinv));
        if (hits != 1) {
            throw TransversalError("representatives are not a right transversal: element '" +
                                       grp.format_word(ball.word(x)) + "' lies in " +
                                       std::to_string(hits) + " cosets",
                                   x);
        }
    }

    Coloring psi;
    psi.palette_size = 1;
    for (std::size_t i = 0; i < reps.size(); ++i) psi.palette_size *= phi.palette_size;
    psi.colors.assign(ball.size(), kNoColor);
    for (Index x = 0; x < ball.size(); ++x) {
        if (!in_subgroup(ball.word(x))) continue;
        ColorTuple tuple;
        bool ok = true;
        for (Index y : reps) {
            const Index xy = ball.product(x, y);
            if (xy == kNone || !phi.defined(xy)) {
                ok = false;
                break;
            }
            const ColorTuple& t = phi.tuple_at(xy);
            tuple.insert(tuple.end(), t.begin(), t.end());
        }
        if (ok) psi.colors[x] = psi.palette.intern(tuple);
    }
    return psi;
}

Coloring transfer_from_subgroup(const Ball& ball, const Coloring& psi, const std::vector<Index>& reps,
                                const SubgroupPredicate& in_subgroup) {
    validate_reps(ball, reps);
    const WordProblem& grp = ball.group();
    std::vector<Index> rep_inv;
    std::vector<Word> rep_inv_word;
    for (Index y : reps) {
        rep_inv_word.push_back(grp.inverse_word(ball.word(y)));
        rep_inv.push_back(ball.inverse(y));
    }
    const int reach = max_norm(ball, reps);
    const Index check_end = ball.ball_end(ball.radius() - reach);

    Coloring phi;
    phi.palette_size = psi.palette_size * reps.size();
    phi.colors.assign(ball.size(), kNoColor);
    for (Index x = 0; x < ball.size(); ++x) {
        int coset = -1;
        int hits = 0;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (in_subgroup(nf_product(grp, rep_inv_word[i], ball.word(x)))) {
                if (coset < 0) coset = static_cast<int>(i);
                ++hits;
            }
        }
        if (hits != 1) {
            if (x < check_end) {
                throw TransversalError("representatives are not a left transversal: element '" +
                                           grp.format_word(ball.word(x)) + "' lies in " +
                                           std::to_string(hits) + " cosets",
                                       x);
            }
            continue;
        }
        const Index z = rep_inv[coset] == kNone ? kNone : ball.product(rep_inv[coset], x);
        if (z == kNone || !psi.defined(z)) continue;
        ColorTuple tuple = psi.tuple_at(z);
        tuple.push_back(coset);
        phi.colors[x] = phi.palette.intern(tuple);
    }
    return phi;
}

Coloring product_coloring(const Ball& ball, const std::vector<TreeFactor>& factors) {
    if (factors.empty()) throw std::invalid_argument("product coloring needs at least one factor");
    Coloring out;
    out.palette_size = 0;
    for (const auto& f : factors) out.palette_size += f.tree_coloring->palette_size;
    out.colors.resize(ball.size());
    for (Index g = 0; g < ball.size(); ++g) {
        ColorTuple tuple;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto v = factors[i].orbit(g);
            if (!v || *v >= factors[i].tree_coloring->colors.size()) {
                throw OrbitError("orbit point of '" + ball.group().format_word(ball.word(g)) +
                                 "' in tree " + std::to_string(i) + " is outside the enumerated tree");
            }
            const ColorTuple& t = factors[i].tree_coloring->tuple_at(*v);
            tuple.insert(tuple.end(), t.begin(), t.end());
        }
        out.colors[g] = out.palette.intern(tuple);
    }
    return out;
}

std::size_t AperiodicityReport::unwitnessed() const {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const PairRecord& p) { return p.witness == kNone; }));
}

namespace {

void check_report_radius(const Ball& ball, int r1, int r2, int rho) {
    if (r1 < 0 || r2 < 0 || rho < 0) throw std::invalid_argument("report radii must be nonnegative");
    const int need = r1 + r2 + rho;
    if (ball.radius() < need) {
        throw std::invalid_argument("ball radius " + std::to_string(ball.radius()) +
                                    " too small for the report; required radius is " +
                                    std::to_string(need));
    }
}

std::vector<std::pair<Index, Index>> report_pairs(const Ball& ball, int r1, int r2) {
    std::vector<std::pair<Index, Index>> pairs;
    const Index g_end = ball.ball_end(r1);
    const Index h_end = ball.ball_end(r2);
    for (Index g = 1; g < g_end; ++g)
        for (Index h = 0; h < h_end; ++h) pairs.emplace_back(g, h);
    return pairs;
}

PairRecord search_pair(const Ball& ball, const Coloring& coloring, Index g, Index g_inv, Index h,
                       int rho) {
    PairRecord rec{g, h, kNone, rho};
    const Index u_end = ball.ball_end(rho);
    for (Index u = 0; u < u_end; ++u) {
        const Index x = ball.walk(h, ball.word(u));
        const Index y = ball.walk(g_inv, ball.word(x));
        if (x == kNone || y == kNone) continue;
        if (coloring.at(y) != coloring.at(x)) {
            rec.witness = x;
            rec.radius_used = ball.norm(u);
            break;
        }
    }
    return rec;
}

}  // namespace

AperiodicityReport aperiodicity_report_pairs(const Ball& ball, const Coloring& coloring,
                                             const std::vector<std::pair<Index, Index>>& pairs,
                                             int rho) {
    AperiodicityReport rep;
    rep.rho = rho;
    rep.pairs.resize(pairs.size());
    const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto [g, h] = pairs[static_cast<std::size_t>(i)];
        rep.pairs[static_cast<std::size_t>(i)] = search_pair(ball, coloring, g, ball.inverse(g), h, rho);
    }
    return rep;
}

AperiodicityReport aperiodicity_report(const Ball& ball, const Coloring& coloring, int r1, int r2,
                                       int rho) {
    check_report_radius(ball, r1, r2, rho);
    AperiodicityReport rep = aperiodicity_report_pairs(ball, coloring, report_pairs(ball, r1, r2), rho);
    rep.r1 = r1;
    rep.r2 = r2;
    return rep;
}

AperiodicityReport aperiodicity_report_serial(const Ball& ball, const Coloring& coloring, int r1,
                                              int r2, int rho) {
    check_report_radius(ball, r1, r2, rho);
    const WordProblem& grp = ball.group();
    AperiodicityReport rep;
    rep.r1 = r1;
    rep.r2 = r2;
    rep.rho = rho;
    const Index u_end = ball.ball_end(rho);
    for (const auto& [g, h] : report_pairs(ball, r1, r2)) {
        PairRecord rec{g, h, kNone, rho};
        const Word g_inv = grp.inverse_word(ball.word(g));
        for (Index u = 0; u < u_end; ++u) {
            const Index x = ball.find(grp.multiply(ball.word(h), ball.word(u)));
            Word w = g_inv;
            w.insert(w.end(), ball.word(x).begin(), ball.word(x).end());
            const Index y = ball.find(grp.normal_form(w));
            if (coloring.at(y) != coloring.at(x)) {
                rec.witness = x;
                rec.radius_used = ball.norm(u);
                break;
            }
        }
        rep.pairs.push_back(rec);
    }
    return rep;
}

}  // namespace coxtile
