#include "coxtile/walls.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <iterator>
#include <map>
#include <numeric>
#include <string>

namespace coxtile {

namespace {

const CoxeterGroup& coxeter_of(const Ball& ball) {
    const auto* g = dynamic_cast<const CoxeterGroup*>(&ball.group());
    if (!g) throw std::invalid_argument("walls need a ball of a Coxeter group");
    return *g;
}

std::vector<Edge> ball_edges(const Ball& ball) {
    std::vector<Edge> edges;
    for (Index g = 0; g < ball.size(); ++g) {
        for (std::size_t s = 0; s < ball.num_letters(); ++s) {
            const Index h = ball.neighbor(g, static_cast<Letter>(s));
            if (h != kNone && g < h) edges.push_back({g, static_cast<Letter>(s)});
        }
    }
    return edges;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

WallSet finish_walls(const Ball& ball, const CoxeterGroup& group, std::vector<Word>&& canon) {
    WallSet ws;
    ws.ball_ = &ball;
    ws.group_ = &group;
    ws.letters_ = ball.num_letters();
    ws.edge_wall_.assign(ball.size() * ws.letters_, kNoWall);
    const std::vector<Edge> edges = ball_edges(ball);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [g, s] = edges[e];
        auto [it, inserted] = ws.index_.emplace(canon[e], static_cast<WallId>(ws.walls_.size()));
        if (inserted) ws.walls_.push_back(Wall{std::move(canon[e]), s, false, {}});
        Wall& wall = ws.walls_[static_cast<std::size_t>(it->second)];
        if (wall.generator != s) wall.mixed_labels = true;
        wall.edges.push_back({g, s});
        const Index h = ball.neighbor(g, s);
        ws.edge_wall_[g * ws.letters_ + s] = it->second;
        ws.edge_wall_[h * ws.letters_ + s] = it->second;
    }

    ws.inversions_.resize(ball.size());
    for (Index g = 1; g < ball.size(); ++g) {
        const Letter s = ball.word(g).back();
        const Index p = ball.neighbor(g, s);
        auto set = ws.inversions_[p];
        set.insert(std::lower_bound(set.begin(), set.end(), ws.wall_of(p, s)), ws.wall_of(p, s));
        ws.inversions_[g] = std::move(set);
    }

    ws.determinate_.assign(ws.walls_.size(), 0);
    const int inner = ball.radius() - 1;
    for (const auto& [g, s] : edges) {
        const Index h = ball.neighbor(g, s);
        if (ball.norm(g) <= inner && ball.norm(h) <= inner) ws.determinate_[ws.wall_of(g, s)] = 1;
    }
    return ws;
}

WallId WallSet::find(const Word& canonical) const {
    auto it = index_.find(canonical);
    return it == index_.end() ? kNoWall : it->second;
}

WallSet enumerate_walls(const Ball& ball) {
    const CoxeterGroup& group = coxeter_of(ball);
    const std::vector<Edge> edges = ball_edges(ball);
    std::vector<Word> canon(edges.size());
    const auto n = static_cast<std::int64_t>(edges.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t e = 0; e < n; ++e) {
        const Edge& edge = edges[static_cast<std::size_t>(e)];
        canon[static_cast<std::size_t>(e)] = group.reflection(ball.word(edge.g), edge.s);
    }
    return finish_walls(ball, group, std::move(canon));
}

WallSet enumerate_walls_serial(const Ball& ball) {
    const CoxeterGroup& group = coxeter_of(ball);
    std::vector<Word> canon;
    for (const Edge& edge : ball_edges(ball)) canon.push_back(group.reflection(ball.word(edge.g), edge.s));
    return finish_walls(ball, group, std::move(canon));
}

std::vector<int> wall_components(const WallSet& walls, WallId w) {
    const Ball& ball = walls.ball();
    std::vector<int> comp(ball.size(), -1);
    int next = 0;
    for (Index start = 0; start < ball.size(); ++start) {
        if (comp[start] >= 0) continue;
        comp[start] = next;
        std::deque<Index> queue{start};
        while (!queue.empty()) {
            const Index x = queue.front();
            queue.pop_front();
            for (std::size_t s = 0; s < ball.num_letters(); ++s) {
                const Index y = ball.neighbor(x, static_cast<Letter>(s));
                if (y == kNone || comp[y] >= 0 || walls.wall_of(x, static_cast<Letter>(s)) == w) continue;
                comp[y] = next;
                queue.push_back(y);
            }
        }
        ++next;
    }
    return comp;
}

bool separates(const WallSet& walls, WallId w, Index g, Index h) {
    if (g == h) return false;
    const std::vector<int> comp = wall_components(walls, w);
    if (comp[g] == comp[h]) return false;
    const int count = *std::max_element(comp.begin(), comp.end()) + 1;
    if (count != 2) {
        throw InconclusiveError("deleting the wall leaves " + std::to_string(count) +
                                " components in the ball; enlarge the radius");
    }
    return true;
}

bool separates_exact(const WallSet& walls, WallId w, Index g, Index h) {
    const auto& ng = walls.inversion_set(g);
    const auto& nh = walls.inversion_set(h);
    return std::binary_search(ng.begin(), ng.end(), w) != std::binary_search(nh.begin(), nh.end(), w);
}

bool WallClasses::valid() const {
    if (!inconsistent.empty()) return false;
    return std::all_of(classes.begin(), classes.end(), [](const WallColorClass& c) { return c.disjoint; });
}

WallClasses classes_from_colors(const WallSet& walls, const std::vector<int>& color) {
    if (color.size() != walls.size()) throw std::invalid_argument("one color per wall expected");
    WallClasses out;
    out.color = color;
    std::map<int, std::size_t> slot;
    for (WallId w = 0; w < static_cast<WallId>(walls.size()); ++w) {
        const int c = color[static_cast<std::size_t>(w)];
        if (c < 0) continue;
        slot.emplace(c, 0);
    }
    for (auto& [c, i] : slot) {
        i = out.classes.size();
        WallColorClass cls;
        cls.color = c;
        cls.verified_radius = walls.ball().radius();
        out.classes.push_back(std::move(cls));
    }
    for (WallId w = 0; w < static_cast<WallId>(walls.size()); ++w) {
        const int c = color[static_cast<std::size_t>(w)];
        if (c >= 0) out.classes[slot[c]].members.push_back(w);
    }

    // Spherical rank-2 residues g<s,t> with g their least element.
    const Ball& ball = walls.ball();
    const CoxeterSystem& sys = walls.group().system();
    for (std::size_t s = 0; s < sys.rank(); ++s) {
        for (std::size_t t = s + 1; t < sys.rank(); ++t) {
            const int m = sys.m(s, t);
            if (m == 0) continue;
            for (Index g = 0; g < ball.size(); ++g) {
                const Index gs = ball.neighbor(g, static_cast<Letter>(s));
                const Index gt = ball.neighbor(g, static_cast<Letter>(t));
                if (gs == kNone || gt == kNone || ball.norm(gs) < ball.norm(g) ||
                    ball.norm(gt) < ball.norm(g)) {
                    continue;
                }
                std::vector<WallId> res;
                bool inside = true;
                for (int side = 0; side < 2 && inside; ++side) {
                    Index cur = g;
                    for (int k = 0; k < m; ++k) {
                        const auto letter = static_cast<Letter>((k + side) % 2 == 0 ? s : t);
                        const Index next = ball.neighbor(cur, letter);
                        if (next == kNone) {
                            inside = false;
                            break;
                        }
                        res.push_back(walls.wall_of(cur, letter));
                        cur = next;
                    }
                }
                if (!inside) continue;
                std::sort(res.begin(), res.end());
                res.erase(std::unique(res.begin(), res.end()), res.end());
                for (std::size_t i = 0; i < res.size(); ++i) {
                    for (std::size_t j = i + 1; j < res.size(); ++j) {
                        const int ci = color[static_cast<std::size_t>(res[i])];
                        if (ci < 0 || ci != color[static_cast<std::size_t>(res[j])]) continue;
                        WallColorClass& cls = out.classes[slot[ci]];
                        if (cls.disjoint) {
                            cls.disjoint = false;
                            cls.violation = IntersectionWitness{res[i], res[j], g};
                        }
                    }
                }
            }
        }
    }
    return out;
}

WallClasses color_walls(const WallSet& walls, const std::vector<int>& palette) {
    const CoxeterSystem& sys = walls.group().system();
    if (palette.size() != sys.rank()) {
        throw std::invalid_argument("palette needs one color per generator (" + std::to_string(sys.rank()) +
                                    "), got " + std::to_string(palette.size()));
    }
    std::vector<int> color(walls.size());
    std::vector<WallId> inconsistent;
    for (WallId w = 0; w < static_cast<WallId>(walls.size()); ++w) {
        const Wall& wall = walls[w];
        color[static_cast<std::size_t>(w)] = palette[wall.generator];
        for (const Edge& e : wall.edges) {
            if (palette[e.s] != palette[wall.generator]) {
                inconsistent.push_back(w);
                break;
            }
        }
    }
    WallClasses out = classes_from_colors(walls, color);
    out.inconsistent = std::move(inconsistent);
    return out;
}

ClassRegions class_regions(const WallSet& walls, const WallColorClass& cls) {
    const Ball& ball = walls.ball();
    std::vector<char> member(walls.size(), 0);
    for (WallId w : cls.members) member[static_cast<std::size_t>(w)] = 1;
    UnionFind uf(ball.size());
    for (Index g = 0; g < ball.size(); ++g) {
        for (std::size_t s = 0; s < ball.num_letters(); ++s) {
            const Index h = ball.neighbor(g, static_cast<Letter>(s));
            if (h == kNone || h < g) continue;
            if (!member[static_cast<std::size_t>(walls.wall_of(g, static_cast<Letter>(s)))]) uf.unite(g, h);
        }
    }
    ClassRegions out;
    out.region.assign(ball.size(), -1);
    std::vector<int> label(ball.size(), -1);
    for (Index g = 0; g < ball.size(); ++g) {
        const std::size_t r = uf.find(g);
        if (label[r] < 0) label[r] = out.count++;
        out.region[g] = label[r];
    }
    for (WallId w : cls.members) {
        std::vector<int> sides;
        for (const Edge& e : walls[w].edges) {
            sides.push_back(out.region[e.g]);
            sides.push_back(out.region[ball.neighbor(e.g, e.s)]);
        }
        std::sort(sides.begin(), sides.end());
        sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
        out.wall_regions.push_back(std::move(sides));
    }
    return out;
}

LevelMap peel_levels(const WallSet& walls, const WallColorClass& cls, Index base) {
    if (base >= walls.ball().size()) throw std::invalid_argument("base chamber outside the ball");
    const ClassRegions reg = class_regions(walls, cls);
    std::vector<std::vector<std::size_t>> region_walls(static_cast<std::size_t>(reg.count));
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
        for (int r : reg.wall_regions[i]) region_walls[static_cast<std::size_t>(r)].push_back(i);
    }
    LevelMap lm;
    lm.base = base;
    lm.color = cls.color;
    lm.level.assign(walls.size(), 0);
    lm.determinate.assign(walls.size(), 0);

    std::vector<int> depth(static_cast<std::size_t>(reg.count), -1);
    std::deque<int> queue{reg.region[base]};
    depth[static_cast<std::size_t>(reg.region[base])] = 0;
    while (!queue.empty()) {
        const int r = queue.front();
        queue.pop_front();
        for (std::size_t i : region_walls[static_cast<std::size_t>(r)]) {
            const WallId w = cls.members[i];
            if (lm.level[static_cast<std::size_t>(w)] != 0) continue;
            lm.level[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(r)] + 1;
            for (int other : reg.wall_regions[i]) {
                if (depth[static_cast<std::size_t>(other)] < 0) {
                    depth[static_cast<std::size_t>(other)] = depth[static_cast<std::size_t>(r)] + 1;
                    queue.push_back(other);
                }
            }
        }
    }
    for (WallId w : cls.members) {
        lm.determinate[static_cast<std::size_t>(w)] =
            walls.determinate(w) && lm.level[static_cast<std::size_t>(w)] > 0;
    }
    return lm;
}

LevelMap levels_by_separation(const WallSet& walls, const WallColorClass& cls, Index base) {
    if (base >= walls.ball().size()) throw std::invalid_argument("base chamber outside the ball");
    const Ball& ball = walls.ball();
    std::vector<char> member(walls.size(), 0);
    for (WallId w : cls.members) member[static_cast<std::size_t>(w)] = 1;
    LevelMap lm;
    lm.base = base;
    lm.color = cls.color;
    lm.level.assign(walls.size(), 0);
    lm.determinate.assign(walls.size(), 0);
    const auto& nb = walls.inversion_set(base);
    for (WallId w : cls.members) {
        const Edge e = walls[w].edges.front();
        Index x = e.g;
        if (separates_exact(walls, w, base, x)) x = ball.neighbor(e.g, e.s);
        const auto& nx = walls.inversion_set(x);
        std::vector<WallId> diff;
        std::set_symmetric_difference(nb.begin(), nb.end(), nx.begin(), nx.end(), std::back_inserter(diff));
        int count = 0;
        for (WallId d : diff) count += member[static_cast<std::size_t>(d)];
        lm.level[static_cast<std::size_t>(w)] = count + 1;
        lm.determinate[static_cast<std::size_t>(w)] = walls.determinate(w);
    }
    return lm;
}

std::optional<std::size_t> WallTree::position(WallId w) const {
    auto it = std::lower_bound(walls.begin(), walls.end(), w);
    if (it == walls.end() || *it != w) return std::nullopt;
    return static_cast<std::size_t>(it - walls.begin());
}

RootedTree WallTree::as_rooted_tree() const {
    // Reached walls only, renumbered in member order.
    std::vector<int> id(walls.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < walls.size(); ++i) {
        if (depth[i] >= 0) id[i] = next++;
    }
    RootedTree t;
    t.adjacency.resize(static_cast<std::size_t>(next));
    for (std::size_t i = 0; i < walls.size(); ++i) {
        if (depth[i] < 0 || parent[i] == kNoWall) continue;
        const int a = id[i];
        const int b = id[*position(parent[i])];
        t.adjacency[static_cast<std::size_t>(a)].push_back(b);
        t.adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    if (root != kNoWall) t.root = id[*position(root)];
    return t;
}

WallTree build_wall_tree(const WallSet& walls, const WallColorClass& cls) {
    WallTree tree;
    tree.color = cls.color;
    tree.walls = cls.members;
    const std::size_t n = tree.walls.size();
    tree.parent.assign(n, kNoWall);
    tree.depth.assign(n, -1);
    if (n == 0) return tree;

    const ClassRegions reg = class_regions(walls, cls);
    tree.regions = reg.count;
    const std::size_t nodes = n + static_cast<std::size_t>(reg.count);
    UnionFind uf(nodes);
    std::size_t edges = 0;
    std::size_t components = nodes;
    std::vector<std::vector<std::size_t>> region_walls(static_cast<std::size_t>(reg.count));
    for (std::size_t i = 0; i < n; ++i) {
        for (int r : reg.wall_regions[i]) {
            ++edges;
            if (uf.unite(i, n + static_cast<std::size_t>(r))) --components;
            region_walls[static_cast<std::size_t>(r)].push_back(i);
        }
    }
    tree.acyclic = edges + components == nodes;
    if (!tree.acyclic) {
        throw StructuralError("wall incidence graph of class " + std::to_string(cls.color) +
                              " has a cycle; the palette or the radius is unsuitable");
    }

    const int base_region = reg.region[0];
    std::size_t root = n;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& sides = reg.wall_regions[i];
        if (!std::binary_search(sides.begin(), sides.end(), base_region)) continue;
        if (root == n || shortlex_less(walls[tree.walls[i]].word, walls[tree.walls[root]].word)) root = i;
    }
    if (root == n) {
        root = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (shortlex_less(walls[tree.walls[i]].word, walls[tree.walls[root]].word)) root = i;
        }
    }
    tree.root = tree.walls[root];

    tree.depth[root] = 0;
    std::vector<char> region_seen(static_cast<std::size_t>(reg.count), 0);
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        for (int r : reg.wall_regions[i]) {
            if (region_seen[static_cast<std::size_t>(r)]) continue;
            region_seen[static_cast<std::size_t>(r)] = 1;
            for (std::size_t j : region_walls[static_cast<std::size_t>(r)]) {
                if (tree.depth[j] >= 0) continue;
                tree.depth[j] = tree.depth[i] + 1;
                tree.parent[j] = tree.walls[i];
                queue.push_back(j);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (walls.determinate(tree.walls[i]) && tree.depth[i] < 0) tree.connected_core = false;
    }
    return tree;
}

Coloring wall_coloring(const WallSet& walls, const std::vector<WallTree>& trees) {
    Coloring out;
    out.palette_size = 9 * trees.size();
    out.colors.assign(walls.size(), kNoColor);
    for (const WallTree& tree : trees) {
        for (std::size_t i = 0; i < tree.walls.size(); ++i) {
            if (tree.depth[i] < 0) continue;
            ColorTuple t{tree.color};
            const ColorTuple nc = norm_color(tree.depth[i]);
            t.insert(t.end(), nc.begin(), nc.end());
            out.colors[static_cast<std::size_t>(tree.walls[i])] = out.palette.intern(t);
        }
    }
    return out;
}

}  // namespace coxtile
