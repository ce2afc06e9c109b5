#include <algorithm>
#include <cmath>
#include <numbers>

#include "coxtile/coxeter.hpp"

namespace coxtile {

namespace {

constexpr double kMatrixTol = 1e-9;

// Row-major square matrix acting on the root space.
struct RootMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    static RootMatrix identity(std::size_t n) {
        RootMatrix m{n, std::vector<double>(n * n, 0.0)};
        for (std::size_t i = 0; i < n; ++i) m.a[i * n + i] = 1.0;
        return m;
    }
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// M <- S_s M; only row s changes.
void left_reflect(RootMatrix& m, const std::vector<double>& form, Letter s) {
    const std::size_t n = m.n;
    std::vector<double> row(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double b = form[s * n + k];
        if (b == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) row[j] += b * m.at(k, j);
    }
    for (std::size_t j = 0; j < n; ++j) m.at(s, j) -= 2.0 * row[j];
}

// M <- M S_s = M - 2 (M e_s) b_s^T.
void right_reflect(RootMatrix& m, const std::vector<double>& form, Letter s) {
    const std::size_t n = m.n;
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = m.at(i, s);
    for (std::size_t j = 0; j < n; ++j) {
        const double b = form[s * n + j];
        if (b == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) -= 2.0 * col[i] * b;
    }
}

// Column s of M is a root; it is negative iff its largest-magnitude
// coordinate is negative.
bool column_negative(const RootMatrix& m, Letter s) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        const double v = m.at(i, s);
        if (std::abs(v) > std::abs(best)) best = v;
    }
    return best < 0.0;
}

bool matrices_close(const RootMatrix& x, const RootMatrix& y) {
    double scale = 1.0;
    double diff = 0.0;
    for (std::size_t k = 0; k < x.a.size(); ++k) {
        scale = std::max({scale, std::abs(x.a[k]), std::abs(y.a[k])});
        diff = std::max(diff, std::abs(x.a[k] - y.a[k]));
    }
    return diff <= kMatrixTol * scale;
}

}  // namespace

CoxeterGroup::CoxeterGroup(CoxeterSystem system, Engine engine)
    : system_(std::move(system)), engine_(engine) {
    if (engine_ == Engine::automatic) {
        engine_ = system_.is_right_angled() ? Engine::right_angled : Engine::tits;
    }
    if (engine_ == Engine::right_angled && !system_.is_right_angled()) {
        throw ValidationError("right-angled engine requested for a system that is not right-angled");
    }
    const std::size_t n = system_.rank();
    bilinear_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int m = system_.m(i, j);
            double b = 0.0;
            if (i == j) {
                b = 1.0;
            } else if (m == 0) {
                b = -1.0;
            } else if (m == 2) {
                b = 0.0;  // exact; cos(pi/2) is not exactly zero in floating point
            } else {
                b = -std::cos(std::numbers::pi / m);
            }
            bilinear_[i * n + j] = b;
        }
    }
}

Word CoxeterGroup::normal_form(std::span<const Letter> w) const {
    for (Letter s : w) {
        if (s >= system_.rank()) throw ValidationError("letter out of range in word");
    }
    return engine_ == Engine::right_angled ? normal_form_right_angled(w) : normal_form_tits(w);
}

Word CoxeterGroup::normal_form_right_angled(std::span<const Letter> w) const {
    // Reduce: an appended letter cancels against the last occurrence of
    // itself that can be commuted to the end.
    Word reduced;
    reduced.reserve(w.size());
    for (Letter s : w) {
        bool cancelled = false;
        for (std::size_t j = reduced.size(); j-- > 0;) {
            if (reduced[j] == s) {
                reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(j));
                cancelled = true;
                break;
            }
            if (!system_.commute(reduced[j], s)) break;
        }
        if (!cancelled) reduced.push_back(s);
    }
    // Reduced words of one element differ only by commutations; take the
    // lexicographically least arrangement greedily.
    Word out;
    out.reserve(reduced.size());
    std::vector<bool> used(reduced.size(), false);
    for (std::size_t step = 0; step < reduced.size(); ++step) {
        std::size_t pick = reduced.size();
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            if (used[i]) continue;
            bool available = true;
            for (std::size_t j = 0; j < i && available; ++j) {
                if (!used[j] && (reduced[j] == reduced[i] || !system_.commute(reduced[j], reduced[i]))) {
                    available = false;
                }
            }
            if (available && (pick == reduced.size() || reduced[i] < reduced[pick])) pick = i;
        }
        used[pick] = true;
        out.push_back(reduced[pick]);
    }
    return out;
}

Word CoxeterGroup::normal_form_tits(std::span<const Letter> w) const {
    const std::size_t n = system_.rank();
    // M represents w^{-1} on the root space.
    RootMatrix m = RootMatrix::identity(n);
    for (Letter s : w) left_reflect(m, bilinear_, s);
    Word out;
    out.reserve(w.size());
    for (std::size_t guard = 0; guard <= w.size(); ++guard) {
        Letter descent = static_cast<Letter>(n);
        for (std::size_t s = 0; s < n; ++s) {
            if (column_negative(m, static_cast<Letter>(s))) {
                descent = static_cast<Letter>(s);
                break;
            }
        }
        if (descent == n) return out;
        out.push_back(descent);
        right_reflect(m, bilinear_, descent);  // w <- s w
    }
    throw std::runtime_error("Tits normal form did not terminate; numerical breakdown");
}

Word CoxeterGroup::reflection(std::span<const Letter> prefix, Letter s) const {
    Word w(prefix.begin(), prefix.end());
    w.push_back(s);
    w.insert(w.end(), prefix.rbegin(), prefix.rend());
    return normal_form(w);
}

Word CoxeterGroup::reduce_by_deletion(std::span<const Letter> input) const {
    const std::size_t n = system_.rank();
    Word w(input.begin(), input.end());
    for (;;) {
        std::vector<RootMatrix> refl;
        refl.reserve(w.size());
        RootMatrix prefix = RootMatrix::identity(n);      // p_{i-1}
        RootMatrix prefix_inv = RootMatrix::identity(n);  // p_{i-1}^{-1}
        bool deleted = false;
        for (std::size_t i = 0; i < w.size() && !deleted; ++i) {
            // t_i = p S_{s_i} p^{-1}
            RootMatrix t = prefix;
            right_reflect(t, bilinear_, w[i]);
            RootMatrix prod{n, std::vector<double>(n * n, 0.0)};
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t k = 0; k < n; ++k) {
                    const double v = t.at(r, k);
                    if (v == 0.0) continue;
                    for (std::size_t c = 0; c < n; ++c) prod.at(r, c) += v * prefix_inv.at(k, c);
                }
            for (std::size_t j = 0; j < refl.size(); ++j) {
                if (matrices_close(refl[j], prod)) {
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
                    deleted = true;
                    break;
                }
            }
            if (deleted) break;
            refl.push_back(std::move(prod));
            right_reflect(prefix, bilinear_, w[i]);
            left_reflect(prefix_inv, bilinear_, w[i]);
        }
        if (!deleted) return w;
    }
}

}  // namespace coxtile
