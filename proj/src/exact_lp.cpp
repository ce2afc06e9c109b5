#include "coxtile/exact_lp.hpp"

#include <stdexcept>

namespace coxtile {

namespace {

struct Tableau {
    std::size_t cols = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<std::size_t> basis;
    std::vector<Rational> reduced;  // c_j - c_B^T T_j
    Rational value;

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = rows[r][c];
        for (auto& v : rows[r]) v /= p;
        rhs[r] /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        if (reduced[c] != 0) {
            const Rational f = reduced[c];
            for (std::size_t j = 0; j < cols; ++j) reduced[j] -= f * rows[r][j];
            value += f * rhs[r];
        }
        basis[r] = c;
    }

    void price(const std::vector<Rational>& cost) {
        reduced = cost;
        value = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational& cb = cost[basis[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) reduced[j] -= cb * rows[i][j];
            value += cb * rhs[i];
        }
    }

    // Returns false when unbounded.
    bool optimize(const std::vector<char>& allowed) {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (allowed[j] && reduced[j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                const Rational ratio = rhs[i] / rows[i][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult maximize(const std::vector<Rational>& c, const std::vector<std::vector<Rational>>& G,
                  const std::vector<Rational>& h) {
    const std::size_t n = c.size();
    const std::size_t m = G.size();
    if (h.size() != m) throw std::invalid_argument("constraint matrix and bounds disagree in size");
    std::size_t artificial = 0;
    for (const auto& b : h) artificial += b < 0;

    Tableau t;
    t.cols = n + m + artificial;
    t.rows.assign(m, std::vector<Rational>(t.cols));
    t.rhs.resize(m);
    t.basis.resize(m);
    std::size_t next_art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        if (G[i].size() != n) throw std::invalid_argument("constraint row has the wrong width");
        const bool neg = h[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = neg ? Rational(-G[i][j]) : G[i][j];
        t.rows[i][n + i] = neg ? -1 : 1;
        t.rhs[i] = neg ? Rational(-h[i]) : h[i];
        if (neg) {
            t.rows[i][next_art] = 1;
            t.basis[i] = next_art++;
        } else {
            t.basis[i] = n + i;
        }
    }

    std::vector<char> allowed(t.cols, 1);
    if (artificial > 0) {
        std::vector<Rational> phase1(t.cols);
        for (std::size_t j = n + m; j < t.cols; ++j) phase1[j] = -1;
        t.price(phase1);
        t.optimize(allowed);
        if (t.value < 0) return {LpStatus::infeasible, 0, {}};
        // Drive zero-level artificials out of the basis.
        for (std::size_t i = 0; i < t.rows.size();) {
            if (t.basis[i] < n + m) {
                ++i;
                continue;
            }
            std::size_t col = n + m;
            for (std::size_t j = 0; j < n + m; ++j) {
                if (t.rows[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col == n + m) {
                t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
                t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            t.pivot(i, col);
            ++i;
        }
        for (std::size_t j = n + m; j < t.cols; ++j) allowed[j] = 0;
    }

    std::vector<Rational> cost(t.cols);
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
    t.price(cost);
    if (!t.optimize(allowed)) return {LpStatus::unbounded, 0, {}};

    LpResult out{LpStatus::optimal, t.value, std::vector<Rational>(n)};
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.basis[i] < n) out.x[t.basis[i]] = t.rhs[i];
    }
    return out;
}

}  // namespace coxtile
