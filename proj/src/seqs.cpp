#include "coxtile/seqs.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace coxtile::seqs {

BinarySeq morse_thue_by_substitution(std::size_t n) {
    BinarySeq seq{0};
    while (seq.size() < n) {
        BinarySeq next;
        next.reserve(seq.size() * 2);
        for (Symbol b : seq) {
            next.push_back(b);
            next.push_back(static_cast<Symbol>(1 - b));
        }
        seq = std::move(next);
    }
    seq.resize(n);
    return seq;
}

BinarySeq morse_thue_prefix(std::size_t n) {
    BinarySeq seq = morse_thue_by_substitution(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (seq[i] != morse_thue_at(i)) {
            throw std::logic_error("Morse-Thue substitution and digit-sum parity disagree at " +
                                   std::to_string(i));
        }
    }
    return seq;
}

Symbol ternary_at(std::uint64_t i) {
    const Symbol a = morse_thue_at(i);
    const Symbol b = morse_thue_at(i + 1);
    if (a == b) return 2;
    return a == 0 ? 0 : 1;
}

TernarySeq square_free_prefix(std::size_t n) {
    const BinarySeq mt = morse_thue_prefix(n + 1);
    TernarySeq out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = mt[i] == mt[i + 1] ? 2 : mt[i];
    }
    return out;
}

PowerVerdict verify_power_free(std::span<const Symbol> seq, int p, std::size_t scan) {
    if (p != 2 && p != 3) throw InvalidWindow("power must be 2 or 3, got " + std::to_string(p));
    if (scan > seq.size()) {
        throw InvalidWindow("scan length " + std::to_string(scan) + " exceeds sequence length " +
                            std::to_string(seq.size()));
    }
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t best_pos = none;
    std::size_t best_len = 0;
    std::vector<std::size_t> run(scan + 1, 0);
    // For period L, W^p starts at i iff seq[j] == seq[j+L] for all j in [i, i+(p-1)L).
    for (std::size_t len = 1; len * p <= scan; ++len) {
        const std::size_t limit = scan - len;
        run[limit] = 0;
        for (std::size_t j = limit; j-- > 0;) {
            run[j] = seq[j] == seq[j + len] ? run[j + 1] + 1 : 0;
        }
        const std::size_t need = (p - 1) * len;
        const std::size_t last_start = std::min(scan - p * len, best_pos == none ? scan : best_pos);
        for (std::size_t i = 0; i <= last_start && i + p * len <= scan; ++i) {
            if (run[i] >= need) {
                if (i < best_pos) {
                    best_pos = i;
                    best_len = len;
                }
                break;
            }
        }
    }
    PowerVerdict verdict;
    if (best_pos != none) {
        verdict.witness = PowerWitness{
            best_pos, std::vector<Symbol>(seq.begin() + best_pos, seq.begin() + best_pos + best_len)};
    }
    return verdict;
}

bool is_perfect_square(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v;
}

Symbol z_color(ZColoringKind kind, std::int64_t x) {
    const auto ax = static_cast<std::uint64_t>(x < 0 ? -x : x);
    switch (kind) {
        case ZColoringKind::morse_thue:
            return morse_thue_at(ax);
        case ZColoringKind::squares:
            return is_perfect_square(ax) ? 1 : 0;
    }
    return 0;
}

std::optional<std::int64_t> z_witness(std::int64_t n, std::int64_t m) {
    if (n == 0) throw std::invalid_argument("z_witness: n must be nonzero");
    const std::int64_t reach = 3 * std::llabs(n);
    auto differs = [n](std::int64_t q) {
        return z_color(ZColoringKind::morse_thue, q) != z_color(ZColoringKind::morse_thue, q + n);
    };
    for (std::int64_t d = 0; d <= reach; ++d) {
        if (differs(m - d)) return m - d;
        if (d > 0 && differs(m + d)) return m + d;
    }
    return std::nullopt;
}

SquaresDefect squares_limit_defect(std::int64_t a, std::int64_t rho) {
    if (a == 0) throw std::invalid_argument("squares_limit_defect: a must be nonzero");
    if (rho < 0) throw std::invalid_argument("squares_limit_defect: rho must be nonnegative");
    const std::int64_t half = rho + std::llabs(a);
    for (std::int64_t m = 1;; ++m) {
        const std::int64_t lo = m * m + 1;
        const std::int64_t hi = m * m + 2 * half + 1;
        bool clear = true;
        for (std::int64_t x = lo; x <= hi && clear; ++x) {
            clear = z_color(ZColoringKind::squares, x) == 0;
        }
        if (clear) return SquaresDefect{m, m * m + half + 1, half};
    }
}

std::string to_string(ZColoringKind kind) {
    return kind == ZColoringKind::morse_thue ? "morse_thue" : "squares";
}

}  // namespace coxtile::seqs
