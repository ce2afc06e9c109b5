#pragma once

// Substitution sequences over small alphabets and the two colorings of Z
// built from them.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxtile::seqs {

using Symbol = std::uint8_t;
using BinarySeq = std::vector<Symbol>;
using TernarySeq = std::vector<Symbol>;

/// Morse-Thue term m(i): parity of the binary digit sum of i.
inline Symbol morse_thue_at(std::uint64_t i) {
    return static_cast<Symbol>(__builtin_popcountll(i) & 1u);
}

/// First n terms of the Morse-Thue sequence. Computed by iterating the
/// substitution 0 -> 01, 1 -> 10 and cross-checked against the digit-sum
/// parity; a mismatch throws std::logic_error.
BinarySeq morse_thue_prefix(std::size_t n);

/// First n terms by substitution only (no cross-check).
BinarySeq morse_thue_by_substitution(std::size_t n);

/// Ternary recoding of consecutive Morse-Thue pairs:
/// 01 -> 0, 10 -> 1, 00 -> 2, 11 -> 2.
Symbol ternary_at(std::uint64_t i);
TernarySeq square_free_prefix(std::size_t n);

class InvalidWindow : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PowerWitness {
    std::size_t position = 0;
    std::vector<Symbol> word;  // the repeated block W
};

/// Result of a power-freeness scan: empty optional means the scanned
/// prefix contains no factor W^p.
struct PowerVerdict {
    std::optional<PowerWitness> witness;
    bool is_free() const { return !witness.has_value(); }
};

/// Scans seq[0, scan) for a factor W^p, p in {2, 3}. Returns the leftmost
/// witness, ties broken by the shortest W. Throws InvalidWindow if scan
/// exceeds the sequence length or p is unsupported.
PowerVerdict verify_power_free(std::span<const Symbol> seq, int p, std::size_t scan);

enum class ZColoringKind { morse_thue, squares };

bool is_perfect_square(std::uint64_t v);

/// Color of x: m(|x|) for morse_thue, [|x| is a perfect square] for squares.
Symbol z_color(ZColoringKind kind, std::int64_t x);

/// Returns q with |q - m| <= 3|n| and z_color(morse_thue, q) !=
/// z_color(morse_thue, q + n), preferring the smallest |q - m| and then the
/// smaller q. Empty if no such q exists in that range.
std::optional<std::int64_t> z_witness(std::int64_t n, std::int64_t m);

struct SquaresDefect {
    std::int64_t m = 0;       // square root of the shift base
    std::int64_t center = 0;  // center of the all-zero window
    std::int64_t half_width = 0;
};

/// Least m >= 1 such that the squares coloring vanishes on the window of
/// half-width rho + |a| placed just past m^2, i.e. on
/// [m^2 + 1, m^2 + 2(rho + |a|) + 1]. The window center is reported so the
/// caller can use it as a translate with no color change.
SquaresDefect squares_limit_defect(std::int64_t a, std::int64_t rho);

std::string to_string(ZColoringKind kind);

}  // namespace coxtile::seqs
