#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace coxtile {

struct RunConfig {
    std::string subcommand;
    std::string system;       // file path or built-in name
    int n = 3;                // half side count for render/space, prefix length for seq
    int radius = -1;          // -1: subcommand default
    int r1 = 2;
    int r2 = 3;
    int rho = 4;
    int depth = 6;
    std::string kind;         // seq: morse_thue | ternary | squares; color: norm | squares | morse_thue
    std::string palette;      // distinct | alternating | single | comma list
    std::string orientation = "alternating";
    bool refine = false;
    bool words = false;
    bool plain = false;       // render without deformation
    double epsilon = -1.0;    // < 0: 0.05 x side length
    std::string out;          // JSON destination; stdout when empty
    std::string svg;          // SVG destination for render
    std::uint64_t seed = 1;
    std::size_t cap = 0;      // 0: default ball cap
    std::size_t samples = 64; // overlap samples per tile
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;

/// Runs a validated configuration; JSON goes to `out` unless config.out is set.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it. Usage errors exit with 2.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coxtile
