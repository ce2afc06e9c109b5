#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coxtile {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

/// Strict ShortLex order: shorter first, then lexicographic by letter index.
bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b);

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

Word inverse_involutive(std::span<const Letter> w);

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Generators plus Coxeter matrix. m_ii = 1, m_ij = m_ji, off-diagonal
/// entries 0 (infinite order) or >= 2.
class CoxeterSystem {
public:
    CoxeterSystem(std::vector<std::string> generators, std::vector<std::vector<int>> matrix);

    std::size_t rank() const { return generators_.size(); }
    const std::vector<std::string>& generators() const { return generators_; }
    int m(std::size_t i, std::size_t j) const { return matrix_[i][j]; }
    const std::vector<std::vector<int>>& matrix() const { return matrix_; }

    /// All off-diagonal entries in {0, 2}.
    bool is_right_angled() const;
    bool commute(Letter s, Letter t) const { return s == t || matrix_[s][t] == 2; }

    std::string format_word(std::span<const Letter> w) const;
    Word parse_word(std::string_view text) const;

private:
    std::vector<std::string> generators_;
    std::vector<std::vector<int>> matrix_;
};

/// Parses `{"generators": [...], "matrix": [[...]]}`; 0 means infinity.
CoxeterSystem load_system(std::string_view json_text);
CoxeterSystem load_system_file(const std::string& path);
std::string dump_system(const CoxeterSystem& system);

/// Dihedral system of order 2m (m = 0 gives the infinite dihedral group).
CoxeterSystem dihedral_system(int m);
/// Right-angled p-gon group: adjacent sides commute, the rest are free.
CoxeterSystem right_angled_polygon_system(int p);

/// Word problem for a finitely generated group with a ShortLex normal form.
class WordProblem {
public:
    virtual ~WordProblem() = default;
    virtual std::size_t num_letters() const = 0;
    virtual Letter inverse(Letter s) const = 0;
    /// ShortLex-least geodesic word representing the same element.
    virtual Word normal_form(std::span<const Letter> w) const = 0;
    virtual std::string letter_name(Letter s) const = 0;

    Word inverse_word(std::span<const Letter> w) const;
    Word multiply(std::span<const Letter> a, std::span<const Letter> b) const;
    std::size_t norm(std::span<const Letter> w) const { return normal_form(w).size(); }
    std::string format_word(std::span<const Letter> w) const;
};

enum class Engine { automatic, right_angled, tits };

/// Coxeter group with a word-problem engine. Right-angled systems use
/// commutation rewriting; others use descent peeling in the Tits
/// reflection representation.
class CoxeterGroup final : public WordProblem {
public:
    explicit CoxeterGroup(CoxeterSystem system, Engine engine = Engine::automatic);

    const CoxeterSystem& system() const { return system_; }
    Engine engine() const { return engine_; }

    std::size_t num_letters() const override { return system_.rank(); }
    Letter inverse(Letter s) const override { return s; }
    Word normal_form(std::span<const Letter> w) const override;
    std::string letter_name(Letter s) const override { return system_.generators()[s]; }

    /// Canonical word of g s g^{-1} for the element g given by `prefix`.
    Word reflection(std::span<const Letter> prefix, Letter s) const;

    /// Reduces a word with the deletion condition: while two cocycle
    /// reflections coincide, delete the corresponding pair of letters.
    /// Reflection equality is tested in the Tits representation.
    Word reduce_by_deletion(std::span<const Letter> w) const;

private:
    Word normal_form_right_angled(std::span<const Letter> w) const;
    Word normal_form_tits(std::span<const Letter> w) const;

    CoxeterSystem system_;
    Engine engine_;
    std::vector<double> bilinear_;  // rank x rank Tits form
};

/// Z^d with the standard generators. Letter 2i is +e_i, 2i+1 is -e_i.
class Lattice final : public WordProblem {
public:
    explicit Lattice(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t num_letters() const override { return 2 * dim_; }
    Letter inverse(Letter s) const override { return static_cast<Letter>(s ^ 1u); }
    Word normal_form(std::span<const Letter> w) const override;
    std::string letter_name(Letter s) const override;

    std::vector<std::int64_t> coordinates(std::span<const Letter> w) const;
    Word word_of(std::span<const std::int64_t> v) const;

private:
    std::size_t dim_;
};

}  // namespace coxtile
