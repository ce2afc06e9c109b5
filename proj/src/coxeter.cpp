#include "coxtile/coxeter.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace coxtile {

bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Letter c : w) {
        h ^= c + 1u;
        h *= 1099511628211ull;
    }
    h ^= w.size();
    return static_cast<std::size_t>(h);
}

Word inverse_involutive(std::span<const Letter> w) { return Word(w.rbegin(), w.rend()); }

CoxeterSystem::CoxeterSystem(std::vector<std::string> generators,
                             std::vector<std::vector<int>> matrix)
    : generators_(std::move(generators)), matrix_(std::move(matrix)) {
    const std::size_t n = generators_.size();
    if (n == 0) throw ValidationError("Coxeter system needs at least one generator");
    if (n > 64) throw ValidationError("Coxeter system rank above 64 is not supported");
    if (matrix_.size() != n) {
        throw ValidationError("matrix has " + std::to_string(matrix_.size()) + " rows for " +
                              std::to_string(n) + " generators");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix_[i].size() != n) {
            throw ValidationError("matrix row " + std::to_string(i) + " has " +
                                  std::to_string(matrix_[i].size()) + " entries, expected " +
                                  std::to_string(n));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix_[i][i] != 1) {
            throw ValidationError("diagonal entry m[" + std::to_string(i) + "][" +
                                  std::to_string(i) + "] = " + std::to_string(matrix_[i][i]) +
                                  ", expected 1");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const int v = matrix_[i][j];
            if (v != matrix_[j][i]) {
                throw ValidationError("asymmetric entry m[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "] = " + std::to_string(v) + " but m[" +
                                      std::to_string(j) + "][" + std::to_string(i) +
                                      "] = " + std::to_string(matrix_[j][i]));
            }
            if (v == 1 || v < 0) {
                throw ValidationError("invalid off-diagonal entry m[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "] = " + std::to_string(v) +
                                      " (allowed: 0 for infinity, or >= 2)");
            }
        }
    }
}

bool CoxeterSystem::is_right_angled() const {
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j)
            if (i != j && matrix_[i][j] != 0 && matrix_[i][j] != 2) return false;
    return true;
}

std::string CoxeterSystem::format_word(std::span<const Letter> w) const {
    bool single = true;
    for (const auto& g : generators_) single = single && g.size() == 1;
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (!single && k > 0) out += ' ';
        out += generators_.at(w[k]);
    }
    return out;
}

Word CoxeterSystem::parse_word(std::string_view text) const {
    Word out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == ' ' || text[pos] == ',') {
            ++pos;
            continue;
        }
        // longest generator name matching at pos
        std::size_t best = generators_.size();
        std::size_t best_len = 0;
        for (std::size_t g = 0; g < generators_.size(); ++g) {
            const auto& name = generators_[g];
            if (name.size() > best_len && text.substr(pos, name.size()) == name) {
                best = g;
                best_len = name.size();
            }
        }
        if (best == generators_.size()) {
            throw ValidationError("unknown generator at position " + std::to_string(pos) +
                                  " in word '" + std::string(text) + "'");
        }
        out.push_back(static_cast<Letter>(best));
        pos += best_len;
    }
    return out;
}

CoxeterSystem load_system(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("system description is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("generators") || !doc.contains("matrix")) {
        throw ValidationError("system description needs 'generators' and 'matrix'");
    }
    std::vector<std::string> gens;
    std::vector<std::vector<int>> matrix;
    try {
        gens = doc.at("generators").get<std::vector<std::string>>();
        matrix = doc.at("matrix").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed system description: ") + e.what());
    }
    return CoxeterSystem(std::move(gens), std::move(matrix));
}

CoxeterSystem load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open system file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_system(buf.str());
}

std::string dump_system(const CoxeterSystem& system) {
    nlohmann::ordered_json doc;
    doc["generators"] = system.generators();
    doc["matrix"] = system.matrix();
    return doc.dump();
}

CoxeterSystem dihedral_system(int m) {
    return CoxeterSystem({"s", "t"}, {{1, m}, {m, 1}});
}

CoxeterSystem right_angled_polygon_system(int p) {
    if (p < 3) throw ValidationError("polygon needs at least 3 sides");
    std::vector<std::string> gens;
    std::vector<std::vector<int>> matrix(p, std::vector<int>(p, 0));
    for (int i = 0; i < p; ++i) {
        gens.push_back("s" + std::to_string(i));
        matrix[i][i] = 1;
        matrix[i][(i + 1) % p] = 2;
        matrix[(i + 1) % p][i] = 2;
    }
    return CoxeterSystem(std::move(gens), std::move(matrix));
}

Word WordProblem::inverse_word(std::span<const Letter> w) const {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

Word WordProblem::multiply(std::span<const Letter> a, std::span<const Letter> b) const {
    Word w(a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    return normal_form(w);
}

std::string WordProblem::format_word(std::span<const Letter> w) const {
    bool single = true;
    for (std::size_t s = 0; s < num_letters(); ++s) single = single && letter_name(s).size() == 1;
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (!single && k > 0) out += ' ';
        out += letter_name(w[k]);
    }
    return out;
}

Lattice::Lattice(std::size_t dim) : dim_(dim) {
    if (dim == 0 || dim > 8) throw ValidationError("lattice dimension must be in [1, 8]");
}

std::string Lattice::letter_name(Letter s) const {
    return std::string(s % 2 == 0 ? "+" : "-") + "e" + std::to_string(s / 2 + 1);
}

std::vector<std::int64_t> Lattice::coordinates(std::span<const Letter> w) const {
    std::vector<std::int64_t> v(dim_, 0);
    for (Letter s : w) v.at(s / 2) += (s % 2 == 0) ? 1 : -1;
    return v;
}

Word Lattice::word_of(std::span<const std::int64_t> v) const {
    Word out;
    for (std::size_t i = 0; i < dim_; ++i) {
        const Letter s = static_cast<Letter>(2 * i + (v[i] < 0 ? 1 : 0));
        const std::int64_t count = v[i] < 0 ? -v[i] : v[i];
        out.insert(out.end(), static_cast<std::size_t>(count), s);
    }
    return out;
}

Word Lattice::normal_form(std::span<const Letter> w) const { return word_of(coordinates(w)); }

}  // namespace coxtile
