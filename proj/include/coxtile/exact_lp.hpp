#pragma once

#include <gmpxx.h>

#include <vector>

namespace coxtile {

using Rational = mpq_class;

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    std::vector<Rational> x;
};

/// Maximizes c.x subject to G x <= h and x >= 0 with an exact two-phase
/// tableau simplex (Bland's rule, so it always terminates).
LpResult maximize(const std::vector<Rational>& c, const std::vector<std::vector<Rational>>& G,
                  const std::vector<Rational>& h);

}  // namespace coxtile
