#ifndef STRATA_LP_HPP
#define STRATA_LP_HPP

#include "strata/matrix.hpp"
#include "strata/rational.hpp"

namespace strata {

struct LpResult {
    enum class Status { Optimal, Unbounded };
    Status status = Status::Optimal;
    Rational value;
    RationalVector x;
};

/**
 * Exact primal simplex with Bland's rule:
 * maximize c.x subject to a x <= b, x >= 0. Requires b >= 0 so that the
 * origin is a feasible starting vertex.
 */
LpResult maximize(const Matrix<Rational>& a, const RationalVector& b, const RationalVector& c);

}  // namespace strata

#endif
