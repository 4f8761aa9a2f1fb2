#ifndef STRATA_LINEAR_RELATIONS_HPP
#define STRATA_LINEAR_RELATIONS_HPP

#include <vector>

#include "strata/integer_lattice.hpp"
#include "strata/scalar.hpp"

namespace strata {

// Linear algebra over Q on vectors of Scalars, treating each Scalar as an
// element of the Q-vector space Q(p_1, ..., p_m). Under the genericity
// contract these answers coincide with the answers for the real numbers the
// Scalars denote.

/// dim_Q of the Q-span of the given vectors (all of equal length).
std::size_t rational_span_dimension(const std::vector<ScalarVector>& vectors);

/**
 * Z-basis of the integer relations n in Z^k among k column vectors g_i:
 * sum_i n_i g_i[r] == 0 for r in zero_rows and sum_i n_i g_i[r] in Z for r in
 * integral_rows. Rows listed in neither set are unconstrained.
 */
std::vector<IntegerVector> integer_relations(const std::vector<ScalarVector>& columns,
                                             const std::vector<std::size_t>& zero_rows,
                                             const std::vector<std::size_t>& integral_rows);

}  // namespace strata

#endif
