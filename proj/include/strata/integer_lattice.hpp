#ifndef STRATA_INTEGER_LATTICE_HPP
#define STRATA_INTEGER_LATTICE_HPP

#include <vector>

#include "strata/matrix.hpp"
#include "strata/rational.hpp"

namespace strata {

using IntegerVector = std::vector<Integer>;

/// Z-basis of {x in Z^k : m x = 0} for an integer matrix m with k columns.
std::vector<IntegerVector> integer_kernel(const Matrix<Integer>& m);

/// Z-basis of the lattice spanned by the columns of `generators`.
std::vector<IntegerVector> lattice_basis(const Matrix<Integer>& generators);

/// Nonzero diagonal entries of the Smith normal form, in divisibility order.
std::vector<Integer> smith_invariants(Matrix<Integer> m);

/// Scales each row of a rational matrix by the lcm of its denominators.
Matrix<Integer> clear_row_denominators(const Matrix<Rational>& m);

}  // namespace strata

#endif
