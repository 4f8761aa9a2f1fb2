#include "strata/integer_lattice.hpp"

#include <optional>
#include <utility>

namespace strata {

namespace {

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer gcd_of(Integer a, Integer b) {
    a = abs_of(a);
    b = abs_of(b);
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

void swap_cols(Matrix<Integer>& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// col_dst -= q * col_src
void axpy_col(Matrix<Integer>& m, std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
}

void axpy_row(Matrix<Integer>& m, std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= q * m(src, c);
}

// Column operations bringing m to column echelon form; u (if given) records them.
// Returns the number of nonzero columns, which come first.
std::size_t column_echelon(Matrix<Integer>& m, Matrix<Integer>* u) {
    const std::size_t k = m.cols();
    std::size_t start = 0;
    for (std::size_t i = 0; i < m.rows() && start < k; ++i) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t j = start; j < k; ++j)
                if (m(i, j) != 0 && (!best || abs_of(m(i, j)) < abs_of(m(i, *best)))) best = j;
            if (!best) break;
            swap_cols(m, start, *best);
            if (u) swap_cols(*u, start, *best);
            bool clean = true;
            for (std::size_t j = start + 1; j < k; ++j) {
                if (m(i, j) == 0) continue;
                Integer q = m(i, j) / m(i, start);
                axpy_col(m, j, start, q);
                if (u) axpy_col(*u, j, start, q);
                if (m(i, j) != 0) clean = false;
            }
            if (clean) {
                ++start;
                break;
            }
        }
    }
    return start;
}

}  // namespace

std::vector<IntegerVector> integer_kernel(const Matrix<Integer>& input) {
    Matrix<Integer> m = input;
    Matrix<Integer> u = Matrix<Integer>::identity(m.cols());
    const std::size_t start = column_echelon(m, &u);
    std::vector<IntegerVector> basis;
    for (std::size_t j = start; j < m.cols(); ++j) basis.push_back(u.column(j));
    return basis;
}

std::vector<IntegerVector> lattice_basis(const Matrix<Integer>& generators) {
    Matrix<Integer> m = generators;
    const std::size_t count = column_echelon(m, nullptr);
    std::vector<IntegerVector> basis;
    for (std::size_t j = 0; j < count; ++j) basis.push_back(m.column(j));
    return basis;
}

std::vector<Integer> smith_invariants(Matrix<Integer> m) {
    std::vector<Integer> diag;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        for (;;) {
            // Bring the smallest nonzero entry of the trailing block to (t, t).
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m(i, j) != 0 && (!best || abs_of(m(i, j)) < abs_of(m(best->first, best->second))))
                        best = std::make_pair(i, j);
            if (!best) return diag;
            m.swap_rows(t, best->first);
            swap_cols(m, t, best->second);

            bool reduced = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                axpy_row(m, i, t, m(i, t) / m(t, t));
                if (m(i, t) != 0) reduced = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                axpy_col(m, j, t, m(t, j) / m(t, t));
                if (m(t, j) != 0) reduced = false;
            }
            if (!reduced) continue;

            // Pivot must divide the whole trailing block.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row) {
                axpy_row(m, t, *bad_row, Integer(-1));
                continue;
            }
            diag.push_back(abs_of(m(t, t)));
            break;
        }
    }
    return diag;
}

Matrix<Integer> clear_row_denominators(const Matrix<Rational>& m) {
    Matrix<Integer> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer d = boost::multiprecision::denominator(m(i, j));
            l = l / gcd_of(l, d) * d;
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational v = m(i, j) * Rational(l);
            out(i, j) = boost::multiprecision::numerator(v);
        }
    }
    return out;
}

}  // namespace strata
