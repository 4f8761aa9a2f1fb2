#include "strata/matrix.hpp"

namespace strata {

Matrix<Rational> evaluate_matrix(const Matrix<Scalar>& m, const ParamRegistry& reg) {
    Matrix<Rational> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = evaluate_at(m(i, j), reg);
    return r;
}

Rational determinant(Matrix<Rational> m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) fail(ErrorKind::Internal, "determinant of a non-square matrix");
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::vector<std::vector<Rational>> null_space(const Matrix<Rational>& m) {
    Matrix<Rational> r = m;
    auto piv = row_reduce(r, rational_pivot());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace strata
