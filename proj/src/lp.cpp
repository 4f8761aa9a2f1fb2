#include "strata/lp.hpp"

#include <optional>

#include "strata/error.hpp"

namespace strata {

LpResult maximize(const Matrix<Rational>& a, const RationalVector& b, const RationalVector& c) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m || c.size() != n) fail(ErrorKind::Internal, "maximize: shape mismatch");
    for (const auto& v : b)
        if (v < 0) fail(ErrorKind::Internal, "maximize: origin must be feasible");

    // Columns 0..n-1 structural, n..n+m-1 slack, last column right-hand side.
    const std::size_t rhs = n + m;
    Matrix<Rational> t(m + 1, n + m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
        t(i, n + i) = 1;
        t(i, rhs) = b[i];
    }
    for (std::size_t j = 0; j < n; ++j) t(m, j) = -c[j];
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < n + m; ++j)
            if (t(m, j) < 0) {
                enter = j;
                break;
            }
        if (!enter) break;

        std::optional<std::size_t> leave;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, *enter) <= 0) continue;
            Rational ratio = t(i, rhs) / t(i, *enter);
            if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (!leave) return LpResult{LpResult::Status::Unbounded, 0, {}};

        const std::size_t r = *leave;
        const Rational inv = Rational(1) / t(r, *enter);
        for (std::size_t j = 0; j <= rhs; ++j) t(r, j) *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == r || t(i, *enter) == 0) continue;
            const Rational f = t(i, *enter);
            for (std::size_t j = 0; j <= rhs; ++j) t(i, j) -= f * t(r, j);
        }
        basis[r] = *enter;
    }

    LpResult res;
    res.value = t(m, rhs);
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = t(i, rhs);
    return res;
}

}  // namespace strata
