#ifndef STRATA_POLYNOMIAL_HPP
#define STRATA_POLYNOMIAL_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

/// Exponent vector of a monomial. Trailing zeros are always trimmed, so
/// std::vector's lexicographic comparison agrees with comparing the
/// zero-padded vectors.
using Exponents = std::vector<unsigned>;

/**
 * Sparse multivariate polynomial with rational coefficients.
 *
 * Variables are referred to by index. Terms are kept in descending
 * lexicographic order of exponents, which is also the order used to define
 * the leading term. Zero coefficients are never stored.
 */
class Polynomial {
  public:
    using TermMap = std::map<Exponents, Rational, std::greater<>>;

    Polynomial() = default;
    Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

    static Polynomial variable(std::size_t index);
    static Polynomial monomial(Exponents exps, const Rational& coeff);

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// Constant term (zero if absent).
    Rational constant_term() const;
    /// Requires a nonzero polynomial.
    const Exponents& leading_exponents() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    /// Number of variable slots touched (one past the largest used index).
    std::size_t variable_span() const noexcept;
    unsigned degree_in(std::size_t var) const noexcept;
    unsigned total_degree() const noexcept;
    /// Smallest variable index occurring, if any.
    std::optional<std::size_t> lowest_variable() const noexcept;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    Rational evaluate(std::span<const Rational> point) const;

    /// Positive rational g such that this/g has coprime integer coefficients (0 for zero).
    Rational content() const;
    /// this / content(); keeps the sign of the leading coefficient.
    Polynomial primitive_part() const;

    /// Splits into coefficients of powers of `var`: result[k] is the coefficient of var^k.
    std::vector<Polynomial> coefficients_in(std::size_t var) const;
    static Polynomial from_coefficients_in(std::size_t var, const std::vector<Polynomial>& coeffs);

    /// Canonical text; variable names supplied by the caller.
    std::string to_string(std::span<const std::string> names) const;

  private:
    void add_term(const Exponents& e, const Rational& c);

    TermMap terms_;
};

/// Exact quotient a/b when b divides a, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor over Q, normalized to integer coprime coefficients with
/// positive leading coefficient. gcd(0, 0) is 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace strata

#endif
