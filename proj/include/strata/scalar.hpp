#ifndef STRATA_SCALAR_HPP
#define STRATA_SCALAR_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strata/polynomial.hpp"
#include "strata/rational.hpp"

namespace strata {

/**
 * Named positive parameters together with the rational point at which every
 * order and sign question is decided.
 *
 * A parameter can be registered as fixed: it is then substituted by its
 * value while parsing and never appears symbolically. Symbolic identity
 * questions (rationality, group ranks) assume the symbolic parameters are
 * algebraically independent over Q.
 */
class ParamRegistry {
  public:
    ParamRegistry() = default;

    /// Adds a symbolic parameter; throws on duplicate names or nonpositive values.
    void add(std::string name, Rational value);
    /// Adds a parameter that is replaced by its value wherever it appears.
    void add_fixed(std::string name, Rational value);

    /// Registry whose i-th parameter takes the i-th prime as its value.
    static ParamRegistry with_default_values(const std::vector<std::string>& names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<Rational>& values() const noexcept { return values_; }

    std::optional<std::size_t> index_of(std::string_view name) const;
    std::optional<Rational> fixed_value(std::string_view name) const;

    /// Same names, different evaluation point.
    ParamRegistry with_values(std::vector<Rational> values) const;

  private:
    void check_new(const std::string& name, const Rational& value) const;

    std::vector<std::string> names_;
    std::vector<Rational> values_;
    std::vector<std::pair<std::string, Rational>> fixed_;
};

/**
 * Element of Q(p_1, ..., p_m) in canonical form.
 *
 * The numerator and denominator have integer coefficients, no common
 * polynomial factor and no common integer factor; the denominator's leading
 * coefficient is positive. Equality is therefore syntactic.
 */
class Scalar {
  public:
    Scalar() : den_(1) {}
    Scalar(long c) : Scalar(Rational(c)) {}               // NOLINT
    Scalar(const Rational& c);                            // NOLINT
    Scalar(const Polynomial& p);                          // NOLINT
    Scalar(const Polynomial& num, const Polynomial& den);

    static Scalar parameter(std::size_t index) { return Scalar(Polynomial::variable(index)); }

    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
    /// Value of a constant Scalar; throws otherwise.
    Rational constant_value() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    /// Throws on division by the zero Scalar.
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Canonical text in the input grammar (no '^'; powers are written as products).
    std::string to_string(const std::vector<std::string>& names) const;

  private:
    void normalize();

    Polynomial num_;
    Polynomial den_;
};

using ScalarVector = std::vector<Scalar>;

/// Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
/// factor := rational | ident | '(' expr ')' | '-' factor.
Scalar parse_scalar(std::string_view text, const ParamRegistry& reg);

/// Exact value at the registry point; throws if the denominator vanishes there.
Rational evaluate_at(const Scalar& s, const ParamRegistry& reg);
double evaluate_double(const Scalar& s, const ParamRegistry& reg);

/// True iff s is a parameter-free rational.
bool is_rational_constant(const Scalar& s);

int sign_at(const Scalar& s, const ParamRegistry& reg);

}  // namespace strata

#endif
