#include "strata/scalar.hpp"

#include <algorithm>
#include <cctype>

#include "strata/error.hpp"

namespace strata {

// ---------------------------------------------------------------- registry

void ParamRegistry::check_new(const std::string& name, const Rational& value) const {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
        fail(ErrorKind::Validation, "invalid parameter name '" + name + "'");
    if (index_of(name) || fixed_value(name)) fail(ErrorKind::Validation, "duplicate parameter '" + name + "'");
    if (value <= 0) fail(ErrorKind::Validation, "parameter '" + name + "' must be strictly positive");
}

void ParamRegistry::add(std::string name, Rational value) {
    check_new(name, value);
    names_.push_back(std::move(name));
    values_.push_back(std::move(value));
}

void ParamRegistry::add_fixed(std::string name, Rational value) {
    check_new(name, value);
    fixed_.emplace_back(std::move(name), std::move(value));
}

ParamRegistry ParamRegistry::with_default_values(const std::vector<std::string>& names) {
    ParamRegistry reg;
    long candidate = 2;
    for (const auto& name : names) {
        auto is_prime = [](long v) {
            for (long q = 2; q * q <= v; ++q)
                if (v % q == 0) return false;
            return true;
        };
        while (!is_prime(candidate)) ++candidate;
        reg.add(name, Rational(candidate));
        ++candidate;
    }
    return reg;
}

std::optional<std::size_t> ParamRegistry::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::optional<Rational> ParamRegistry::fixed_value(std::string_view name) const {
    for (const auto& [n, v] : fixed_)
        if (n == name) return v;
    return std::nullopt;
}

ParamRegistry ParamRegistry::with_values(std::vector<Rational> values) const {
    if (values.size() != values_.size()) fail(ErrorKind::Validation, "evaluation point has the wrong length");
    ParamRegistry r = *this;
    for (const auto& v : values)
        if (v <= 0) fail(ErrorKind::Validation, "parameter values must be strictly positive");
    r.values_ = std::move(values);
    return r;
}

// ---------------------------------------------------------------- scalar

Scalar::Scalar(const Rational& c) : num_(c), den_(1) { normalize(); }

Scalar::Scalar(const Polynomial& p) : num_(p), den_(1) { normalize(); }

Scalar::Scalar(const Polynomial& num, const Polynomial& den) : num_(num), den_(den) {
    if (den_.is_zero()) fail(ErrorKind::Domain, "zero denominator");
    normalize();
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    if (!den_.is_constant()) {
        Polynomial g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
    }
    // Joint scaling: clear all coefficient denominators, then the common integer factor.
    Rational scale = Rational(1) / den_.content();
    num_ *= scale;
    den_ *= scale;
    Rational joint = num_.content();  // den_ is primitive now, so this is the remaining factor
    Integer clear = boost::multiprecision::denominator(joint);
    if (clear != 1) {
        num_ *= Rational(clear);
        den_ *= Rational(clear);
    }
    if (den_.leading_coefficient() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

Rational Scalar::constant_value() const {
    if (!is_constant()) fail(ErrorKind::Internal, "Scalar is not a rational constant");
    return num_.constant_term() / den_.constant_term();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = Scalar();
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) fail(ErrorKind::Domain, "division by zero");
    if (is_zero()) return *this;
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

std::string Scalar::to_string(const std::vector<std::string>& names) const {
    std::string n = num_.to_string(names);
    if (den_ == Polynomial(1)) return n;
    if (num_.term_count() > 1) n = "(" + n + ")";
    std::string d = den_.to_string(names);
    const bool bare_den = den_.is_constant() ||
                          (den_.is_monomial() && den_.leading_coefficient() == 1 && den_.total_degree() == 1);
    if (!bare_den) d = "(" + d + ")";
    return n + "/" + d;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
  public:
    Parser(std::string_view text, const ParamRegistry& reg) : text_(text), reg_(reg) {}

    Scalar parse() {
        Scalar s = expr();
        skip_space();
        if (pos_ != text_.size()) error("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return s;
    }

  private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::Parse,
             "scalar expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Scalar expr() {
        Scalar acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Scalar term() {
        Scalar acc = factor();
        for (;;) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Scalar d = factor();
                if (d.is_zero()) {
                    pos_ = at;
                    error("division by an expression that is identically zero");
                }
                if (evaluate_at(d, reg_) == 0) {
                    pos_ = at;
                    error("division by an expression that vanishes at the evaluation point");
                }
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    Scalar factor() {
        skip_space();
        if (pos_ >= text_.size()) error("unexpected end of expression");
        char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            Scalar s = expr();
            if (!accept(')')) error("expected ')'");
            return s;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Scalar(Rational(std::string(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            if (auto idx = reg_.index_of(name)) return Scalar::parameter(*idx);
            if (auto v = reg_.fixed_value(name)) return Scalar(*v);
            pos_ = start;
            error("unknown parameter '" + std::string(name) + "'");
        }
        error("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const ParamRegistry& reg_;
    std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, const ParamRegistry& reg) { return Parser(text, reg).parse(); }

Rational evaluate_at(const Scalar& s, const ParamRegistry& reg) {
    Rational d = s.denominator().evaluate(reg.values());
    if (d == 0) fail(ErrorKind::Domain, "denominator vanishes at the evaluation point");
    return s.numerator().evaluate(reg.values()) / d;
}

double evaluate_double(const Scalar& s, const ParamRegistry& reg) { return to_double(evaluate_at(s, reg)); }

bool is_rational_constant(const Scalar& s) { return s.is_constant(); }

int sign_at(const Scalar& s, const ParamRegistry& reg) {
    Rational v = evaluate_at(s, reg);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

}  // namespace strata
