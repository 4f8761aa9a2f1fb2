#include "strata/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

#include "strata/error.hpp"

namespace strata {

namespace {

void trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
    Exponents r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

unsigned exponent_at(const Exponents& e, std::size_t i) { return i < e.size() ? e[i] : 0; }

// a divisible by b as monomials?
bool divides(const Exponents& b, const Exponents& a) {
    for (std::size_t i = 0; i < b.size(); ++i)
        if (exponent_at(a, i) < b[i]) return false;
    return true;
}

Exponents subtract_exponents(const Exponents& a, const Exponents& b) {
    Exponents r = a;
    if (r.size() < b.size()) r.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Integer integer_gcd(Integer a, Integer b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

Integer integer_lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    Integer g = integer_gcd(a, b);
    Integer r = (a / g) * b;
    return r < 0 ? Integer(-r) : r;
}

// Makes the leading coefficient positive and clears the content.
Polynomial normalize_gcd(const Polynomial& p) {
    if (p.is_zero()) return p;
    Polynomial q = p.primitive_part();
    if (q.leading_coefficient() < 0) q = -q;
    return q;
}

Polynomial monomial_gcd(const Exponents& m, const Polynomial& f) {
    Exponents g = m;
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], exponent_at(e, i));
    }
    trim(g);
    return Polynomial::monomial(g, Rational(1));
}

std::size_t degree_of(const std::vector<Polynomial>& coeffs) { return coeffs.size() - 1; }

// Pseudo-remainder of a by b, both viewed as polynomials in `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
    auto bc = b.coefficients_in(var);
    const std::size_t db = degree_of(bc);
    const Polynomial& lcb = bc.back();
    Polynomial r = a;
    while (!r.is_zero()) {
        auto rc = r.coefficients_in(var);
        const std::size_t dr = degree_of(rc);
        if (dr < db) break;
        Exponents shift(var + 1, 0);
        shift[var] = static_cast<unsigned>(dr - db);
        trim(shift);
        Polynomial x = Polynomial::monomial(shift, Rational(1));
        r = lcb * r - rc.back() * x * b;
    }
    return r;
}

// Content with respect to `var`: gcd of the coefficients of its powers.
Polynomial content_in(const Polynomial& p, std::size_t var) {
    Polynomial g;
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Polynomial primitive_in(const Polynomial& p, std::size_t var) {
    Polynomial c = content_in(p, var);
    auto q = divide_exact(p, c);
    assert(q);
    return *q;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    try {
        return Rational(text);
    } catch (const std::exception&) {
        fail(ErrorKind::Parse, "invalid rational literal '" + text + "'");
    }
}

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_.emplace(Exponents{}, c);
}

Polynomial Polynomial::variable(std::size_t index) {
    Exponents e(index + 1, 0);
    e[index] = 1;
    return monomial(std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(Exponents exps, const Rational& coeff) {
    Polynomial p;
    trim(exps);
    if (coeff != 0) p.terms_.emplace(std::move(exps), coeff);
    return p;
}

bool Polynomial::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t Polynomial::variable_span() const noexcept {
    std::size_t n = 0;
    for (const auto& [e, c] : terms_) n = std::max(n, e.size());
    return n;
}

unsigned Polynomial::degree_in(std::size_t var) const noexcept {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, exponent_at(e, var));
    return d;
}

unsigned Polynomial::total_degree() const noexcept {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (unsigned x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

std::optional<std::size_t> Polynomial::lowest_variable() const noexcept {
    std::optional<std::size_t> best;
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) {
                if (!best || i < *best) best = i;
                break;
            }
        }
    }
    return best;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i >= point.size()) fail(ErrorKind::Internal, "polynomial variable outside the registry");
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        }
        total += t;
    }
    return total;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return 0;
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        num_gcd = integer_gcd(num_gcd, boost::multiprecision::numerator(c));
        den_lcm = integer_lcm(den_lcm, boost::multiprecision::denominator(c));
    }
    return Rational(num_gcd, den_lcm);
}

Polynomial Polynomial::primitive_part() const {
    if (terms_.empty()) return *this;
    Polynomial r = *this;
    r *= Rational(1) / content();
    return r;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
    std::vector<Polynomial> out(degree_in(var) + 1);
    for (const auto& [e, c] : terms_) {
        Exponents rest = e;
        unsigned k = 0;
        if (var < rest.size()) {
            k = rest[var];
            rest[var] = 0;
            trim(rest);
        }
        out[k].add_term(rest, c);
    }
    return out;
}

Polynomial Polynomial::from_coefficients_in(std::size_t var, const std::vector<Polynomial>& coeffs) {
    Polynomial r;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        for (const auto& [e, c] : coeffs[k].terms_) {
            Exponents full = e;
            if (full.size() <= var) full.resize(var + 1, 0);
            full[var] += static_cast<unsigned>(k);
            trim(full);
            r.add_term(full, c);
        }
    }
    return r;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || e.empty()) {
            out << mag.str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (unsigned k = 0; k < e[i]; ++k) {
                if (wrote) out << "*";
                out << (i < names.size() ? names[i] : "x" + std::to_string(i));
                wrote = true;
            }
        }
    }
    return out.str();
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) fail(ErrorKind::Internal, "polynomial division by zero");
    if (b.is_constant()) {
        Polynomial q = a;
        q *= Rational(1) / b.leading_coefficient();
        return q;
    }
    Polynomial q;
    Polynomial r = a;
    const Exponents& lb = b.leading_exponents();
    const Rational& lcb = b.leading_coefficient();
    while (!r.is_zero()) {
        const Exponents& lr = r.leading_exponents();
        if (!divides(lb, lr)) return std::nullopt;
        Polynomial t = Polynomial::monomial(subtract_exponents(lr, lb), r.leading_coefficient() / lcb);
        q += t;
        r -= t * b;
    }
    return q;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return normalize_gcd(b);
    if (b.is_zero()) return normalize_gcd(a);
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    if (a.is_monomial()) return monomial_gcd(a.leading_exponents(), b);
    if (b.is_monomial()) return monomial_gcd(b.leading_exponents(), a);
    if (normalize_gcd(a) == normalize_gcd(b)) return normalize_gcd(a);

    const std::size_t var = std::min(a.lowest_variable().value_or(SIZE_MAX), b.lowest_variable().value_or(SIZE_MAX));
    const bool a_has = a.degree_in(var) > 0;
    const bool b_has = b.degree_in(var) > 0;
    if (!a_has) return gcd(a, content_in(b, var));
    if (!b_has) return gcd(content_in(a, var), b);

    Polynomial cont = gcd(content_in(a, var), content_in(b, var));
    Polynomial x = primitive_in(a, var);
    Polynomial y = primitive_in(b, var);
    if (x.degree_in(var) < y.degree_in(var)) std::swap(x, y);
    while (!y.is_zero()) {
        Polynomial r = pseudo_remainder(x, y, var);
        x = std::move(y);
        y = r.is_zero() ? r : primitive_in(r, var);
    }
    x = primitive_in(x, var);
    return normalize_gcd(cont * x);
}

}  // namespace strata
