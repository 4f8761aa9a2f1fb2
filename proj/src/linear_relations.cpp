#include "strata/linear_relations.hpp"

#include <map>

namespace strata {

namespace {

// Every entry written over one common denominator: entry = numerators[c][r] / common.
struct CommonDenominator {
    Polynomial common;
    std::vector<std::vector<Polynomial>> numerators;
};

CommonDenominator over_common_denominator(const std::vector<ScalarVector>& columns) {
    CommonDenominator out;
    out.common = Polynomial(1);
    for (const auto& col : columns)
        for (const auto& s : col) {
            const Polynomial& d = s.denominator();
            if (d.is_constant()) {
                Rational dc = d.constant_term();
                if (dc != 1) out.common *= dc;
                continue;
            }
            if (divide_exact(out.common, d)) continue;
            Polynomial g = gcd(out.common, d);
            out.common = out.common * *divide_exact(d, g);
        }
    for (const auto& col : columns) {
        std::vector<Polynomial> nums;
        nums.reserve(col.size());
        for (const auto& s : col) nums.push_back(s.numerator() * *divide_exact(out.common, s.denominator()));
        out.numerators.push_back(std::move(nums));
    }
    return out;
}

using MonomialIndex = std::map<Exponents, std::size_t>;

void register_monomials(MonomialIndex& idx, const Polynomial& p) {
    for (const auto& [e, c] : p.terms()) idx.emplace(e, 0);
}

void number(MonomialIndex& idx) {
    std::size_t i = 0;
    for (auto& [e, k] : idx) k = i++;
}

Rational coefficient(const Polynomial& p, const Exponents& e) {
    auto it = p.terms().find(e);
    return it == p.terms().end() ? Rational(0) : it->second;
}

}  // namespace

std::size_t rational_span_dimension(const std::vector<ScalarVector>& vectors) {
    if (vectors.empty()) return 0;
    const std::size_t len = vectors.front().size();
    CommonDenominator cd = over_common_denominator(vectors);
    MonomialIndex mono;
    for (const auto& col : cd.numerators)
        for (const auto& p : col) register_monomials(mono, p);
    number(mono);
    Matrix<Rational> m(len * mono.size(), vectors.size());
    for (std::size_t c = 0; c < vectors.size(); ++c)
        for (std::size_t r = 0; r < len; ++r)
            for (const auto& [e, coeff] : cd.numerators[c][r].terms()) m(r * mono.size() + mono.at(e), c) = coeff;
    return rank(m, rational_pivot());
}

std::vector<IntegerVector> integer_relations(const std::vector<ScalarVector>& columns,
                                             const std::vector<std::size_t>& zero_rows,
                                             const std::vector<std::size_t>& integral_rows) {
    const std::size_t k = columns.size();
    if (k == 0) return {};
    CommonDenominator cd = over_common_denominator(columns);
    MonomialIndex mono;
    register_monomials(mono, cd.common);
    for (const auto& col : cd.numerators)
        for (const auto& p : col) register_monomials(mono, p);
    number(mono);

    // Unknowns: n_1..n_k, then one integer m_r per integral row.
    const std::size_t unknowns = k + integral_rows.size();
    const std::size_t eqs = (zero_rows.size() + integral_rows.size()) * mono.size();
    Matrix<Rational> sys(eqs, unknowns);
    std::size_t eq = 0;
    auto emit_row = [&](std::size_t r, std::optional<std::size_t> slack) {
        for (const auto& [e, mi] : mono) {
            for (std::size_t c = 0; c < k; ++c) sys(eq + mi, c) = coefficient(cd.numerators[c][r], e);
            if (slack) sys(eq + mi, k + *slack) = -coefficient(cd.common, e);
        }
        eq += mono.size();
    };
    for (auto r : zero_rows) emit_row(r, std::nullopt);
    for (std::size_t i = 0; i < integral_rows.size(); ++i) emit_row(integral_rows[i], i);

    auto kernel = integer_kernel(clear_row_denominators(sys));
    // Project onto the n-part; the projection of a lattice basis generates the relation lattice.
    Matrix<Integer> gens(k, kernel.size());
    for (std::size_t j = 0; j < kernel.size(); ++j)
        for (std::size_t i = 0; i < k; ++i) gens(i, j) = kernel[j][i];
    return lattice_basis(gens);
}

}  // namespace strata
