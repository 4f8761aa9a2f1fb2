#include "strata/groups.hpp"

#include <algorithm>

#include "strata/error.hpp"
#include "strata/linear_relations.hpp"

namespace strata {

Integer GroupStructure::order() const {
    if (!finite()) fail(ErrorKind::Internal, "order of an infinite group");
    Integer o = 1;
    for (const auto& t : torsion) o *= t;
    return o;
}

std::string GroupStructure::describe() const {
    if (trivial()) return "trivial";
    std::string out;
    if (free_rank > 0) out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) out += (out.empty() ? "" : " x ") + std::string("Z/") + t.str();
    return out;
}

IndexSet GroupDescriptor::effective_support() const {
    IndexSet out;
    for (std::size_t i = 0; i < support.size(); ++i)
        for (const auto& g : generators)
            if (!is_integral(g[i])) {
                out.push_back(support[i]);
                break;
            }
    return out;
}

bool is_integral(const Scalar& s) { return is_rational_constant(s) && is_integer(s.constant_value()); }

Scalar reduce_mod_one(const Scalar& s) {
    if (!is_rational_constant(s)) return s;
    Rational v = s.constant_value();
    return Scalar(v - Rational(floor_of(v)));
}

GroupDescriptor make_group(IndexSet support, std::vector<ScalarVector> presentation, std::vector<std::size_t> sources) {
    GroupDescriptor g;
    g.support = std::move(support);
    g.presentation = std::move(presentation);
    g.sources = std::move(sources);
    for (const auto& v : g.presentation) {
        ScalarVector r;
        bool integral = true;
        for (const auto& s : v) {
            r.push_back(reduce_mod_one(s));
            if (!r.back().is_zero()) integral = false;
        }
        if (!integral) g.generators.push_back(std::move(r));
    }
    return g;
}

namespace {

ScalarVector restrict_to(const ScalarVector& v, const IndexSet& from, const IndexSet& to) {
    ScalarVector out;
    for (std::size_t h : to) out.push_back(v[row_of(from, h)]);
    return out;
}

IndexSet check_flag(const HPolytope& p, const FaceLattice& lat, std::size_t face, const IndexSet& I) {
    const Face& f = lat.faces.at(face);
    IndexSet J = set_intersection(I, f.index_set);
    if (J.size() != p.n - f.dim) fail(ErrorKind::Validation, "flag condition card(I cap I_F) = n - p fails");
    return J;
}

}  // namespace

GroupDescriptor gamma_group(const HPolytope& p, const Quasilattice& q, const IndexSet& I, const ParamRegistry& reg) {
    Matrix<Scalar> c = coordinates_in_basis(p, I, q, reg);
    std::vector<ScalarVector> pres;
    std::vector<std::size_t> sources;
    for (std::size_t g = 0; g < c.cols(); ++g) {
        pres.push_back(c.column(g));
        sources.push_back(g);
    }
    return make_group(I, std::move(pres), std::move(sources));
}

GroupDescriptor gamma_face_group(const HPolytope& p, const Quasilattice& q, const FaceLattice& lat, std::size_t face,
                                 const IndexSet& I, const ParamRegistry& reg) {
    const IndexSet J = check_flag(p, lat, face, I);
    Matrix<Scalar> c = coordinates_in_basis(p, I, q, reg);
    std::vector<ScalarVector> cols;
    for (std::size_t g = 0; g < c.cols(); ++g) cols.push_back(c.column(g));

    // Elements of Q lying in Span{X_h : h in J}: coordinates on I \ J vanish.
    std::vector<std::size_t> zero_rows;
    for (std::size_t h : set_difference(I, J)) zero_rows.push_back(row_of(I, h));
    auto relations = integer_relations(cols, zero_rows, {});

    std::vector<ScalarVector> pres;
    std::vector<std::size_t> sources;
    for (std::size_t k = 0; k < relations.size(); ++k) {
        ScalarVector v(J.size(), Scalar(0));
        for (std::size_t g = 0; g < cols.size(); ++g) {
            if (relations[k][g] == 0) continue;
            Scalar coeff(Rational(relations[k][g]));
            for (std::size_t i = 0; i < J.size(); ++i) v[i] += coeff * cols[g][row_of(I, J[i])];
        }
        pres.push_back(std::move(v));
        sources.push_back(k);
    }
    return make_group(J, std::move(pres), std::move(sources));
}

GammaSplit split_gamma(const HPolytope& p, const Quasilattice& q, const FaceLattice& lat, std::size_t face,
                       const IndexSet& I, const ParamRegistry& reg) {
    const IndexSet J = check_flag(p, lat, face, I);
    const IndexSet rest = set_difference(I, J);
    GroupDescriptor full = gamma_group(p, q, I, reg);
    std::vector<ScalarVector> on_face, transverse;
    GammaSplit out;
    for (const auto& v : full.presentation) {
        on_face.push_back(restrict_to(v, I, J));
        transverse.push_back(restrict_to(v, I, rest));
        out.epimorphism.emplace_back(transverse.back(), on_face.back());
    }
    out.on_face = make_group(J, std::move(on_face), full.sources);
    out.transverse = make_group(rest, std::move(transverse), full.sources);
    return out;
}

std::size_t stabilizer_dim(const Face& f, std::size_t n) {
    if (f.r() + f.dim < n) fail(ErrorKind::Internal, "face with r_F < n - p");
    return f.r() + f.dim - n;
}

GroupStructure group_structure(const GroupDescriptor& g) {
    GroupStructure s;
    const std::size_t k = g.generators.size();
    if (k == 0) return s;
    std::vector<std::size_t> rows(g.support.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    auto relations = integer_relations(g.generators, {}, rows);
    Matrix<Integer> m(k, relations.size());
    for (std::size_t c = 0; c < relations.size(); ++c)
        for (std::size_t r = 0; r < k; ++r) m(r, c) = relations[c][r];
    s.free_rank = k - relations.size();
    for (const auto& t : smith_invariants(m))
        if (t > 1) s.torsion.push_back(t);
    return s;
}

}  // namespace strata
