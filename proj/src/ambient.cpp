#include "strata/ambient.hpp"

#include <algorithm>
#include <set>

#include "strata/error.hpp"
#include "strata/linear_relations.hpp"

namespace strata {

namespace {

Matrix<Scalar> basis_matrix(const HPolytope& p, const IndexSet& I) {
    if (I.size() != p.n) fail(ErrorKind::Validation, "index set " + std::to_string(I.size()) + " has wrong size");
    Matrix<Scalar> b(p.n, p.n);
    for (std::size_t c = 0; c < I.size(); ++c)
        for (std::size_t r = 0; r < p.n; ++r) b(r, c) = p.normals.at(I[c])[r];
    return b;
}

std::string show(const IndexSet& I) {
    std::string s = "{";
    for (std::size_t i = 0; i < I.size(); ++i) s += (i ? "," : "") + std::to_string(I[i] + 1);
    return s + "}";
}

}  // namespace

Matrix<Scalar> projection_matrix(const HPolytope& p, const ParamRegistry& reg) {
    Matrix<Scalar> m = p.normal_matrix();
    if (rank(m, scalar_pivot(reg)) != p.n) fail(ErrorKind::Validation, "normals do not span at the evaluation point");
    return m;
}

AdmissibleSets admissible_index_sets(const HPolytope& p, const FaceLattice& lat, const ParamRegistry& reg) {
    AdmissibleSets adm;
    std::set<IndexSet> all;
    for (const auto& v : lat.vertices) {
        std::vector<IndexSet> here;
        for (const auto& I : subsets_of(v.active, p.n))
            if (determinant(evaluate_matrix(basis_matrix(p, I), reg)) != 0) here.push_back(I);
        if (here.empty()) fail(ErrorKind::Validation, "a vertex has no admissible index set");
        all.insert(here.begin(), here.end());
        adm.per_vertex.push_back(std::move(here));
    }
    adm.all.assign(all.begin(), all.end());
    return adm;
}

std::size_t row_of(const IndexSet& I, std::size_t h) {
    auto it = std::lower_bound(I.begin(), I.end(), h);
    if (it == I.end() || *it != h) fail(ErrorKind::Internal, "index not in basis set");
    return static_cast<std::size_t>(it - I.begin());
}

Matrix<Scalar> coordinates_in_basis(const HPolytope& p, const IndexSet& I, const std::vector<ScalarVector>& vectors,
                                    const ParamRegistry& reg) {
    Matrix<Scalar> rhs = Matrix<Scalar>::from_columns(vectors, p.n);
    auto x = solve(basis_matrix(p, I), rhs, scalar_pivot(reg));
    if (!x) fail(ErrorKind::Validation, "normals " + show(I) + " are not a basis");
    return *x;
}

Matrix<Scalar> change_of_basis(const HPolytope& p, const IndexSet& I, const ParamRegistry& reg) {
    return coordinates_in_basis(p, I, p.normals, reg);
}

std::size_t vertex_of(const FaceLattice& lat, const IndexSet& I) {
    std::optional<std::size_t> found;
    for (std::size_t v = 0; v < lat.vertices.size(); ++v)
        if (is_subset(I, lat.vertices[v].active)) {
            if (found) fail(ErrorKind::Validation, "index set " + show(I) + " is active at several vertices");
            found = v;
        }
    if (!found) fail(ErrorKind::Validation, "index set " + show(I) + " is not active at any vertex");
    return *found;
}

AdaptedBasisData adapted_kernel_basis(const HPolytope& p, const FaceLattice& lat, const IndexSet& I,
                                      std::optional<std::size_t> face, const ParamRegistry& reg) {
    AdaptedBasisData data;
    data.I = I;
    data.vertex = vertex_of(lat, I);
    data.A = change_of_basis(p, I, reg);
    data.face = face;
    const IndexSet& I_mu = lat.vertices[data.vertex].active;
    IndexSet I_F;
    if (face) {
        const Face& f = lat.faces.at(*face);
        I_F = f.index_set;
        if (!is_subset(I_F, I_mu)) fail(ErrorKind::Validation, "face does not contain the vertex of " + show(I));
        data.J = set_intersection(I, I_F);
        if (data.J.size() != p.n - f.dim)
            fail(ErrorKind::Validation, "flag condition card(I cap I_F) = n - p fails for " + show(I));
    }
    const std::size_t d = p.d();

    auto push = [&](std::size_t k, const IndexSet& over) {
        ScalarVector v(d, Scalar(0));
        v[k] = Scalar(1);
        for (std::size_t h : over) v[h] = -data.a(h, k);
        data.kernel.push_back(std::move(v));
        data.pivot.push_back(k);
    };
    for (std::size_t k : set_difference(I_F, data.J)) push(k, data.J);
    data.face_block = data.kernel.size();
    for (std::size_t l : set_difference(I_mu, set_union(I, I_F))) push(l, I);
    data.vertex_block = data.kernel.size();
    for (std::size_t r = 0; r < d; ++r)
        if (!contains(I_mu, r)) push(r, I);
    return data;
}

std::pair<std::size_t, IndexSet> flag_index_set(const FaceLattice& lat, const AdmissibleSets& adm, std::size_t face) {
    const Face& f = lat.faces.at(face);
    for (std::size_t v : f.vertices)
        for (const auto& I : adm.per_vertex[v])
            if (set_intersection(I, f.index_set).size() == lat.n - f.dim) return {v, I};
    fail(ErrorKind::Validation, "no admissible index set satisfies the flag condition for face " + show(f.index_set));
}

std::vector<PsiEquation> psi_equations(const HPolytope& p, const AdaptedBasisData& data) {
    std::vector<PsiEquation> out;
    for (const auto& v : data.kernel) {
        PsiEquation e{v, Scalar()};
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) e.constant += v[j] * p.offsets[j];
        out.push_back(std::move(e));
    }
    return out;
}

LambdaCheck check_vertex_lambda_identity(const HPolytope& p, const FaceLattice& lat, const IndexSet& I,
                                         const ParamRegistry& reg) {
    LambdaCheck out;
    const std::size_t v = vertex_of(lat, I);
    const IndexSet& I_mu = lat.vertices[v].active;
    Matrix<Scalar> A = change_of_basis(p, I, reg);
    for (std::size_t j = 0; j < p.d(); ++j) {
        if (contains(I, j)) continue;
        Scalar s;
        for (std::size_t i = 0; i < I.size(); ++i) s += A(i, j) * p.offsets[I[i]];
        if (contains(I_mu, j)) {
            if (s != p.offsets[j]) out.identity_holds = false;
        } else {
            Scalar slack = s - p.offsets[j];
            if (sign_at(slack, reg) <= 0) out.slack_positive = false;
            out.slack.emplace_back(j, std::move(slack));
        }
    }
    return out;
}

ChoiceClass classify_choice(const HPolytope& p, const Quasilattice& q, const AdmissibleSets& adm,
                            const ParamRegistry& reg) {
    ChoiceClass c;
    c.rational = rational_span_dimension(q) == p.n;
    if (!c.rational) return c;
    c.delzant_like = true;
    for (const auto& I : adm.all) {
        Matrix<Scalar> coords = coordinates_in_basis(p, I, q, reg);
        for (std::size_t r = 0; r < coords.rows() && c.delzant_like; ++r)
            for (std::size_t g = 0; g < coords.cols(); ++g) {
                const Scalar& s = coords(r, g);
                if (!is_rational_constant(s) || !is_integer(s.constant_value())) {
                    c.delzant_like = false;
                    break;
                }
            }
        if (!c.delzant_like) break;
    }
    return c;
}

}  // namespace strata
