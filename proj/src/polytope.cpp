#include "strata/polytope.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "strata/error.hpp"

namespace strata {

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool contains(const IndexSet& a, std::size_t j) { return std::binary_search(a.begin(), a.end(), j); }

std::vector<IndexSet> subsets_of(const IndexSet& s, std::size_t k) {
    std::vector<IndexSet> out;
    if (k > s.size()) return out;
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = i;
    for (;;) {
        IndexSet sub(k);
        for (std::size_t i = 0; i < k; ++i) sub[i] = s[pos[i]];
        out.push_back(std::move(sub));
        std::size_t i = k;
        while (i > 0 && pos[i - 1] == s.size() - k + (i - 1)) --i;
        if (i == 0) break;
        ++pos[i - 1];
        for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
    return out;
}

IndexSet range_set(std::size_t d) {
    IndexSet s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = i;
    return s;
}

Matrix<Scalar> HPolytope::normal_matrix() const {
    Matrix<Scalar> m(n, d());
    for (std::size_t j = 0; j < d(); ++j) {
        if (normals[j].size() != n) fail(ErrorKind::Validation, "normal " + std::to_string(j + 1) + " has wrong length");
        for (std::size_t i = 0; i < n; ++i) m(i, j) = normals[j][i];
    }
    return m;
}

std::optional<std::size_t> FaceLattice::find(const IndexSet& index_set) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].index_set == index_set) return i;
    return std::nullopt;
}

bool FaceLattice::leq(std::size_t f, std::size_t g) const { return is_subset(faces[g].index_set, faces[f].index_set); }

std::vector<std::size_t> FaceLattice::f_vector() const {
    std::vector<std::size_t> f(n, 0);
    for (const auto& face : faces)
        if (face.dim < n) ++f[face.dim];
    return f;
}

std::vector<std::size_t> FaceLattice::singular_faces() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].singular) out.push_back(i);
    return out;
}

std::size_t FaceLattice::vertex_face(std::size_t vertex) const {
    auto f = find(vertices.at(vertex).active);
    if (!f) fail(ErrorKind::Internal, "vertex missing from face lattice");
    return *f;
}

namespace {

struct Evaluated {
    Matrix<Rational> normals;  // n x d
    RationalVector offsets;
};

Evaluated evaluate(const HPolytope& p, const ParamRegistry& reg) {
    if (p.n == 0) fail(ErrorKind::Validation, "dimension must be positive");
    if (p.offsets.size() != p.d()) fail(ErrorKind::Validation, "number of offsets differs from number of normals");
    Evaluated e{evaluate_matrix(p.normal_matrix(), reg), {}};
    for (const auto& l : p.offsets) e.offsets.push_back(evaluate_at(l, reg));
    return e;
}

Matrix<Rational> rows_of(const Matrix<Rational>& normals, const IndexSet& rows) {
    Matrix<Rational> m(rows.size(), normals.rows());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < normals.rows(); ++c) m(i, c) = normals(c, rows[i]);
    return m;
}

Rational pairing(const Matrix<Rational>& normals, std::size_t j, const RationalVector& mu) {
    Rational s = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += mu[i] * normals(i, j);
    return s;
}

// A nonzero direction y with <y, X_j> >= 0 for every j, if one exists among
// the candidate extreme rays of the recession cone.
bool has_recession_direction(const Evaluated& e, std::size_t n) {
    const std::size_t d = e.normals.cols();
    for (const auto& sub : subsets_of(range_set(d), n - 1)) {
        auto kernel = null_space(rows_of(e.normals, sub));
        if (kernel.size() != 1) continue;
        for (int sign : {1, -1}) {
            bool ok = true;
            for (std::size_t j = 0; j < d && ok; ++j)
                if (sign * pairing(e.normals, j, kernel[0]) < 0) ok = false;
            if (ok) return true;
        }
    }
    return false;
}

std::size_t affine_dimension(const std::vector<Vertex>& vertices, const std::vector<std::size_t>& which) {
    if (which.size() <= 1) return 0;
    const std::size_t n = vertices[which[0]].coords.size();
    Matrix<Rational> m(which.size() - 1, n);
    for (std::size_t i = 1; i < which.size(); ++i)
        for (std::size_t c = 0; c < n; ++c) m(i - 1, c) = vertices[which[i]].coords[c] - vertices[which[0]].coords[c];
    return rank(m, rational_pivot());
}

}  // namespace

std::vector<Vertex> enumerate_vertices(const HPolytope& p, const ParamRegistry& reg) {
    const std::size_t n = p.n;
    const std::size_t d = p.d();
    if (d < n + 1) fail(ErrorKind::Validation, "need at least n+1 constraints");
    Evaluated e = evaluate(p, reg);
    if (rank(e.normals, rational_pivot()) < n) fail(ErrorKind::Validation, "polytope is unbounded (normals do not span)");
    if (has_recession_direction(e, n)) fail(ErrorKind::Validation, "polytope is unbounded");

    std::map<RationalVector, IndexSet> found;
    for (const auto& sub : subsets_of(range_set(d), n)) {
        Matrix<Rational> a = rows_of(e.normals, sub);
        Matrix<Rational> b(n, 1);
        for (std::size_t i = 0; i < n; ++i) b(i, 0) = e.offsets[sub[i]];
        auto x = solve(a, b, rational_pivot());
        if (!x) continue;
        RationalVector mu = x->column(0);
        if (found.count(mu)) continue;
        IndexSet active;
        bool feasible = true;
        for (std::size_t j = 0; j < d && feasible; ++j) {
            Rational v = pairing(e.normals, j, mu);
            if (v < e.offsets[j])
                feasible = false;
            else if (v == e.offsets[j])
                active.push_back(j);
        }
        if (feasible) found.emplace(std::move(mu), std::move(active));
    }
    if (found.empty()) fail(ErrorKind::Validation, "polytope is empty");

    std::vector<Vertex> out;
    for (auto& [mu, active] : found) out.push_back(Vertex{mu, active});
    std::vector<std::size_t> all(out.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (affine_dimension(out, all) != n) fail(ErrorKind::Validation, "polytope is not full-dimensional");
    return out;
}

FaceLattice build_face_lattice(const HPolytope& p, const ParamRegistry& reg) {
    FaceLattice lat;
    lat.n = p.n;
    lat.vertices = enumerate_vertices(p, reg);

    // Face index sets are the intersections of vertex active sets.
    std::set<IndexSet> sets;
    std::vector<IndexSet> frontier;
    for (const auto& v : lat.vertices)
        if (sets.insert(v.active).second) frontier.push_back(v.active);
    while (!frontier.empty()) {
        std::vector<IndexSet> next;
        std::vector<IndexSet> current(sets.begin(), sets.end());
        for (const auto& a : frontier)
            for (const auto& b : current) {
                IndexSet c = set_intersection(a, b);
                if (sets.insert(c).second) next.push_back(std::move(c));
            }
        frontier = std::move(next);
    }

    for (const auto& s : sets) {
        Face f;
        f.index_set = s;
        for (std::size_t v = 0; v < lat.vertices.size(); ++v)
            if (is_subset(s, lat.vertices[v].active)) f.vertices.push_back(v);
        f.dim = affine_dimension(lat.vertices, f.vertices);
        lat.faces.push_back(std::move(f));
    }
    if (!lat.find(IndexSet{})) fail(ErrorKind::Validation, "some constraint is an implicit equality");
    for (auto& f : lat.faces) f.singular = classify_face(f, p.n) == FaceClass::Singular;
    std::sort(lat.faces.begin(), lat.faces.end(), [](const Face& a, const Face& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.index_set < b.index_set;
    });

    // Every constraint must cut out its own facet.
    for (std::size_t j = 0; j < p.d(); ++j) {
        auto f = lat.find(IndexSet{j});
        if (!f || lat.faces[*f].dim + 1 != p.n)
            fail(ErrorKind::Validation, "constraint " + std::to_string(j + 1) + " is redundant or duplicates another");
    }
    return lat;
}

FaceClass classify_face(const Face& f, std::size_t n) {
    if (f.dim > n || f.r() + f.dim < n) fail(ErrorKind::Internal, "face with r_F < n - p");
    return f.r() + f.dim > n ? FaceClass::Singular : FaceClass::Nonsingular;
}

bool is_simple(const FaceLattice& lattice) {
    return std::none_of(lattice.faces.begin(), lattice.faces.end(), [](const Face& f) { return f.singular; });
}

}  // namespace strata
