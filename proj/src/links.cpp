#include "strata/links.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "strata/error.hpp"

namespace strata {

namespace {

Scalar dot(const ScalarVector& a, const ScalarVector& b) {
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

std::string show(const IndexSet& I) {
    std::string s = "{";
    for (std::size_t i = 0; i < I.size(); ++i) s += (i ? "," : "") + std::to_string(I[i] + 1);
    return s + "}";
}

IndexSet relabel(const IndexSet& local, const std::vector<std::size_t>& names) {
    IndexSet out;
    for (std::size_t i : local) out.push_back(names[i]);
    std::sort(out.begin(), out.end());
    return out;
}

struct Built {
    ConeSection section;
    LinkPolytope link;
};

Built try_candidates(const HPolytope& p, const FaceLattice& lat, std::size_t face,
                     const std::vector<ScalarVector>& candidates, const Rational& eps, const ParamRegistry& reg) {
    std::string last;
    for (const auto& b : candidates) {
        try {
            Built out;
            out.section = cone_section(p, lat, face, b, eps, reg);
            out.link = link_polytope(out.section, p, lat, reg);
            return out;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Validation) throw;
            last = e.what();
        }
    }
    fail(ErrorKind::Validation, "no valid cone section for face " + show(lat.faces[face].index_set) + ": " + last);
}

LinkNode build(const HPolytope& p, const FaceLattice& lat, const AdmissibleSets& adm, std::size_t face,
               const std::vector<std::size_t>& names, std::vector<IndexSet> chain, std::size_t depth,
               const LinkOptions& opts, const ParamRegistry& reg) {
    const Face& f = lat.faces.at(face);
    LinkNode node;
    node.labels = relabel(f.index_set, names);
    chain.push_back(node.labels);
    node.chain = chain;
    node.face_dim = f.dim;
    node.depth = depth;

    std::vector<ScalarVector> candidates;
    auto override_b = opts.b.find(node.labels);
    if (depth == 1 && override_b != opts.b.end())
        candidates.push_back(override_b->second);
    else
        candidates = b_candidates(f.index_set.size());
    Built built = try_candidates(p, lat, face, candidates, opts.epsilon, reg);
    node.section = std::move(built.section);
    node.link = std::move(built.link);
    node.fibration = fibration_data(p, lat, adm, face, node.section, node.link, reg);

    std::vector<std::size_t> child_names;
    for (std::size_t j : f.index_set) child_names.push_back(names[j]);
    const auto& ll = node.link.lattice;
    auto singular = ll.singular_faces();
    if (!singular.empty()) {
        auto child_adm = admissible_index_sets(node.link.polytope, ll, reg);
        for (std::size_t g : singular)
            node.children.push_back(
                build(node.link.polytope, ll, child_adm, g, child_names, chain, depth + 1, opts, reg));
    }
    return node;
}

void collect_depth(const LinkNode& n, std::size_t& best) {
    best = std::max(best, n.depth);
    for (const auto& c : n.children) collect_depth(c, best);
}

bool simple_leaves(const LinkNode& n) {
    if (n.leaf()) return is_simple(n.link.lattice);
    return std::all_of(n.children.begin(), n.children.end(), simple_leaves);
}

}  // namespace

ConeSection cone_section(const HPolytope& p, const FaceLattice& lat, std::size_t face, const ScalarVector& b,
                         const Rational& epsilon, const ParamRegistry& reg) {
    const Face& f = lat.faces.at(face);
    if (!f.singular) fail(ErrorKind::Validation, "cone section requested for the regular face " + show(f.index_set));
    if (b.size() != f.index_set.size())
        fail(ErrorKind::Validation, "b has " + std::to_string(b.size()) + " entries, face " + show(f.index_set) +
                                        " needs " + std::to_string(f.index_set.size()));
    for (const auto& x : b)
        if (sign_at(x, reg) <= 0) fail(ErrorKind::Validation, "b coefficients must be positive");
    if (epsilon <= 0) fail(ErrorKind::Validation, "epsilon must be positive");

    ConeSection s;
    s.face = face;
    s.I_F = f.index_set;
    s.p = f.dim;
    s.b = b;
    s.epsilon = epsilon;
    const std::size_t m = p.n - f.dim;

    std::vector<ScalarVector> chosen;
    for (std::size_t j : s.I_F) {
        auto trial = chosen;
        trial.push_back(p.normals[j]);
        if (rank(Matrix<Scalar>::from_columns(trial, p.n), scalar_pivot(reg)) == trial.size()) {
            chosen = std::move(trial);
            s.basis.push_back(j);
        }
    }
    if (chosen.size() != m) fail(ErrorKind::Internal, "normals of " + show(s.I_F) + " do not span n - p dimensions");

    // normal equations of the full column rank basis
    Matrix<Scalar> gram(m, m), rhs(m, s.I_F.size());
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t c = 0; c < m; ++c) gram(a, c) = dot(chosen[a], chosen[c]);
        for (std::size_t t = 0; t < s.I_F.size(); ++t) rhs(a, t) = dot(chosen[a], p.normals[s.I_F[t]]);
    }
    auto coords = solve(gram, rhs, scalar_pivot(reg));
    if (!coords) fail(ErrorKind::Internal, "singular Gram matrix");
    s.c = *coords;
    for (std::size_t t = 0; t < s.I_F.size(); ++t)
        for (std::size_t i = 0; i < p.n; ++i) {
            Scalar v;
            for (std::size_t h = 0; h < m; ++h) v += s.c(h, t) * chosen[h][i];
            if (v != p.normals[s.I_F[t]][i]) fail(ErrorKind::Internal, "face normals leave the span of the basis");
        }

    s.y.assign(m, Scalar());
    s.level = Scalar(epsilon);
    for (std::size_t t = 0; t < s.I_F.size(); ++t) {
        s.level += p.offsets[s.I_F[t]] * b[t];
        for (std::size_t h = 0; h < m; ++h) s.y[h] += b[t] * s.c(h, t);
    }
    std::size_t q = m;
    for (std::size_t h = 0; h < m && q == m; ++h)
        if (sign_at(s.y[h], reg) != 0) q = h;
    if (q == m) fail(ErrorKind::Validation, "section direction vanishes");
    s.xi0.assign(m, Scalar());
    s.xi0[q] = s.level / s.y[q];
    for (std::size_t k = 0; k < m; ++k) {
        if (k == q) continue;
        ScalarVector w(m, Scalar());
        w[k] = Scalar(1);
        w[q] = -(s.y[k] / s.y[q]);
        s.ann.push_back(std::move(w));
    }
    return s;
}

LinkPolytope link_polytope(const ConeSection& s, const HPolytope& p, const FaceLattice& lat,
                           const ParamRegistry& reg) {
    LinkPolytope out;
    HPolytope& lp = out.polytope;
    lp.n = s.ann.size();
    const std::size_t m = s.y.size();
    for (std::size_t t = 0; t < s.I_F.size(); ++t) {
        ScalarVector normal;
        for (const auto& w : s.ann) {
            Scalar v;
            for (std::size_t h = 0; h < m; ++h) v += s.c(h, t) * w[h];
            normal.push_back(std::move(v));
        }
        Scalar offset = p.offsets[s.I_F[t]];
        for (std::size_t h = 0; h < m; ++h) offset -= s.c(h, t) * s.xi0[h];
        lp.normals.push_back(std::move(normal));
        lp.offsets.push_back(std::move(offset));
    }
    out.lattice = build_face_lattice(lp, reg);

    std::size_t above = 0;
    for (const auto& g : lat.faces)
        if (g.index_set.size() < s.I_F.size() && is_subset(g.index_set, s.I_F)) ++above;
    if (above != out.lattice.faces.size())
        fail(ErrorKind::Verification, "link of " + show(s.I_F) + " has " + std::to_string(out.lattice.faces.size()) +
                                          " faces, expected " + std::to_string(above));

    for (std::size_t i = 0; i < out.lattice.faces.size(); ++i) {
        const Face& lf = out.lattice.faces[i];
        TransferEntry e;
        e.link_face = i;
        e.labels = relabel(lf.index_set, s.I_F);
        auto g = lat.find(e.labels);
        if (!g) fail(ErrorKind::Verification, "link face " + show(e.labels) + " has no counterpart");
        const Face& G = lat.faces[*g];
        if (G.dim != lf.dim + s.p + 1)
            fail(ErrorKind::Verification, "link face " + show(e.labels) + " has the wrong dimension");
        if (G.singular != lf.singular)
            fail(ErrorKind::Verification, "singularity of link face " + show(e.labels) + " disagrees with the polytope");
        e.parent_face = *g;
        e.dim = lf.dim;
        e.singular = lf.singular;
        out.transfer.push_back(std::move(e));
    }
    return out;
}

FibrationData fibration_data(const HPolytope& p, const FaceLattice& lat, const AdmissibleSets& adm, std::size_t face,
                             const ConeSection& s, const LinkPolytope& link, const ParamRegistry& reg) {
    FibrationData fd;
    const Face& f = lat.faces.at(face);
    auto flag = flag_index_set(lat, adm, face);
    auto data = adapted_kernel_basis(p, lat, flag.second, face, reg);

    fd.y_tilde.assign(p.d(), Scalar());
    for (std::size_t t = 0; t < s.I_F.size(); ++t) fd.y_tilde[s.I_F[t]] = s.b[t];
    fd.augmented.assign(data.kernel.begin(), data.kernel.begin() + static_cast<std::ptrdiff_t>(data.face_block));
    fd.augmented.push_back(fd.y_tilde);
    fd.rank = rank(Matrix<Scalar>::from_columns(fd.augmented, p.d()), scalar_pivot(reg));
    fd.expected_rank = f.r() + f.dim + 1 - p.n;
    fd.direct_sum = fd.rank == fd.expected_rank && data.face_block + 1 == fd.expected_rank;

    fd.annihilates_link = true;
    for (const auto& v : fd.augmented)
        for (std::size_t k = 0; k < link.polytope.n; ++k) {
            Scalar sum;
            for (std::size_t t = 0; t < s.I_F.size(); ++t) sum += v[s.I_F[t]] * link.polytope.normals[t][k];
            if (!sum.is_zero()) fd.annihilates_link = false;
        }

    fd.fiber_closed = std::all_of(s.b.begin(), s.b.end(),
                                  [&](const Scalar& x) { return is_rational_constant(x / s.b.front()); });
    return fd;
}

LinkOptions link_options(const Options& o) { return LinkOptions{o.epsilon, o.b}; }

std::vector<ScalarVector> b_candidates(std::size_t r) {
    std::vector<ScalarVector> out(4, ScalarVector(r));
    for (std::size_t t = 0; t < r; ++t) {
        out[0][t] = Scalar(1);
        out[1][t] = Scalar(Rational(t + 1, r));
        out[2][t] = Scalar(Rational(r - t, r));
        out[3][t] = Scalar(t == 0 ? Rational(1) : Rational(1, 2));
    }
    return out;
}

std::vector<LinkNode> link_tree(const HPolytope& p, const FaceLattice& lat, const LinkOptions& opts,
                                const ParamRegistry& reg) {
    std::vector<LinkNode> forest;
    auto singular = lat.singular_faces();
    if (singular.empty()) return forest;
    auto adm = admissible_index_sets(p, lat, reg);
    std::vector<std::size_t> names(p.d());
    for (std::size_t j = 0; j < names.size(); ++j) names[j] = j;
    for (std::size_t f : singular) forest.push_back(build(p, lat, adm, f, names, {}, 1, opts, reg));
    return forest;
}

LinkNode link_node(const HPolytope& p, const FaceLattice& lat, std::size_t face, const LinkOptions& opts,
                   const ParamRegistry& reg) {
    auto adm = admissible_index_sets(p, lat, reg);
    std::vector<std::size_t> names(p.d());
    for (std::size_t j = 0; j < names.size(); ++j) names[j] = j;
    return build(p, lat, adm, face, names, {}, 1, opts, reg);
}

std::vector<std::tuple<IndexSet, std::size_t, bool>> labeled_faces(const LinkPolytope& link) {
    std::vector<std::tuple<IndexSet, std::size_t, bool>> out;
    for (const auto& e : link.transfer) out.emplace_back(e.labels, e.dim, e.singular);
    std::sort(out.begin(), out.end());
    return out;
}

bool section_invariance_check(const HPolytope& p, const FaceLattice& lat, std::size_t face, const ScalarVector& b,
                              const Rational& eps1, const Rational& eps2, const ParamRegistry& reg) {
    auto s1 = cone_section(p, lat, face, b, eps1, reg);
    auto s2 = cone_section(p, lat, face, b, eps2, reg);
    return labeled_faces(link_polytope(s1, p, lat, reg)) == labeled_faces(link_polytope(s2, p, lat, reg));
}

std::size_t tree_depth(const std::vector<LinkNode>& forest) {
    std::size_t best = 0;
    for (const auto& n : forest) collect_depth(n, best);
    return best;
}

bool leaves_simple(const std::vector<LinkNode>& forest) {
    return std::all_of(forest.begin(), forest.end(), simple_leaves);
}

}  // namespace strata
