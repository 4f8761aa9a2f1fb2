#include "strata/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "strata/groups.hpp"

namespace strata {

using nlohmann::json;

namespace {

struct Writer {
    const std::vector<std::string>& names;

    json scalar(const Scalar& s) const { return s.to_string(names); }
    json vec(const ScalarVector& v) const {
        json out = json::array();
        for (const auto& s : v) out.push_back(scalar(s));
        return out;
    }
    json rows(const std::vector<ScalarVector>& m) const {
        json out = json::array();
        for (const auto& v : m) out.push_back(vec(v));
        return out;
    }
    json matrix(const Matrix<Scalar>& m) const {
        json out = json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec(m.row(r)));
        return out;
    }
};

std::string label(const IndexSet& s) { return format_index_set(s); }

json group(const Writer& w, const GroupDescriptor& g) {
    auto st = group_structure(g);
    json torsion = json::array();
    for (const auto& t : st.torsion) torsion.push_back(t.str());
    json sources = json::array();
    for (auto k : g.sources) sources.push_back(k + 1);
    return {{"support", label(g.support)},
            {"effective_support", label(g.effective_support())},
            {"generators", w.rows(g.generators)},
            {"presentation", w.rows(g.presentation)},
            {"sources", sources},
            {"structure", st.describe()},
            {"free_rank", st.free_rank},
            {"torsion", torsion}};
}

json link_json(const Writer& w, const LinkNode& node) {
    const auto& lp = node.link.polytope;
    json chain = json::array();
    for (const auto& c : node.chain) chain.push_back(label(c));
    json transfer = json::array();
    for (const auto& e : node.link.transfer)
        transfer.push_back({{"labels", label(e.labels)}, {"dim", e.dim}, {"singular", e.singular}});
    json children = json::array();
    for (const auto& c : node.children) children.push_back(link_json(w, c));
    const auto& f = node.fibration;
    return {{"labels", label(node.labels)},
            {"chain", chain},
            {"face_dim", node.face_dim},
            {"depth", node.depth},
            {"b", w.vec(node.section.b)},
            {"epsilon", node.section.epsilon.str()},
            {"link",
             {{"dimension", lp.n},
              {"normals", w.rows(lp.normals)},
              {"offsets", w.vec(lp.offsets)},
              {"f_vector", node.link.lattice.f_vector()},
              {"simple", is_simple(node.link.lattice)},
              {"transfer", transfer}}},
            {"fibration",
             {{"rank", f.rank},
              {"expected_rank", f.expected_rank},
              {"direct_sum", f.direct_sum},
              {"annihilates_link", f.annihilates_link},
              {"fiber_closed", f.fiber_closed},
              {"y_tilde", w.vec(f.y_tilde)}}},
            {"children", children}};
}

template <class F>
bool all_nodes(const std::vector<LinkNode>& forest, F&& pred) {
    for (const auto& n : forest)
        if (!pred(n) || !all_nodes(n.children, pred)) return false;
    return true;
}

void collect_warnings(const std::vector<LinkNode>& forest, const ParamRegistry& reg, std::vector<std::string>& out) {
    for (const auto& n : forest) {
        IndexSet large;
        for (std::size_t t = 0; t < n.section.b.size(); ++t)
            if (sign_at(n.section.b[t] - Scalar(1), reg) > 0) large.push_back(n.labels[t]);
        if (!large.empty())
            out.push_back("link of " + label(n.labels) + ": b_j > 1 for j in " + label(large));
        collect_warnings(n.children, reg, out);
    }
}

}  // namespace

std::vector<std::string> warnings(const Analysis& a) {
    std::vector<std::string> out;
    collect_warnings(a.forest, a.spec.reg, out);
    return out;
}

std::set<Section> parse_sections(const std::vector<std::string>& names) {
    std::set<Section> out;
    const std::set<Section> every{Section::Faces, Section::Charts, Section::Groups, Section::Links, Section::Verify};
    for (const auto& n : names) {
        if (n == "all") out = every;
        else if (n == "faces") out.insert(Section::Faces);
        else if (n == "charts") out.insert(Section::Charts);
        else if (n == "groups") out.insert(Section::Groups);
        else if (n == "links") out.insert(Section::Links);
        else if (n == "verify") out.insert(Section::Verify);
        else fail(ErrorKind::Parse, "unknown section '" + n + "'");
    }
    return out.empty() ? every : out;
}

bool Analysis::passed() const {
    for (const auto& r : residuals)
        if (!r.passed()) return false;
    if (has(Section::Verify) &&
        !(exact.reconstruction && exact.kernel_annihilated && exact.lambda_identity && exact.slack_positive))
        return false;
    return all_nodes(forest, [](const LinkNode& n) { return n.fibration.direct_sum && n.fibration.annihilates_link; });
}

Analysis analyze(ProblemSpec spec, std::set<Section> sections) {
    Analysis a;
    a.spec = std::move(spec);
    a.sections = std::move(sections);
    const auto& p = a.spec.polytope;
    const auto& reg = a.spec.reg;
    a.lattice = build_face_lattice(p, reg);
    projection_matrix(p, reg);
    a.admissible = admissible_index_sets(p, a.lattice, reg);
    a.choice = classify_choice(p, a.spec.quasilattice, a.admissible, reg);
    if (a.has(Section::Links) || a.has(Section::Verify))
        a.forest = link_tree(p, a.lattice, link_options(a.spec.options), reg);
    if (a.has(Section::Verify)) {
        const auto& o = a.spec.options;
        a.residuals = sample_residuals(p, a.lattice, a.admissible,
                                       SampleOptions{o.samples, o.seed, o.tolerance, o.cone_tolerance}, reg);
        a.exact = exact_checks(p, a.lattice, a.admissible, reg);
    }
    return a;
}

json report_json(const Analysis& a) {
    const auto& p = a.spec.polytope;
    const auto& reg = a.spec.reg;
    const Writer w{reg.names()};
    const auto& lat = a.lattice;

    json params = json::array();
    for (std::size_t i = 0; i < reg.size(); ++i) params.push_back({{"name", reg.names()[i]}, {"value", reg.values()[i].str()}});
    json out{{"name", a.spec.name}, {"dimension", p.n}, {"constraints", p.d()}, {"parameters", params}};

    if (a.has(Section::Faces)) {
        json faces = json::array();
        for (const auto& f : lat.faces) {
            if (f.index_set.empty()) continue;
            json verts = json::array();
            for (auto v : f.vertices) verts.push_back(v + 1);
            faces.push_back({{"index_set", label(f.index_set)},
                             {"dim", f.dim},
                             {"r", f.r()},
                             {"singular", f.singular},
                             {"vertices", verts}});
        }
        json vertices = json::array();
        for (const auto& v : lat.vertices) {
            json coords = json::array();
            for (const auto& x : v.coords) coords.push_back(x.str());
            vertices.push_back({{"active", label(v.active)}, {"coords_at_point", coords}});
        }
        json strata{{"regular", 2 * p.n}};
        json singular = json::object();
        for (auto fi : lat.singular_faces()) singular[label(lat.faces[fi].index_set)] = 2 * lat.faces[fi].dim;
        strata["singular"] = singular;
        out["polytope"] = {{"normals", w.rows(p.normals)},
                           {"offsets", w.vec(p.offsets)},
                           {"f_vector", lat.f_vector()},
                           {"simple", is_simple(lat)},
                           {"faces", faces},
                           {"vertices", vertices}};
        out["strata"] = strata;
        out["classification"] = {{"rational", a.choice.rational}, {"delzant_like", a.choice.delzant_like}};
    }

    if (a.has(Section::Charts)) {
        json charts = json::array();
        for (const auto& I : a.admissible.all) {
            auto data = adapted_kernel_basis(p, lat, I, std::nullopt, reg);
            json psi = json::array();
            for (const auto& e : psi_equations(p, data)) psi.push_back({{"coeff", w.vec(e.coeff)}, {"constant", w.scalar(e.constant)}});
            auto pi1 = chart_pi1_rank(p, data, reg);
            charts.push_back({{"I", label(I)},
                              {"vertex", label(lat.vertices[data.vertex].active)},
                              {"A", w.matrix(data.A)},
                              {"kernel", w.rows(data.kernel)},
                              {"psi", psi},
                              {"ell", pi1.ell},
                              {"I_star", label(pi1.I_star)}});
        }
        out["charts"] = charts;
    }

    if (a.has(Section::Groups)) {
        json gamma = json::array();
        for (const auto& I : a.admissible.all) gamma.push_back({{"I", label(I)}, {"group", group(w, gamma_group(p, a.spec.quasilattice, I, reg))}});
        json faces = json::array();
        for (auto fi : lat.singular_faces()) {
            const Face& f = lat.faces[fi];
            json splits = json::array();
            for (const auto& I : a.admissible.all) {
                if (set_intersection(I, f.index_set).size() != p.n - f.dim) continue;
                GammaSplit s;
                try {
                    s = split_gamma(p, a.spec.quasilattice, lat, fi, I, reg);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::Validation) throw;
                    continue;
                }
                json epi = json::array();
                for (const auto& [t, o] : s.epimorphism) epi.push_back({{"transverse", w.vec(t)}, {"on_face", w.vec(o)}});
                splits.push_back({{"I", label(I)},
                                  {"on_face", group(w, s.on_face)},
                                  {"transverse", group(w, s.transverse)},
                                  {"epimorphism", epi}});
            }
            faces.push_back({{"face", label(f.index_set)}, {"stabilizer_dim", stabilizer_dim(f, p.n)}, {"splits", splits}});
        }
        out["groups"] = {{"gamma", gamma}, {"singular_faces", faces}};
    }

    if (a.has(Section::Links)) {
        json forest = json::array();
        for (const auto& n : a.forest) forest.push_back(link_json(w, n));
        out["links"] = {{"forest", forest},
                        {"depth", tree_depth(a.forest)},
                        {"leaves_simple", leaves_simple(a.forest)},
                        {"warnings", warnings(a)}};
    }

    if (a.has(Section::Verify)) {
        json residuals = json::object();
        for (const auto& r : a.residuals)
            residuals[r.name] = {{"max", round_significant(r.max)},
                                 {"samples", r.samples},
                                 {"expected", r.expected},
                                 {"tolerance", r.tolerance},
                                 {"passed", r.passed()}};
        out["verification"] = {
            {"residuals", residuals},
            {"seed", a.spec.options.seed},
            {"exact",
             {{"reconstruction", a.exact.reconstruction},
              {"kernel_annihilated", a.exact.kernel_annihilated},
              {"lambda_identity", a.exact.lambda_identity},
              {"slack_positive", a.exact.slack_positive}}},
            {"links",
             {{"transfer", true},
              {"direct_sum", all_nodes(a.forest, [](const LinkNode& n) { return n.fibration.direct_sum; })},
              {"annihilates_link", all_nodes(a.forest, [](const LinkNode& n) { return n.fibration.annihilates_link; })},
              {"leaves_simple", leaves_simple(a.forest)}}},
            {"passed", a.passed()}};
    }
    return out;
}

std::string report_text(const Analysis& a) { return report_json(a).dump(2) + "\n"; }

std::string dot_graph(const Analysis& a) {
    const auto& lat = a.lattice;
    std::ostringstream os;
    os << "digraph strata {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < lat.faces.size(); ++i) {
        const Face& f = lat.faces[i];
        os << "  f" << i << " [label=\"{" << label(f.index_set) << "} p=" << f.dim << "\"";
        if (f.singular) os << ", style=filled, fillcolor=lightcoral";
        os << "];\n";
    }
    for (std::size_t i = 0; i < lat.faces.size(); ++i)
        for (std::size_t j = 0; j < lat.faces.size(); ++j)
            if (lat.faces[j].dim == lat.faces[i].dim + 1 && lat.leq(i, j)) os << "  f" << i << " -> f" << j << ";\n";
    std::size_t counter = 0;
    auto emit = [&](auto&& self, const LinkNode& n, const std::string& parent) -> void {
        const std::string id = "l" + std::to_string(counter++);
        os << "  " << id << " [shape=ellipse, label=\"link {" << label(n.labels) << "} dim " << n.link.polytope.n << "\"];\n";
        os << "  " << parent << " -> " << id << " [style=dashed];\n";
        for (const auto& c : n.children) self(self, c, id);
    };
    for (const auto& n : a.forest) emit(emit, n, "f" + std::to_string(*lat.find(n.labels)));
    os << "}\n";
    return os.str();
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return 2;
        case ErrorKind::Validation:
        case ErrorKind::Domain: return 3;
        default: return 4;
    }
}

std::string kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Verification: return "verification";
        default: return "internal";
    }
}

json error_json(const Error& e) {
    return {{"error", kind_name(e.kind())}, {"message", e.what()}, {"exit_code", exit_code(e.kind())}};
}

double round_significant(double x, int digits) {
    if (x == 0 || !std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return std::strtod(buf, nullptr);
}

}  // namespace strata
