#include "strata/charts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "strata/error.hpp"
#include "strata/lp.hpp"

namespace strata {

namespace {

RealMatrix to_doubles(const Matrix<Scalar>& m, const ParamRegistry& reg) {
    RealMatrix out(m.rows(), RealVector(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = evaluate_double(m(r, c), reg);
    return out;
}

Scalar exact_slack(const HPolytope& p, const AdaptedBasisData& data, std::size_t r) {
    Scalar s = -p.offsets[r];
    for (std::size_t i = 0; i < data.I.size(); ++i) s += data.A(i, r) * p.offsets[data.I[i]];
    return s;
}

DomainConstraint make_constraint(const AdaptedBasisData& data, std::size_t index, const IndexSet& support,
                                 Scalar constant, const ParamRegistry& reg) {
    DomainConstraint c;
    c.index = index;
    c.support = support;
    for (std::size_t h : support) {
        c.coeff.push_back(data.a(h, index));
        c.coeff_value.push_back(evaluate_double(c.coeff.back(), reg));
    }
    c.constant = std::move(constant);
    c.constant_value = evaluate_double(c.constant, reg);
    return c;
}

void check_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        fail(ErrorKind::Validation, std::string(what) + " has " + std::to_string(got) + " coordinates, expected " +
                                        std::to_string(want));
}

std::vector<DomainConstraint> slice_domain(const HPolytope& p, const FaceLattice& lat, const AdaptedBasisData& data,
                                           const IndexSet& support, const ParamRegistry& reg) {
    const IndexSet& I_mu = lat.vertices[data.vertex].active;
    const IndexSet I_F = data.face ? lat.faces[*data.face].index_set : IndexSet{};
    std::vector<DomainConstraint> out;
    for (std::size_t j = 0; j < p.d(); ++j) {
        if (contains(data.I, j) || contains(I_F, j)) continue;
        Scalar constant = contains(I_mu, j) ? Scalar() : exact_slack(p, data, j);
        out.push_back(make_constraint(data, j, support, std::move(constant), reg));
    }
    return out;
}

double squared(const Complex& z) { return std::norm(z); }

}  // namespace

double DomainConstraint::radicand(const AmbientPoint& z) const {
    double s = constant_value;
    for (std::size_t i = 0; i < support.size(); ++i) s += coeff_value[i] * squared(z[support[i]]);
    return s;
}

double max_abs(const RealVector& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

ChartFrame chart_frame(const HPolytope& p, const FaceLattice& lat, const AdaptedBasisData& data,
                       const ParamRegistry& reg) {
    ChartFrame f;
    f.n = p.n;
    f.I = data.I;
    f.I_mu = lat.vertices[data.vertex].active;
    if (data.face) f.I_F = lat.faces[*data.face].index_set;
    f.J = data.J;
    for (const auto& x : p.normals) {
        RealVector row;
        for (const auto& s : x) row.push_back(evaluate_double(s, reg));
        f.normals.push_back(std::move(row));
    }
    for (const auto& l : p.offsets) f.lambda.push_back(evaluate_double(l, reg));
    f.a = to_doubles(data.A, reg);

    Matrix<Scalar> basis(p.n, p.n), id(p.n, p.n);
    for (std::size_t c = 0; c < p.n; ++c) {
        id(c, c) = Scalar(1);
        for (std::size_t r = 0; r < p.n; ++r) basis(r, c) = p.normals[data.I[c]][r];
    }
    auto inv = solve(basis, id, scalar_pivot(reg));
    if (!inv) fail(ErrorKind::Internal, "chart basis is singular");
    f.basis_inverse = to_doubles(*inv, reg);

    for (const auto& v : data.kernel) {
        RealVector row;
        for (const auto& s : v) row.push_back(evaluate_double(s, reg));
        f.kernel.push_back(std::move(row));
    }
    f.face_block = data.face_block;
    f.slack.assign(p.d(), 0.0);
    for (std::size_t r = 0; r < p.d(); ++r)
        if (!contains(f.I_mu, r)) f.slack[r] = evaluate_double(exact_slack(p, data, r), reg);
    return f;
}

MomentValues moment_values(const ChartFrame& f, const AmbientPoint& z) {
    check_size(z.size(), f.d(), "point");
    MomentValues m;
    for (std::size_t j = 0; j < f.d(); ++j) m.upsilon.push_back(squared(z[j]) + f.lambda[j]);
    for (const auto& v : f.kernel) {
        double s = 0;
        for (std::size_t j = 0; j < f.d(); ++j) s += v[j] * m.upsilon[j];
        m.psi.push_back(s);
    }
    m.phi.assign(f.n, 0.0);
    for (std::size_t r = 0; r < f.n; ++r)
        for (std::size_t i = 0; i < f.n; ++i) m.phi[r] += f.basis_inverse[i][r] * m.upsilon[f.I[i]];
    return m;
}

AmbientPoint lift_point(const ChartFrame& f, const RealVector& mu, double tol) {
    check_size(mu.size(), f.n, "moment point");
    AmbientPoint z(f.d());
    for (std::size_t j = 0; j < f.d(); ++j) {
        double s = -f.lambda[j];
        for (std::size_t i = 0; i < f.n; ++i) s += mu[i] * f.normals[j][i];
        if (s < -tol) fail(ErrorKind::Domain, "point lies outside the polytope at constraint " + std::to_string(j + 1));
        z[j] = std::sqrt(std::max(s, 0.0));
    }
    return z;
}

AmbientPoint lift_point(const HPolytope& p, const RationalVector& mu, const ParamRegistry& reg) {
    check_size(mu.size(), p.n, "moment point");
    AmbientPoint z(p.d());
    for (std::size_t j = 0; j < p.d(); ++j) {
        Rational s = -evaluate_at(p.offsets[j], reg);
        for (std::size_t i = 0; i < p.n; ++i) s += mu[i] * evaluate_at(p.normals[j][i], reg);
        if (s < 0) fail(ErrorKind::Domain, "point lies outside the polytope at constraint " + std::to_string(j + 1));
        z[j] = std::sqrt(to_double(s));
    }
    return z;
}

RegularChartData regular_chart(const HPolytope& p, const FaceLattice& lat, const IndexSet& I,
                               const ParamRegistry& reg) {
    auto data = adapted_kernel_basis(p, lat, I, std::nullopt, reg);
    RegularChartData c;
    c.frame = chart_frame(p, lat, data, reg);
    c.domain = slice_domain(p, lat, data, I, reg);
    c.pi1 = chart_pi1_rank(p, data, reg);
    return c;
}

AmbientPoint regular_slice(const RegularChartData& c, const std::vector<Complex>& u, double margin) {
    const ChartFrame& f = c.frame;
    check_size(u.size(), f.n, "chart point");
    AmbientPoint z(f.d());
    for (std::size_t i = 0; i < f.n; ++i) z[f.I[i]] = u[i];
    for (const auto& con : c.domain) {
        double s = con.radicand(z);
        if (s <= margin)
            fail(ErrorKind::Domain, "point outside the chart domain: inequality for index " + std::to_string(con.index + 1));
        z[con.index] = std::sqrt(s);
    }
    return z;
}

Pi1Rank pi1_rank(const std::vector<RationalVector>& rows, const RationalVector& slack) {
    Pi1Rank out;
    if (rows.empty()) return out;
    const std::size_t m = rows.front().size();
    for (std::size_t h = 0; h < m; ++h) {
        // variables: rho without h, then t
        Matrix<Rational> a(rows.size() + 1, m);
        RationalVector b(rows.size() + 1), obj(m, Rational(0));
        for (std::size_t k = 0; k < rows.size(); ++k) {
            std::size_t col = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (i != h) a(k, col++) = -rows[k][i];
            a(k, m - 1) = 1;
            if (slack[k] < 0) fail(ErrorKind::Internal, "negative slack in C_I");
            b[k] = slack[k];
        }
        a(rows.size(), m - 1) = 1;
        b[rows.size()] = 1;
        obj[m - 1] = 1;
        auto r = maximize(a, b, obj);
        if (r.status == LpResult::Status::Optimal && r.value == 0) out.I_star.push_back(h);
    }
    out.ell = out.I_star.size();
    return out;
}

Pi1Rank chart_pi1_rank(const HPolytope& p, const AdaptedBasisData& data, const ParamRegistry& reg) {
    std::vector<RationalVector> rows;
    RationalVector slack;
    for (std::size_t k : data.pivot) {
        RationalVector row;
        for (std::size_t h : data.I) row.push_back(evaluate_at(data.a(h, k), reg));
        rows.push_back(std::move(row));
        slack.push_back(evaluate_at(exact_slack(p, data, k), reg));
    }
    // slack vanishes exactly on I_mu
    Pi1Rank local = pi1_rank(rows, slack);
    Pi1Rank out;
    for (std::size_t i : local.I_star) out.I_star.push_back(data.I[i]);
    out.ell = out.I_star.size();
    return out;
}

SingularChartData singular_chart(const HPolytope& p, const FaceLattice& lat, std::size_t face, const IndexSet& I,
                                 const ParamRegistry& reg) {
    if (!lat.faces.at(face).singular) fail(ErrorKind::Validation, "singular chart requested for a regular face");
    auto data = adapted_kernel_basis(p, lat, I, face, reg);
    SingularChartData c;
    c.frame = chart_frame(p, lat, data, reg);
    c.face = face;
    c.transverse = set_difference(I, data.J);
    c.domain = slice_domain(p, lat, data, c.transverse, reg);
    return c;
}

AmbientPoint singular_slice(const SingularChartData& c, const std::vector<Complex>& w, double margin) {
    const ChartFrame& f = c.frame;
    check_size(w.size(), c.transverse.size(), "slice point");
    AmbientPoint z(f.d());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (squared(w[i]) <= margin) fail(ErrorKind::Domain, "slice point has a zero coordinate");
        z[c.transverse[i]] = w[i];
    }
    for (const auto& con : c.domain) {
        double s = con.radicand(z);
        if (s <= margin)
            fail(ErrorKind::Domain, "point outside the slice domain: inequality for index " + std::to_string(con.index + 1));
        z[con.index] = std::sqrt(s);
    }
    return z;
}

RealVector torus_exponents(const ChartFrame& f, const RealVector& X) {
    check_size(X.size(), f.n, "Lie algebra element");
    RealVector c(f.n, 0.0);
    for (std::size_t i = 0; i < f.n; ++i)
        for (std::size_t k = 0; k < f.n; ++k) c[i] += f.basis_inverse[i][k] * X[k];
    return c;
}

AmbientPoint torus_action(const ChartFrame& f, const RealVector& X, const AmbientPoint& z) {
    check_size(z.size(), f.d(), "point");
    RealVector c = torus_exponents(f, X);
    AmbientPoint out = z;
    for (std::size_t i = 0; i < f.n; ++i) out[f.I[i]] *= std::polar(1.0, 2 * std::numbers::pi * c[i]);
    return out;
}

ConeChart cone_chart(const HPolytope& p, const FaceLattice& lat, std::size_t face, const IndexSet& I,
                     const RealVector& b, const RealVector& w0, const ParamRegistry& reg) {
    ConeChart cc;
    cc.chart = singular_chart(p, lat, face, I, reg);
    const ChartFrame& f = cc.chart.frame;
    check_size(b.size(), f.I_F.size(), "cone weights");
    check_size(w0.size(), cc.chart.transverse.size(), "base point");
    for (double x : b)
        if (!(x > 0)) fail(ErrorKind::Validation, "cone weights must be positive");
    cc.b = b;
    cc.w0 = w0;

    AmbientPoint base(f.d());
    for (std::size_t i = 0; i < w0.size(); ++i) base[cc.chart.transverse[i]] = std::sqrt(w0[i]);
    for (const auto& con : cc.chart.domain)
        if (con.radicand(base) <= 0 || std::any_of(w0.begin(), w0.end(), [](double x) { return !(x > 0); }))
            fail(ErrorKind::Domain, "base point lies outside the slice domain");

    // annular box around w0, shrunk until every corner stays in the domain
    double width = 0.5, lowest = 0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        lowest = cc.chart.domain.empty() ? 2.0 : INFINITY;
        for (const auto& con : cc.chart.domain) {
            double s = con.constant_value;
            for (std::size_t i = 0; i < con.support.size(); ++i) {
                double w = w0[row_of(cc.chart.transverse, con.support[i])];
                s += con.coeff_value[i] * w * (con.coeff_value[i] >= 0 ? 1 - width : 1 + width);
            }
            lowest = std::min(lowest, s);
        }
        if (lowest > 0) break;
        width /= 2;
    }
    if (!(lowest > 0)) fail(ErrorKind::Internal, "no neighborhood of the base point fits the slice domain");
    for (double w : w0) cc.box.emplace_back(w * (1 - width), w * (1 + width));
    cc.c = lowest / 2;

    double worst = 0;
    for (const auto& con : cc.chart.domain) {
        double s = 0;
        for (std::size_t h : f.J) {
            double a = f.coeff(h, con.index);
            if (a < 0) s += -a / b[row_of(f.I_F, h)];
        }
        worst = std::max(worst, s);
    }
    cc.epsilon_unconstrained = worst == 0;
    cc.epsilon = worst == 0 ? 1.0 : cc.c / worst;
    return cc;
}

ConeMoment moment_map_cone(const ChartFrame& f, const std::vector<Complex>& zF) {
    check_size(zF.size(), f.I_F.size(), "cone point");
    ConeMoment m;
    for (std::size_t k = 0; k < f.face_block; ++k) {
        double s = 0;
        for (std::size_t i = 0; i < f.I_F.size(); ++i) s += f.kernel[k][f.I_F[i]] * squared(zF[i]);
        m.psi.push_back(s);
    }
    for (std::size_t h : f.J) m.phi.push_back(squared(zF[row_of(f.I_F, h)]) + f.lambda[h]);
    return m;
}

AmbientPoint cone_embedding(const ConeChart& c, const std::vector<Complex>& w, const std::vector<Complex>& zF,
                            double tol) {
    const ChartFrame& f = c.chart.frame;
    check_size(w.size(), c.chart.transverse.size(), "slice point");
    for (std::size_t i = 0; i < w.size(); ++i) {
        double m = squared(w[i]);
        if (!(m > c.box[i].first && m < c.box[i].second))
            fail(ErrorKind::Domain, "slice point leaves the neighborhood at index " +
                                            std::to_string(c.chart.transverse[i] + 1));
    }
    ConeMoment cm = moment_map_cone(f, zF);
    if (max_abs(cm.psi) > tol) fail(ErrorKind::Domain, "cone point is off the zero level of the face moment map");
    double level = 0;
    for (std::size_t i = 0; i < zF.size(); ++i) level += c.b[i] * squared(zF[i]);
    if (!(level < c.epsilon)) fail(ErrorKind::Domain, "cone point lies outside the epsilon ball");

    AmbientPoint z(f.d());
    for (std::size_t i = 0; i < zF.size(); ++i) z[f.I_F[i]] = zF[i];
    for (std::size_t i = 0; i < w.size(); ++i) z[c.chart.transverse[i]] = w[i];
    for (const auto& con : c.chart.domain) {
        double s = con.radicand(z);
        for (std::size_t h : f.J) s += f.coeff(h, con.index) * squared(z[h]);
        if (!(s > 0)) fail(ErrorKind::Internal, "cone embedding radicand is not positive");
        z[con.index] = std::sqrt(s);
    }
    return z;
}

std::size_t singular_domain_dimension(const SingularChartData& c) { return 2 * c.transverse.size(); }

}  // namespace strata
