#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "strata/charts.hpp"
#include "strata/error.hpp"
#include "support.hpp"

using namespace strata;
using namespace strata::testing;

namespace {

struct Loaded {
    ProblemSpec spec;
    FaceLattice lat;
    AdmissibleSets adm;
};

Loaded load(const char* name) {
    Loaded l{fixture(name), {}, {}};
    l.lat = build_face_lattice(l.spec.polytope, l.spec.reg);
    l.adm = admissible_index_sets(l.spec.polytope, l.lat, l.spec.reg);
    return l;
}

Loaded reload(Loaded l, std::vector<Rational> values) {
    l.spec.reg = l.spec.reg.with_values(std::move(values));
    l.lat = build_face_lattice(l.spec.polytope, l.spec.reg);
    l.adm = admissible_index_sets(l.spec.polytope, l.lat, l.spec.reg);
    return l;
}

double val(const char* text, const ParamRegistry& reg) { return evaluate_double(parse_scalar(text, reg), reg); }

RealVector vertex_point(const FaceLattice& lat, std::size_t v) {
    RealVector out;
    for (const auto& x : lat.vertices[v].coords) out.push_back(to_double(x));
    return out;
}

// Strictly positive combination of the listed vertices.
RealVector random_point(const FaceLattice& lat, const std::vector<std::size_t>& verts, std::mt19937& rng) {
    std::exponential_distribution<double> weight(1.0);
    RealVector mu(lat.n, 0.0);
    double total = 0;
    for (std::size_t v : verts) {
        double w = weight(rng) + 1e-3;
        total += w;
        auto x = vertex_point(lat, v);
        for (std::size_t i = 0; i < lat.n; ++i) mu[i] += w * x[i];
    }
    for (auto& x : mu) x /= total;
    return mu;
}

std::vector<std::size_t> all_vertices(const FaceLattice& lat) {
    std::vector<std::size_t> v(lat.vertices.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

Complex with_phase(double modulus_sq, std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    return std::polar(std::sqrt(modulus_sq), angle(rng));
}

double radicand_at(const ChartFrame& f, const RealVector& mu, std::size_t j) {
    double s = -f.lambda[j];
    for (std::size_t i = 0; i < f.n; ++i) s += mu[i] * f.normals[j][i];
    return s;
}

std::size_t face_of(const FaceLattice& lat, std::initializer_list<std::size_t> one_based) {
    auto f = lat.find(ix(one_based));
    REQUIRE(f.has_value());
    return *f;
}

// Fourier-Motzkin decision of {x >= 0, rows.x > -slack} with coordinate `drop` fixed to 0.
bool fm_feasible(std::vector<RationalVector> rows, RationalVector slack, std::size_t drop) {
    struct Ineq {
        RationalVector a;
        Rational b;  // a.x (>|>=) b
        bool strict;
    };
    const std::size_t m = rows.front().size();
    std::vector<Ineq> sys;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k][drop] = 0;
        sys.push_back({rows[k], -slack[k], true});
    }
    for (std::size_t i = 0; i < m; ++i) {
        RationalVector e(m, Rational(0));
        e[i] = 1;
        sys.push_back({e, 0, false});
    }
    for (std::size_t v = 0; v < m; ++v) {
        std::vector<Ineq> pos, neg, next;
        for (auto& q : sys) (q.a[v] > 0 ? pos : q.a[v] < 0 ? neg : next).push_back(q);
        for (const auto& p : pos)
            for (const auto& q : neg) {
                Rational sp = -q.a[v], sq = p.a[v];
                Ineq c{RationalVector(m), sp * p.b + sq * q.b, p.strict || q.strict};
                for (std::size_t i = 0; i < m; ++i) c.a[i] = sp * p.a[i] + sq * q.a[i];
                next.push_back(c);
            }
        sys = std::move(next);
    }
    for (const auto& q : sys)
        if (q.strict ? !(0 > q.b) : !(0 >= q.b)) return false;
    return true;
}

void check_regular_samples(const Loaded& l, std::mt19937& rng, int per_chart) {
    const auto verts = all_vertices(l.lat);
    std::uniform_real_distribution<double> scale(0.5, 1.5);
    for (const auto& I : l.adm.all) {
        auto chart = regular_chart(l.spec.polytope, l.lat, I, l.spec.reg);
        int accepted = 0;
        for (int attempt = 0; attempt < 20 * per_chart && accepted < per_chart; ++attempt) {
            auto mu = random_point(l.lat, verts, rng);
            std::vector<Complex> u;
            for (std::size_t h : I) u.push_back(with_phase(radicand_at(chart.frame, mu, h) * scale(rng), rng));
            AmbientPoint z;
            try {
                z = regular_slice(chart, u);
            } catch (const Error&) {
                continue;
            }
            ++accepted;
            auto m = moment_values(chart.frame, z);
            CHECK(max_abs(m.psi) <= 1e-9);
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (contains(I, j)) {
                    CHECK(z[j] == u[row_of(I, j)]);
                } else {
                    CHECK(z[j].imag() == 0);
                    CHECK(z[j].real() >= 0);
                }
            }
        }
        CHECK(accepted == per_chart);
    }
}

}  // namespace

TEST_CASE("moment values at the pyramid apex") {
    auto l = load("pyramid");
    const auto& reg = l.spec.reg;
    auto data = adapted_kernel_basis(l.spec.polytope, l.lat, ix({2, 3, 4}), std::nullopt, reg);
    auto f = chart_frame(l.spec.polytope, l.lat, data, reg);
    AmbientPoint z(5);
    z[4] = std::sqrt(val("p5", reg));
    auto m = moment_values(f, z);
    CHECK(max_abs(m.psi) <= 1e-12);
    CHECK(std::abs(m.phi[0]) <= 1e-12);
    CHECK(std::abs(m.phi[1]) <= 1e-12);
    CHECK(std::abs(m.phi[2] - 1) <= 1e-12);

    auto apex = lift_point(l.spec.polytope, l.lat.vertices[vertex_of(l.lat, ix({2, 3, 4}))].coords, reg);
    for (std::size_t j = 0; j < 4; ++j) CHECK(apex[j] == Complex(0));
    CHECK(std::abs(apex[4].real() - std::sqrt(val("p5", reg))) <= 1e-15);

    auto zero = moment_values(f, AmbientPoint(5));
    for (std::size_t j = 0; j < 5; ++j) CHECK(zero.upsilon[j] == f.lambda[j]);

    // the two displayed level-set equations, at random lifts
    std::mt19937 rng(3);
    const double p2 = val("p2", reg), p5 = val("p5", reg);
    for (int s = 0; s < 20; ++s) {
        auto w = lift_point(f, random_point(l.lat, all_vertices(l.lat), rng));
        auto r = [&](int j) { return std::norm(w[j - 1]); };
        CHECK(std::abs(r(1) - r(2) / p2 - r(4) + r(3)) <= 1e-12);
        CHECK(std::abs(r(5) + (p5 / p2) * r(2) + p5 * r(4) - p5) <= 1e-12);
    }
}

TEST_CASE("tent lift of nu1 solves the level-set equations") {
    auto l = load("tent");
    const auto& reg = l.spec.reg;
    std::size_t nu1 = vertex_of(l.lat, ix({1, 2, 3, 4, 6, 7}));
    auto z = lift_point(l.spec.polytope, l.lat.vertices[nu1].coords, reg);
    for (std::size_t j = 0; j < 9; ++j) {
        if (contains(ix({5, 8, 9}), j))
            CHECK(std::norm(z[j]) > 0);
        else
            CHECK(z[j] == Complex(0));
    }
    auto data = adapted_kernel_basis(l.spec.polytope, l.lat, ix({1, 2, 3, 6}), std::nullopt, reg);
    auto m = moment_values(chart_frame(l.spec.polytope, l.lat, data, reg), z);
    CHECK(m.psi.size() == 5);
    CHECK(max_abs(m.psi) <= 1e-12);
}

TEST_CASE("lifting vertices gives exact zeros on active constraints") {
    for (const char* name : {"pyramid", "tent", "cube", "simplex"}) {
        auto l = load(name);
        for (const auto& v : l.lat.vertices) {
            auto z = lift_point(l.spec.polytope, v.coords, l.spec.reg);
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (contains(v.active, j))
                    CHECK(z[j] == Complex(0));
                else
                    CHECK(z[j].real() > 0);
            }
        }
    }
}

TEST_CASE("lifting outside the polytope is rejected") {
    auto l = load("pyramid");
    auto data = adapted_kernel_basis(l.spec.polytope, l.lat, ix({2, 3, 4}), std::nullopt, l.spec.reg);
    auto f = chart_frame(l.spec.polytope, l.lat, data, l.spec.reg);
    CHECK_THROWS_AS(lift_point(f, RealVector{-1, 0, 0}), Error);
}

TEST_CASE("lift and moment map round trip") {
    std::mt19937 rng(11);
    for (const char* name : {"pyramid", "tent", "pyramid_unit", "tent_unit", "cube"}) {
        auto l = load(name);
        for (const auto& I : l.adm.all) {
            auto data = adapted_kernel_basis(l.spec.polytope, l.lat, I, std::nullopt, l.spec.reg);
            auto f = chart_frame(l.spec.polytope, l.lat, data, l.spec.reg);
            for (int s = 0; s < 100; ++s) {
                auto mu = random_point(l.lat, all_vertices(l.lat), rng);
                auto m = moment_values(f, lift_point(f, mu));
                CHECK(max_abs(m.psi) <= 1e-9);
                for (std::size_t i = 0; i < mu.size(); ++i) CHECK(std::abs(m.phi[i] - mu[i]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("pyramid regular slice formulas") {
    auto l = load("pyramid");
    const auto& reg = l.spec.reg;
    auto chart = regular_chart(l.spec.polytope, l.lat, ix({2, 3, 4}), reg);
    const double p2 = val("p2", reg), p5 = val("p5", reg);

    std::vector<Complex> u{{0.5, 0}, {0, 0.1}, std::polar(0.3, 1.0)};
    auto z = regular_slice(chart, u);
    CHECK(z[1] == u[0]);
    CHECK(z[2] == u[1]);
    CHECK(z[3] == u[2]);
    CHECK(std::abs(z[0].real() - std::sqrt(0.25 / p2 - 0.01 + 0.09)) <= 1e-14);
    CHECK(std::abs(z[4].real() - std::sqrt(p5 - (p5 / p2) * 0.25 - p5 * 0.09)) <= 1e-14);
    CHECK(max_abs(moment_values(chart.frame, z).psi) <= 1e-12);

    // u = (1,1,1) violates the slack inequality for index 5 at the registry point
    CHECK_THROWS_AS(regular_slice(chart, {1, 1, 1}), Error);
    // boundary of the open domain
    CHECK_THROWS_AS(regular_slice(chart, {std::sqrt(p2), 1, 0}), Error);
    CHECK(chart.domain.size() == 2);
}

TEST_CASE("regular slices land on the zero level set") {
    std::mt19937 rng(5);
    for (const char* name : {"pyramid", "tent", "cube", "simplex"}) {
        auto l = load(name);
        check_regular_samples(l, rng, 100);
    }
}

TEST_CASE("chart fundamental group rank") {
    auto py = load("pyramid");
    CHECK(regular_chart(py.spec.polytope, py.lat, ix({2, 3, 4}), py.spec.reg).pi1.ell == 0);
    auto t = load("tent");
    CHECK(regular_chart(t.spec.polytope, t.lat, ix({1, 2, 3, 6}), t.spec.reg).pi1.ell == 0);
    auto c = load("cube");
    CHECK(regular_chart(c.spec.polytope, c.lat, c.adm.all.front(), c.spec.reg).pi1.ell == 0);

    for (const auto* l : {&py, &t, &c}) {
        for (const auto& I : l->adm.all) {
            auto data = adapted_kernel_basis(l->spec.polytope, l->lat, I, std::nullopt, l->spec.reg);
            std::vector<RationalVector> rows;
            RationalVector slack;
            for (std::size_t k : data.pivot) {
                RationalVector row;
                for (std::size_t h : I) row.push_back(evaluate_at(data.a(h, k), l->spec.reg));
                rows.push_back(row);
                Rational s = -evaluate_at(l->spec.polytope.offsets[k], l->spec.reg);
                for (std::size_t i = 0; i < I.size(); ++i)
                    s += row[i] * evaluate_at(l->spec.polytope.offsets[I[i]], l->spec.reg);
                slack.push_back(s);
            }
            auto r = chart_pi1_rank(l->spec.polytope, data, l->spec.reg);
            std::size_t oracle = 0;
            for (std::size_t i = 0; i < I.size(); ++i) oracle += fm_feasible(rows, slack, i) ? 0 : 1;
            CHECK(r.ell == oracle);
        }
    }
}

TEST_CASE("pi1 rank on synthetic cones") {
    // |u_1|^2 > |u_2|^2: the punctured first coordinate carries one loop
    auto r = pi1_rank({{1, -1}}, {0});
    CHECK(r.ell == 1);
    CHECK(r.I_star == ix({1}));

    // two loops
    auto r2 = pi1_rank({{1, -1, 0}, {0, -1, 1}}, {0, 0});
    CHECK(r2.ell == 2);

    // an affine constraint with positive slack does not create loops
    CHECK(pi1_rank({{-1, -1}}, {1}).ell == 0);

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coef(-2, 2), sl(0, 2);
    int positive = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t m = 2 + trial % 3, k = 1 + trial % 3;
        std::vector<RationalVector> rows(k, RationalVector(m));
        RationalVector slack(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (auto& x : rows[i]) x = coef(rng);
            slack[i] = sl(rng);
        }
        auto got = pi1_rank(rows, slack);
        std::size_t oracle = 0;
        for (std::size_t i = 0; i < m; ++i) oracle += fm_feasible(rows, slack, i) ? 0 : 1;
        CHECK(got.ell == oracle);
        if (oracle > 0) ++positive;
    }
    CHECK(positive >= 5);
}

TEST_CASE("tent singular slice along nu1 nu2") {
    auto l = load("tent");
    const auto& reg = l.spec.reg;
    auto chart = singular_chart(l.spec.polytope, l.lat, face_of(l.lat, {1, 2, 3, 4}), ix({1, 2, 3, 6}), reg);
    CHECK(chart.transverse == ix({6}));
    auto z = singular_slice(chart, {std::sqrt(0.5)});
    const double p5 = val("p5", reg), p8 = val("p8", reg);
    CHECK(std::abs(z[4].real() - std::sqrt(p5 / 2)) <= 1e-14);
    CHECK(std::abs(z[6].real() - std::sqrt(0.5)) <= 1e-14);
    CHECK(std::abs(z[7].real() - std::sqrt(p8 / 2)) <= 1e-14);
    CHECK(std::abs(z[8].real() - 1) <= 1e-14);
    for (std::size_t j : ix({1, 2, 3, 4})) CHECK(z[j] == Complex(0));
    CHECK(max_abs(moment_values(chart.frame, z).psi) <= 1e-12);

    CHECK_THROWS_AS(singular_slice(chart, {0.0}), Error);
    CHECK_THROWS_AS(singular_slice(chart, {1.0}), Error);
    CHECK(singular_domain_dimension(chart) == 2);
}

TEST_CASE("singular slices land on the zero level set") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> scale(0.8, 1.2);
    for (const char* name : {"pyramid", "tent"}) {
        auto l = load(name);
        for (std::size_t fi : l.lat.singular_faces()) {
            const Face& face = l.lat.faces[fi];
            auto [v, I] = flag_index_set(l.lat, l.adm, fi);
            auto chart = singular_chart(l.spec.polytope, l.lat, fi, I, l.spec.reg);
            CHECK(singular_domain_dimension(chart) == 2 * face.dim);
            int accepted = 0;
            for (int attempt = 0; attempt < 2000 && accepted < 100; ++attempt) {
                auto mu = random_point(l.lat, face.vertices, rng);
                std::vector<Complex> w;
                for (std::size_t h : chart.transverse)
                    w.push_back(with_phase(radicand_at(chart.frame, mu, h) * scale(rng), rng));
                AmbientPoint z;
                try {
                    z = singular_slice(chart, w);
                } catch (const Error&) {
                    continue;
                }
                ++accepted;
                CHECK(max_abs(moment_values(chart.frame, z).psi) <= 1e-9);
                for (std::size_t j = 0; j < z.size(); ++j) {
                    if (contains(face.index_set, j))
                        CHECK(z[j] == Complex(0));
                    else
                        CHECK(std::abs(z[j]) > 0);
                }
            }
            CHECK(accepted == 100);
        }
    }
}

TEST_CASE("torus action") {
    std::mt19937 rng(29);
    std::normal_distribution<double> gauss;
    auto l = load("pyramid");
    const auto& reg = l.spec.reg;
    auto chart = regular_chart(l.spec.polytope, l.lat, ix({2, 3, 4}), reg);
    const auto& f = chart.frame;
    auto z = lift_point(f, random_point(l.lat, all_vertices(l.lat), rng));

    CHECK(torus_action(f, {0, 0, 0}, z) == z);

    const double t = 0.37;
    auto moved = torus_action(f, {0, 0, t}, z);
    auto c = torus_exponents(f, {0, 0, t});
    RealVector rebuilt(3, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) rebuilt[k] += c[i] * f.normals[f.I[i]][k];
    CHECK(std::abs(rebuilt[2] - t) <= 1e-14);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(moved[f.I[i]] - z[f.I[i]] * std::polar(1.0, 2 * std::numbers::pi * c[i])) <= 1e-14);
    auto before = moment_values(f, z), after = moment_values(f, moved);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(before.phi[i] - after.phi[i]) <= 1e-9);

    // exp(pi_I^{-1}(X_j)) differs from exp of a kernel vector by the trivial element exp(e_j)
    for (std::size_t j : ix({1, 5})) {
        auto cj = torus_exponents(f, f.normals[j]);
        std::size_t k = 0;
        while (f.kernel.size() > k && std::abs(f.kernel[k][j] - 1) > 1e-12) ++k;
        REQUIRE(k < f.kernel.size());
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(cj[i] + f.kernel[k][f.I[i]]) <= 1e-12);
    }

    for (const char* name : {"pyramid", "tent"}) {
        auto m = load(name);
        for (const auto& I : m.adm.all) {
            auto ch = regular_chart(m.spec.polytope, m.lat, I, m.spec.reg);
            for (int s = 0; s < 20; ++s) {
                auto p = lift_point(ch.frame, random_point(m.lat, all_vertices(m.lat), rng));
                RealVector X(m.lat.n);
                for (auto& x : X) x = gauss(rng);
                auto q = torus_action(ch.frame, X, p);
                auto a = moment_values(ch.frame, p), b = moment_values(ch.frame, q);
                for (std::size_t i = 0; i < X.size(); ++i) CHECK(std::abs(a.phi[i] - b.phi[i]) <= 1e-9);
                for (std::size_t i = 0; i < a.psi.size(); ++i) CHECK(std::abs(a.psi[i] - b.psi[i]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("cone moment map") {
    auto l = load("pyramid");
    const auto& reg = l.spec.reg;
    std::size_t apex = face_of(l.lat, {1, 2, 3, 4});
    auto chart = singular_chart(l.spec.polytope, l.lat, apex, ix({2, 3, 4}), reg);
    const auto& f = chart.frame;

    auto origin = moment_map_cone(f, std::vector<Complex>(4));
    CHECK(max_abs(origin.psi) == 0);
    for (std::size_t i = 0; i < f.J.size(); ++i) CHECK(origin.phi[i] == f.lambda[f.J[i]]);

    // |z1|^2 + |z3|^2 = (1/p2)|z2|^2 + |z4|^2
    const double p2 = val("p2", reg);
    std::vector<Complex> zF{std::sqrt(0.3), std::sqrt(0.4), std::polar(std::sqrt(0.2), 0.5), 0};
    zF[3] = std::sqrt(0.3 + 0.2 - 0.4 / p2);
    auto m = moment_map_cone(f, zF);
    CHECK(m.psi.size() == 1);
    CHECK(max_abs(m.psi) <= 1e-12);

    std::vector<Complex> off{1, 1, 0, 0};
    auto base = moment_map_cone(f, off);
    const double t = 1.7;
    std::vector<Complex> scaled;
    for (auto z : off) scaled.push_back(t * z);
    auto sc = moment_map_cone(f, scaled);
    CHECK(std::abs(sc.psi[0] - t * t * base.psi[0]) <= 1e-12);
    for (std::size_t i = 0; i < f.J.size(); ++i)
        CHECK(std::abs((sc.phi[i] - f.lambda[f.J[i]]) - t * t * (base.phi[i] - f.lambda[f.J[i]])) <= 1e-12);
}

TEST_CASE("pyramid cone embedding h_nu") {
    auto l = load("pyramid");
    const auto& reg = l.spec.reg;
    std::size_t apex = face_of(l.lat, {1, 2, 3, 4});
    const double p2 = val("p2", reg), p5 = val("p5", reg);
    auto cc = cone_chart(l.spec.polytope, l.lat, apex, ix({2, 3, 4}), {1, 1, 1, p2}, {}, reg);
    CHECK(cc.c == doctest::Approx(p5 / 2));
    CHECK(cc.epsilon > 0);

    std::vector<Complex> zF{std::sqrt(0.01), std::sqrt(0.02), std::sqrt(0.005), 0};
    zF[3] = std::sqrt(0.01 + 0.005 - 0.02 / p2);
    auto z = cone_embedding(cc, {}, zF);
    for (std::size_t j = 0; j < 4; ++j) CHECK(z[j] == zF[j]);
    CHECK(std::abs(z[4].real() - std::sqrt(p5 - (p5 / p2) * 0.02 - p5 * std::norm(zF[3]))) <= 1e-14);
    CHECK(max_abs(moment_values(cc.chart.frame, z).psi) <= 1e-12);

    // at p2 = 1 the radical reduces to sqrt(p5 (1 - |z2|^2 - |z4|^2))
    auto u = reload(l, {Rational(1), Rational(3)});
    auto cu = cone_chart(u.spec.polytope, u.lat, face_of(u.lat, {1, 2, 3, 4}), ix({2, 3, 4}), {1, 1, 1, 1}, {},
                         u.spec.reg);
    std::vector<Complex> zu{std::sqrt(0.01), std::sqrt(0.02), std::sqrt(0.015), std::sqrt(0.005)};
    auto w = cone_embedding(cu, {}, zu);
    CHECK(std::abs(w[4].real() - std::sqrt(3 * (1 - 0.02 - 0.005))) <= 1e-14);

    CHECK_THROWS_AS(cone_embedding(cc, {}, {1, 0, 0, 0}), Error);
}

TEST_CASE("tent cone embeddings") {
    auto l = load("tent");
    const auto& reg = l.spec.reg;
    const double p1 = val("p1", reg), p5 = val("p5", reg), p8 = val("p8", reg);

    // h_nu1
    auto c1 = cone_chart(l.spec.polytope, l.lat, face_of(l.lat, {1, 2, 3, 4, 6, 7}), ix({1, 2, 3, 6}),
                         RealVector(6, 1.0), {}, reg);
    std::vector<Complex> zF(6);
    {
        std::mt19937 rng(31);
        // point of the cone from a point of the polytope near nu1
        auto mu = random_point(l.lat, all_vertices(l.lat), rng);
        double total = 0;
        for (std::size_t i = 0; i < 6; ++i) total += radicand_at(c1.chart.frame, mu, c1.chart.frame.I_F[i]);
        for (std::size_t i = 0; i < 6; ++i)
            zF[i] = std::sqrt(radicand_at(c1.chart.frame, mu, c1.chart.frame.I_F[i]) * 0.5 * c1.epsilon / total);
    }
    auto z = cone_embedding(c1, {}, zF);
    auto r = [&](int j) { return std::norm(z[j - 1]); };
    CHECK(std::abs(z[4].real() - std::sqrt(-p5 * r(2) - p5 * r(6) + p5)) <= 1e-13);
    CHECK(std::abs(z[7].real() - std::sqrt(-p8 * r(3) - p8 * r(6) + p8)) <= 1e-13);
    CHECK(std::abs(z[8].real() - std::sqrt(-r(1) / p1 - r(2) + 1)) <= 1e-13);
    CHECK(max_abs(moment_values(c1.chart.frame, z).psi) <= 1e-12);

    // h_nu1nu2 with b = (1, p1, 1, 1)
    auto c2 = cone_chart(l.spec.polytope, l.lat, face_of(l.lat, {1, 2, 3, 4}), ix({1, 2, 3, 6}), {1, p1, 1, 1}, {0.5},
                         reg);
    CHECK(c2.box.front().first < 0.5);
    CHECK(c2.box.front().second > 0.5);
    auto at_origin = cone_embedding(c2, {std::sqrt(0.5)}, std::vector<Complex>(4));
    auto slice = singular_slice(c2.chart, {std::sqrt(0.5)});
    for (std::size_t j = 0; j < 9; ++j) CHECK(std::abs(at_origin[j] - slice[j]) <= 1e-15);

    // |z4|^2 = (1/p1)|z1|^2 + |z2|^2 - |z3|^2
    std::vector<Complex> zc{std::sqrt(1e-3), std::sqrt(1e-3), std::sqrt(1e-3), std::sqrt(1e-3 / p1)};
    CHECK(max_abs(moment_map_cone(c2.chart.frame, zc).psi) <= 1e-15);
    auto q = cone_embedding(c2, {std::sqrt(0.45)}, zc);
    auto s = [&](int j) { return std::norm(q[j - 1]); };
    CHECK(std::abs(q[4].real() - std::sqrt(-p5 * s(2) - p5 * s(6) + p5)) <= 1e-13);
    CHECK(std::abs(q[6].real() - std::sqrt(-s(1) / p1 + s(3) + s(6))) <= 1e-13);
    CHECK(std::abs(q[7].real() - std::sqrt(-p8 * s(3) - p8 * s(6) + p8)) <= 1e-13);
    CHECK(std::abs(q[8].real() - std::sqrt(-s(1) / p1 - s(2) + 1)) <= 1e-13);
    CHECK(max_abs(moment_values(c2.chart.frame, q).psi) <= 1e-12);
}

TEST_CASE("cone embeddings land on the zero level set") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    for (const char* name : {"pyramid", "tent"}) {
        auto l = load(name);
        for (std::size_t fi : l.lat.singular_faces()) {
            const Face& face = l.lat.faces[fi];
            auto [v, I] = flag_index_set(l.lat, l.adm, fi);
            auto probe = singular_chart(l.spec.polytope, l.lat, fi, I, l.spec.reg);
            // base point from the relative interior of the face
            auto mu0 = random_point(l.lat, face.vertices, rng);
            RealVector w0;
            for (std::size_t h : probe.transverse) w0.push_back(radicand_at(probe.frame, mu0, h));
            RealVector b(face.index_set.size(), 1.0);
            auto cc = cone_chart(l.spec.polytope, l.lat, fi, I, b, w0, l.spec.reg);
            const auto& f = cc.chart.frame;

            AmbientPoint z0 = singular_slice(cc.chart, [&] {
                std::vector<Complex> w;
                for (double x : w0) w.push_back(std::sqrt(x));
                return w;
            }());
            auto zero = cone_embedding(cc, [&] {
                std::vector<Complex> w;
                for (double x : w0) w.push_back(std::sqrt(x));
                return w;
            }(), std::vector<Complex>(face.index_set.size()));
            for (std::size_t j = 0; j < z0.size(); ++j) CHECK(std::abs(zero[j] - z0[j]) <= 1e-15);

            for (int s = 0; s < 100; ++s) {
                std::vector<Complex> w;
                for (std::size_t i = 0; i < w0.size(); ++i) {
                    double lo = cc.box[i].first, hi = cc.box[i].second;
                    w.push_back(with_phase(lo + (hi - lo) * unit(rng), rng));
                }
                auto mu = random_point(l.lat, all_vertices(l.lat), rng);
                double total = 0;
                for (std::size_t j : face.index_set) total += radicand_at(f, mu, j);
                double level = unit(rng) * cc.epsilon;
                std::vector<Complex> zF;
                for (std::size_t j : face.index_set)
                    zF.push_back(with_phase(std::max(radicand_at(f, mu, j), 0.0) * level / total, rng));
                auto z = cone_embedding(cc, w, zF);
                CHECK(max_abs(moment_values(f, z).psi) <= 1e-8);
            }
        }
    }
}
