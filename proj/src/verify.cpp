#include "strata/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "strata/error.hpp"

namespace strata {

namespace {

RealVector vertex_point(const FaceLattice& lat, std::size_t v) {
    RealVector out;
    for (const auto& x : lat.vertices[v].coords) out.push_back(to_double(x));
    return out;
}

std::vector<std::size_t> all_vertices(const FaceLattice& lat) {
    std::vector<std::size_t> v(lat.vertices.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

Complex with_phase(double modulus_sq, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    return std::polar(std::sqrt(modulus_sq), angle(rng));
}

double radicand_at(const ChartFrame& f, const RealVector& mu, std::size_t j) {
    double s = -f.lambda[j];
    for (std::size_t i = 0; i < f.n; ++i) s += mu[i] * f.normals[j][i];
    return s;
}

struct Tracker {
    Residual r;

    Tracker(std::string name, std::size_t expected, double tol) {
        r.name = std::move(name);
        r.expected = expected;
        r.tolerance = tol;
    }
    void add(double v) {
        r.max = std::max(r.max, v);
        ++r.samples;
    }
};

}  // namespace

RealVector random_point(const FaceLattice& lat, const std::vector<std::size_t>& verts, std::mt19937_64& rng) {
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

std::vector<Residual> sample_residuals(const HPolytope& p, const FaceLattice& lat, const AdmissibleSets& adm,
                                       const SampleOptions& opts, const ParamRegistry& reg) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> scale(0.8, 1.2), unit(0.05, 0.95);
    std::normal_distribution<double> gauss;
    const auto verts = all_vertices(lat);
    const std::size_t N = opts.samples;
    const auto singular = lat.singular_faces();

    Tracker lift("lift_round_trip", N * adm.all.size(), opts.tolerance);
    Tracker regular("regular_slice", N * adm.all.size(), opts.tolerance);
    Tracker torus("torus_invariance", N * adm.all.size(), opts.tolerance);
    Tracker sing("singular_slice", N * singular.size(), opts.tolerance);
    Tracker cone("cone_embedding", N * singular.size(), opts.cone_tolerance);

    for (const auto& I : adm.all) {
        auto chart = regular_chart(p, lat, I, reg);
        const auto& f = chart.frame;
        for (std::size_t s = 0; s < N; ++s) {
            auto mu = random_point(lat, verts, rng);
            auto z = lift_point(f, mu);
            auto m = moment_values(f, z);
            double err = max_abs(m.psi);
            for (std::size_t i = 0; i < mu.size(); ++i) err = std::max(err, std::abs(m.phi[i] - mu[i]));
            lift.add(err);

            RealVector X(lat.n);
            for (auto& x : X) x = gauss(rng);
            auto moved = moment_values(f, torus_action(f, X, z));
            double dev = 0;
            for (std::size_t i = 0; i < m.phi.size(); ++i) dev = std::max(dev, std::abs(m.phi[i] - moved.phi[i]));
            for (std::size_t i = 0; i < m.psi.size(); ++i) dev = std::max(dev, std::abs(m.psi[i] - moved.psi[i]));
            torus.add(dev);
        }
        std::size_t accepted = 0;
        for (std::size_t attempt = 0; attempt < 20 * N && accepted < N; ++attempt) {
            auto mu = random_point(lat, verts, rng);
            std::vector<Complex> u;
            for (std::size_t h : I) u.push_back(with_phase(radicand_at(f, mu, h) * scale(rng), rng));
            AmbientPoint z;
            try {
                z = regular_slice(chart, u);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Domain) throw;
                continue;
            }
            ++accepted;
            regular.add(max_abs(moment_values(f, z).psi));
        }
    }

    for (std::size_t fi : singular) {
        const Face& face = lat.faces[fi];
        auto [v, I] = flag_index_set(lat, adm, fi);
        auto chart = singular_chart(p, lat, fi, I, reg);
        std::size_t accepted = 0;
        for (std::size_t attempt = 0; attempt < 20 * N && accepted < N; ++attempt) {
            auto mu = random_point(lat, face.vertices, rng);
            std::vector<Complex> w;
            for (std::size_t h : chart.transverse) w.push_back(with_phase(radicand_at(chart.frame, mu, h) * scale(rng), rng));
            AmbientPoint z;
            try {
                z = singular_slice(chart, w);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Domain) throw;
                continue;
            }
            ++accepted;
            sing.add(max_abs(moment_values(chart.frame, z).psi));
        }

        auto mu0 = random_point(lat, face.vertices, rng);
        RealVector w0;
        for (std::size_t h : chart.transverse) w0.push_back(radicand_at(chart.frame, mu0, h));
        auto cc = cone_chart(p, lat, fi, I, RealVector(face.index_set.size(), 1.0), w0, reg);
        const auto& f = cc.chart.frame;
        for (std::size_t s = 0; s < N; ++s) {
            std::vector<Complex> w;
            for (const auto& [lo, hi] : cc.box) w.push_back(with_phase(lo + (hi - lo) * unit(rng), rng));
            auto mu = random_point(lat, verts, rng);
            double total = 0;
            for (std::size_t j : face.index_set) total += std::max(radicand_at(f, mu, j), 0.0);
            const double level = unit(rng) * cc.epsilon;
            std::vector<Complex> zF;
            for (std::size_t j : face.index_set)
                zF.push_back(with_phase(std::max(radicand_at(f, mu, j), 0.0) * level / total, rng));
            cone.add(max_abs(moment_values(f, cone_embedding(cc, w, zF)).psi));
        }
    }
    return {lift.r, regular.r, torus.r, sing.r, cone.r};
}

ExactChecks exact_checks(const HPolytope& p, const FaceLattice& lat, const AdmissibleSets& adm,
                         const ParamRegistry& reg) {
    ExactChecks out;
    const auto pi = projection_matrix(p, reg);
    for (const auto& I : adm.all) {
        auto data = adapted_kernel_basis(p, lat, I, std::nullopt, reg);
        for (std::size_t j = 0; j < p.d(); ++j)
            for (std::size_t i = 0; i < p.n; ++i) {
                Scalar s;
                for (std::size_t h : I) s += data.a(h, j) * p.normals[h][i];
                if (s != p.normals[j][i]) out.reconstruction = false;
            }
        for (const auto& k : data.kernel)
            for (std::size_t i = 0; i < p.n; ++i) {
                Scalar s;
                for (std::size_t j = 0; j < p.d(); ++j)
                    if (!k[j].is_zero()) s += pi(i, j) * k[j];
                if (!s.is_zero()) out.kernel_annihilated = false;
            }
        auto lc = check_vertex_lambda_identity(p, lat, I, reg);
        out.lambda_identity = out.lambda_identity && lc.identity_holds;
        out.slack_positive = out.slack_positive && lc.slack_positive;
    }
    return out;
}

}  // namespace strata
