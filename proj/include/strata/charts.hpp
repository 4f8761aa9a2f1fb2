#ifndef STRATA_CHARTS_HPP
#define STRATA_CHARTS_HPP

#include <complex>
#include <optional>
#include <vector>

#include "strata/ambient.hpp"

namespace strata {

using Complex = std::complex<double>;
using AmbientPoint = std::vector<Complex>;
using RealVector = std::vector<double>;
using RealMatrix = std::vector<RealVector>;

/// Double-precision view of one adapted chart: A_I, the kernel basis and the slacks.
struct ChartFrame {
    std::size_t n = 0;
    IndexSet I;
    IndexSet I_mu;
    IndexSet I_F;  // empty for regular charts
    IndexSet J;    // I cap I_F
    RealMatrix normals;
    RealVector lambda;
    RealMatrix a;              // a[i][j] = a_{I[i], j}
    RealMatrix basis_inverse;  // inverse of the matrix with columns X_h, h in I
    RealMatrix kernel;
    std::size_t face_block = 0;
    /// sum_h a_hr lambda_h - lambda_r for r outside I_mu, zero otherwise.
    RealVector slack;

    std::size_t d() const { return lambda.size(); }
    double coeff(std::size_t h, std::size_t j) const { return a[row_of(I, h)][j]; }
};

ChartFrame chart_frame(const HPolytope& p, const FaceLattice& lat, const AdaptedBasisData& data,
                       const ParamRegistry& reg);

/// Strict inequality sum_h coeff_h |u_h|^2 + constant > 0 over `support`.
struct DomainConstraint {
    std::size_t index = 0;  // the l or r it protects
    IndexSet support;
    ScalarVector coeff;
    Scalar constant;
    RealVector coeff_value;
    double constant_value = 0;

    double radicand(const AmbientPoint& z) const;
};

struct Pi1Rank {
    std::size_t ell = 0;
    IndexSet I_star;
};

struct RegularChartData {
    ChartFrame frame;
    std::vector<DomainConstraint> domain;
    Pi1Rank pi1;
};

struct SingularChartData {
    ChartFrame frame;
    std::size_t face = 0;
    IndexSet transverse;  // I \ (I cap I_F)
    std::vector<DomainConstraint> domain;
};

struct MomentValues {
    RealVector upsilon;
    RealVector psi;
    RealVector phi;
};

MomentValues moment_values(const ChartFrame& f, const AmbientPoint& z);
double max_abs(const RealVector& v);

/// mu is given in standard coordinates at the evaluation point.
AmbientPoint lift_point(const ChartFrame& f, const RealVector& mu, double tol = 1e-12);
/// Radicands evaluated exactly; active constraints give exact zeros.
AmbientPoint lift_point(const HPolytope& p, const RationalVector& mu, const ParamRegistry& reg);

RegularChartData regular_chart(const HPolytope& p, const FaceLattice& lat, const IndexSet& I,
                               const ParamRegistry& reg);
/// u holds the n coordinates indexed by I, in increasing order.
AmbientPoint regular_slice(const RegularChartData& c, const std::vector<Complex>& u, double margin = 1e-12);

/**
 * C_I = {rho >= 0 | rows[k].rho > -slack[k]} with slack >= 0. Position i is in
 * I_* when C_I misses the hyperplane rho_i = 0. Decided by exact LP.
 */
Pi1Rank pi1_rank(const std::vector<RationalVector>& rows, const RationalVector& slack);
Pi1Rank chart_pi1_rank(const HPolytope& p, const AdaptedBasisData& data, const ParamRegistry& reg);

SingularChartData singular_chart(const HPolytope& p, const FaceLattice& lat, std::size_t face, const IndexSet& I,
                                 const ParamRegistry& reg);
/// w holds the p coordinates indexed by I \ (I cap I_F).
AmbientPoint singular_slice(const SingularChartData& c, const std::vector<Complex>& w, double margin = 1e-12);

/// Multiplies z_h, h in I, by exp(2 pi i c_h) where c = coordinates of X in the basis X_I.
AmbientPoint torus_action(const ChartFrame& f, const RealVector& X, const AmbientPoint& z);
/// Coordinates of X in the basis {X_h}_{h in I}.
RealVector torus_exponents(const ChartFrame& f, const RealVector& X);

/// Neighborhood data for h_F around w0.
struct ConeChart {
    SingularChartData chart;
    RealVector b;                                // aligned with I_F
    RealVector w0;                               // |w0_h|^2 on the transverse block
    std::vector<std::pair<double, double>> box;  // bounds on |w_h|^2
    double c = 0;
    double epsilon = 0;
    bool epsilon_unconstrained = false;  // no negative a_hl on I cap I_F
};

ConeChart cone_chart(const HPolytope& p, const FaceLattice& lat, std::size_t face, const IndexSet& I,
                     const RealVector& b, const RealVector& w0, const ParamRegistry& reg);

struct ConeMoment {
    RealVector psi;  // one entry per n^F basis vector
    RealVector phi;  // <Phi_F, X_h> for h in I cap I_F
};

/// zF aligned with I_F.
ConeMoment moment_map_cone(const ChartFrame& f, const std::vector<Complex>& zF);

AmbientPoint cone_embedding(const ConeChart& c, const std::vector<Complex>& w, const std::vector<Complex>& zF,
                            double tol = 1e-9);

/// Real dimension of the singular slice domain.
std::size_t singular_domain_dimension(const SingularChartData& c);

}  // namespace strata

#endif
