#ifndef STRATA_AMBIENT_HPP
#define STRATA_AMBIENT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "strata/matrix.hpp"
#include "strata/polytope.hpp"
#include "strata/scalar.hpp"

namespace strata {

/// Generators of the quasilattice Q, each a vector of length n.
using Quasilattice = std::vector<ScalarVector>;

/// n x d matrix of pi : e_j -> X_j; throws Validation unless of rank n.
Matrix<Scalar> projection_matrix(const HPolytope& p, const ParamRegistry& reg);

struct AdmissibleSets {
    std::vector<IndexSet> all;                   // union over vertices, sorted
    std::vector<std::vector<IndexSet>> per_vertex;  // aligned with FaceLattice::vertices
};

AdmissibleSets admissible_index_sets(const HPolytope& p, const FaceLattice& lat, const ParamRegistry& reg);

/// Position of h inside I; throws if absent.
std::size_t row_of(const IndexSet& I, std::size_t h);

/// n x d matrix A_I with X_j = sum_{h in I} a_{hj} X_h; row i belongs to I[i].
Matrix<Scalar> change_of_basis(const HPolytope& p, const IndexSet& I, const ParamRegistry& reg);

/// Coordinates of the given vectors in the basis {X_h : h in I}, one column per vector.
Matrix<Scalar> coordinates_in_basis(const HPolytope& p, const IndexSet& I, const std::vector<ScalarVector>& vectors,
                                    const ParamRegistry& reg);

/// The unique vertex whose active set contains I.
std::size_t vertex_of(const FaceLattice& lat, const IndexSet& I);

struct AdaptedBasisData {
    IndexSet I;
    std::size_t vertex = 0;  // position in FaceLattice::vertices
    Matrix<Scalar> A;
    std::optional<std::size_t> face;  // position in FaceLattice::faces
    IndexSet J;                       // I intersected with I_F (empty without a face)
    /// d - n vectors of length d: the n^F block, then the rest of n^mu, then n.
    std::vector<ScalarVector> kernel;
    /// The coordinate carrying the unit entry of each kernel vector.
    std::vector<std::size_t> pivot;
    std::size_t face_block = 0;
    std::size_t vertex_block = 0;  // includes the face block

    const Scalar& a(std::size_t h, std::size_t j) const { return A(row_of(I, h), j); }
};

/// Throws Validation if I is not admissible or the flag condition fails.
AdaptedBasisData adapted_kernel_basis(const HPolytope& p, const FaceLattice& lat, const IndexSet& I,
                                      std::optional<std::size_t> face, const ParamRegistry& reg);

/// First vertex of F (in lattice order) and first I in its admissible sets with card(I cap I_F) = n - p.
std::pair<std::size_t, IndexSet> flag_index_set(const FaceLattice& lat, const AdmissibleSets& adm, std::size_t face);

/// sum_j coeff_j |z_j|^2 + constant = 0, one per kernel vector.
struct PsiEquation {
    ScalarVector coeff;
    Scalar constant;
};

std::vector<PsiEquation> psi_equations(const HPolytope& p, const AdaptedBasisData& data);

struct LambdaCheck {
    bool identity_holds = true;  // lambda_k = sum a_hk lambda_h for k in I_mu \ I
    bool slack_positive = true;
    std::vector<std::pair<std::size_t, Scalar>> slack;  // r not in I_mu
};

LambdaCheck check_vertex_lambda_identity(const HPolytope& p, const FaceLattice& lat, const IndexSet& I,
                                         const ParamRegistry& reg);

struct ChoiceClass {
    bool rational = false;
    bool delzant_like = false;
};

ChoiceClass classify_choice(const HPolytope& p, const Quasilattice& q, const AdmissibleSets& adm,
                            const ParamRegistry& reg);

}  // namespace strata

#endif
