#ifndef STRATA_GROUPS_HPP
#define STRATA_GROUPS_HPP

#include <string>
#include <utility>
#include <vector>

#include "strata/ambient.hpp"
#include "strata/integer_lattice.hpp"

namespace strata {

/// Abstract type Z^free_rank x Z/t_1 x ... with t_i > 1 dividing t_{i+1}.
struct GroupStructure {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool finite() const { return free_rank == 0; }
    Integer order() const;  // requires finite()
    std::string describe() const;
};

/**
 * Subgroup of the torus T^support generated by exp(2 pi i g) for the listed
 * exponent vectors g, read modulo the integer lattice.
 */
struct GroupDescriptor {
    IndexSet support;
    /// Raw exponent vectors aligned with `support`, one per source.
    std::vector<ScalarVector> presentation;
    /// Global index of the quasilattice generator behind each presentation vector.
    std::vector<std::size_t> sources;
    /// Presentation reduced mod Z (constant entries into [0,1)), integral vectors dropped.
    std::vector<ScalarVector> generators;

    /// Coordinates on which some generator is not integral.
    IndexSet effective_support() const;
};

bool is_integral(const Scalar& s);
/// s minus the integer part of its constant value when s is a rational constant.
Scalar reduce_mod_one(const Scalar& s);

GroupDescriptor make_group(IndexSet support, std::vector<ScalarVector> presentation, std::vector<std::size_t> sources);

/// Gamma_I = N cap T^I, presented by the quasilattice generators in the basis {X_h}_{h in I}.
GroupDescriptor gamma_group(const HPolytope& p, const Quasilattice& q, const IndexSet& I, const ParamRegistry& reg);

/// Gamma_{I cap I_F} = N^F cap T^{I cap I_F}; requires the flag condition.
GroupDescriptor gamma_face_group(const HPolytope& p, const Quasilattice& q, const FaceLattice& lat, std::size_t face,
                                 const IndexSet& I, const ParamRegistry& reg);

struct GammaSplit {
    GroupDescriptor on_face;     // coordinates I cap I_F
    GroupDescriptor transverse;  // coordinates I \ (I cap I_F)
    /// Generator-to-generator form of the epimorphism from the transverse factor
    /// onto on_face / Gamma_{I cap I_F}: (transverse image, on_face image).
    std::vector<std::pair<ScalarVector, ScalarVector>> epimorphism;
};

GammaSplit split_gamma(const HPolytope& p, const Quasilattice& q, const FaceLattice& lat, std::size_t face,
                       const IndexSet& I, const ParamRegistry& reg);

/// r_F - n + p.
std::size_t stabilizer_dim(const Face& f, std::size_t n);

/// Structure under the genericity contract, via the relation lattice and Smith invariants.
GroupStructure group_structure(const GroupDescriptor& g);

}  // namespace strata

#endif
