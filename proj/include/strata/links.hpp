#ifndef STRATA_LINKS_HPP
#define STRATA_LINKS_HPP

#include <optional>
#include <vector>

#include "strata/ambient.hpp"
#include "strata/spec_file.hpp"

namespace strata {

/**
 * Section of the cone at F by <xi, Y> = sum lambda_j b_j + epsilon.
 * Coordinates on d_F^* are eta_h = <xi, X_h> for h in `basis`.
 */
struct ConeSection {
    std::size_t face = 0;
    IndexSet I_F;
    std::size_t p = 0;
    IndexSet basis;
    Matrix<Scalar> c;  // X_j = sum_h c(h, j) X_h, columns aligned with I_F
    ScalarVector b;    // aligned with I_F
    Rational epsilon;
    Scalar level;
    ScalarVector y;    // Y in eta coordinates
    ScalarVector xi0;  // base point of the slice
    std::vector<ScalarVector> ann;  // e_k - (y_k / y_q) e_q for k != q
};

ConeSection cone_section(const HPolytope& p, const FaceLattice& lat, std::size_t face, const ScalarVector& b,
                         const Rational& epsilon, const ParamRegistry& reg);

struct TransferEntry {
    std::size_t link_face = 0;
    IndexSet labels;  // constraint indices of the parent polytope
    std::size_t parent_face = 0;
    std::size_t dim = 0;
    bool singular = false;
};

struct LinkPolytope {
    HPolytope polytope;  // intrinsic, in ann(Y) coordinates
    FaceLattice lattice;
    std::vector<TransferEntry> transfer;
};

/// Builds the intrinsic link polytope and cross-checks the singular faces against the parent.
LinkPolytope link_polytope(const ConeSection& s, const HPolytope& p, const FaceLattice& lat, const ParamRegistry& reg);

struct FibrationData {
    ScalarVector y_tilde;                 // length d, supported on I_F
    std::vector<ScalarVector> augmented;  // n^F basis followed by y_tilde
    std::size_t rank = 0;
    std::size_t expected_rank = 0;
    bool direct_sum = false;
    bool annihilates_link = false;  // every augmented vector kills the link normals
    bool fiber_closed = false;
};

FibrationData fibration_data(const HPolytope& p, const FaceLattice& lat, const AdmissibleSets& adm, std::size_t face,
                             const ConeSection& s, const LinkPolytope& link, const ParamRegistry& reg);

struct LinkNode {
    IndexSet labels;                // I_F in the numbering of the original polytope
    std::vector<IndexSet> chain;    // label sets from the root down to this node
    std::size_t face_dim = 0;
    ConeSection section;
    LinkPolytope link;
    FibrationData fibration;
    std::size_t depth = 1;
    std::vector<LinkNode> children;

    bool leaf() const { return children.empty(); }
};

struct LinkOptions {
    Rational epsilon = 1;
    std::map<IndexSet, ScalarVector> b;  // overrides for root faces, keyed by I_F
};

LinkOptions link_options(const Options& o);

/// Candidate b vectors tried in order until the section is valid.
std::vector<ScalarVector> b_candidates(std::size_t r);

/// One root per singular face of the polytope.
std::vector<LinkNode> link_tree(const HPolytope& p, const FaceLattice& lat, const LinkOptions& opts,
                                const ParamRegistry& reg);

LinkNode link_node(const HPolytope& p, const FaceLattice& lat, std::size_t face, const LinkOptions& opts,
                   const ParamRegistry& reg);

/// Face data of a link polytope as (labels, dim, singular) triples.
std::vector<std::tuple<IndexSet, std::size_t, bool>> labeled_faces(const LinkPolytope& link);

bool section_invariance_check(const HPolytope& p, const FaceLattice& lat, std::size_t face, const ScalarVector& b,
                              const Rational& eps1, const Rational& eps2, const ParamRegistry& reg);

std::size_t tree_depth(const std::vector<LinkNode>& forest);
bool leaves_simple(const std::vector<LinkNode>& forest);

}  // namespace strata

#endif
