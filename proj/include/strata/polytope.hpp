#ifndef STRATA_POLYTOPE_HPP
#define STRATA_POLYTOPE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "strata/matrix.hpp"
#include "strata/scalar.hpp"

namespace strata {

/// Sorted set of 0-based constraint indices.
using IndexSet = std::vector<std::size_t>;

IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);
bool contains(const IndexSet& a, std::size_t j);
/// All k-element subsets of s in lexicographic order.
std::vector<IndexSet> subsets_of(const IndexSet& s, std::size_t k);
IndexSet range_set(std::size_t d);

/// {mu : <mu, X_j> >= lambda_j for all j} in (R^n)*.
struct HPolytope {
    std::size_t n = 0;
    std::vector<ScalarVector> normals;  // d vectors of length n
    ScalarVector offsets;               // d entries

    std::size_t d() const noexcept { return normals.size(); }
    /// n x d matrix whose column j is X_j.
    Matrix<Scalar> normal_matrix() const;
};

struct Vertex {
    RationalVector coords;  // at the evaluation point
    IndexSet active;
};

struct Face {
    IndexSet index_set;
    std::size_t dim = 0;
    std::vector<std::size_t> vertices;  // positions in FaceLattice::vertices
    bool singular = false;

    std::size_t r() const noexcept { return index_set.size(); }
};

/// All faces including the open interior (empty index set, dimension n),
/// ordered by dimension and then by index set.
struct FaceLattice {
    std::size_t n = 0;
    std::vector<Vertex> vertices;
    std::vector<Face> faces;

    std::optional<std::size_t> find(const IndexSet& index_set) const;
    /// F <= G iff I_G is contained in I_F.
    bool leq(std::size_t f, std::size_t g) const;
    /// Face counts by dimension 0..n-1.
    std::vector<std::size_t> f_vector() const;
    std::vector<std::size_t> singular_faces() const;
    /// Position in `faces` of the face that is the given vertex.
    std::size_t vertex_face(std::size_t vertex) const;
};

/// Vertices with exact coordinates and full active sets; also validates P.
std::vector<Vertex> enumerate_vertices(const HPolytope& p, const ParamRegistry& reg);

FaceLattice build_face_lattice(const HPolytope& p, const ParamRegistry& reg);

enum class FaceClass { Nonsingular, Singular };

/// Throws Internal when r_F < n - p.
FaceClass classify_face(const Face& f, std::size_t n);

bool is_simple(const FaceLattice& lattice);

}  // namespace strata

#endif
