#ifndef STRATA_VERIFY_HPP
#define STRATA_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "strata/charts.hpp"
#include "strata/groups.hpp"

namespace strata {

/// Worst residual of one sampled identity together with the sample count behind it.
struct Residual {
    std::string name;
    double max = 0;
    std::size_t samples = 0;
    std::size_t expected = 0;  // samples requested
    double tolerance = 0;

    bool passed() const { return samples >= expected && max <= tolerance; }
};

struct SampleOptions {
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    double cone_tolerance = 1e-8;
};

/**
 * Random-sample checks of the chart maps:
 * lift/Phi round trip and torus invariance per admissible I, regular slices per I,
 * singular slices and h_F embeddings per singular face.
 */
std::vector<Residual> sample_residuals(const HPolytope& p, const FaceLattice& lat, const AdmissibleSets& adm,
                                       const SampleOptions& opts, const ParamRegistry& reg);

/// Exact identities, one flag each.
struct ExactChecks {
    bool reconstruction = true;      // X_j = sum_h a_hj X_h for every admissible I
    bool kernel_annihilated = true;  // pi k = 0 for every adapted kernel vector
    bool lambda_identity = true;
    bool slack_positive = true;
};

ExactChecks exact_checks(const HPolytope& p, const FaceLattice& lat, const AdmissibleSets& adm,
                         const ParamRegistry& reg);

/// Strictly positive random combination of the listed vertices.
RealVector random_point(const FaceLattice& lat, const std::vector<std::size_t>& verts, std::mt19937_64& rng);

}  // namespace strata

#endif
