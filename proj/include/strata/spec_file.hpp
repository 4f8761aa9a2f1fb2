#ifndef STRATA_SPEC_FILE_HPP
#define STRATA_SPEC_FILE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "strata/polytope.hpp"
#include "strata/scalar.hpp"

namespace strata {

struct Options {
    Rational epsilon = 1;
    /// Per-face b coefficients keyed by I_F, in the order of I_F.
    std::map<IndexSet, ScalarVector> b;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    double cone_tolerance = 1e-8;
};

struct ProblemSpec {
    std::string name;
    ParamRegistry reg;
    HPolytope polytope;
    /// Generators of the quasilattice; the normals unless given explicitly.
    std::vector<ScalarVector> quasilattice;
    Options options;
};

/// Throws Error(Parse) on malformed input. Polytope validity is not checked here.
ProblemSpec parse_spec(const nlohmann::json& j);
ProblemSpec load_spec(const std::string& path);

/// "1,2,3" <-> {0,1,2}
std::string format_index_set(const IndexSet& s);
IndexSet parse_index_set(const std::string& text);

}  // namespace strata

#endif
