#ifndef STRATA_TEST_SUPPORT_HPP
#define STRATA_TEST_SUPPORT_HPP

#include <string>
#include <vector>

#include "strata/polytope.hpp"
#include "strata/spec_file.hpp"

namespace strata::testing {

inline ProblemSpec fixture(const std::string& name) {
    return load_spec(std::string(STRATA_FIXTURE_DIR) + "/" + name + ".json");
}

inline HPolytope make_polytope(std::size_t n, const std::vector<std::vector<std::string>>& normals,
                               const std::vector<std::string>& offsets, const ParamRegistry& reg) {
    HPolytope p;
    p.n = n;
    for (const auto& row : normals) {
        ScalarVector v;
        for (const auto& e : row) v.push_back(parse_scalar(e, reg));
        p.normals.push_back(std::move(v));
    }
    for (const auto& e : offsets) p.offsets.push_back(parse_scalar(e, reg));
    return p;
}

/// 0 <= mu_i <= 1 in dimension n.
inline HPolytope cube(std::size_t n) {
    HPolytope p;
    p.n = n;
    for (int sign : {1, -1})
        for (std::size_t i = 0; i < n; ++i) {
            ScalarVector v(n, Scalar(0));
            v[i] = Scalar(sign);
            p.normals.push_back(v);
            p.offsets.push_back(Scalar(sign == 1 ? 0 : -1));
        }
    return p;
}

/// mu_i >= 0, sum mu_i <= 1 in dimension n.
inline HPolytope simplex(std::size_t n) {
    HPolytope p;
    p.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        ScalarVector v(n, Scalar(0));
        v[i] = Scalar(1);
        p.normals.push_back(v);
        p.offsets.push_back(Scalar(0));
    }
    p.normals.push_back(ScalarVector(n, Scalar(-1)));
    p.offsets.push_back(Scalar(-1));
    return p;
}

/// 1-based literal to internal index set.
inline IndexSet ix(std::initializer_list<std::size_t> one_based) {
    IndexSet s;
    for (auto v : one_based) s.push_back(v - 1);
    return s;
}

}  // namespace strata::testing

#endif
