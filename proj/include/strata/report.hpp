#ifndef STRATA_REPORT_HPP
#define STRATA_REPORT_HPP

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "strata/error.hpp"
#include "strata/links.hpp"
#include "strata/spec_file.hpp"
#include "strata/verify.hpp"

namespace strata {

enum class Section { Faces, Charts, Groups, Links, Verify };

/// Parses "faces", "charts", "groups", "links", "verify" or "all"; throws Parse otherwise.
std::set<Section> parse_sections(const std::vector<std::string>& names);

struct Analysis {
    ProblemSpec spec;
    std::set<Section> sections;
    FaceLattice lattice;
    AdmissibleSets admissible;
    ChoiceClass choice;
    std::vector<LinkNode> forest;
    std::vector<Residual> residuals;
    ExactChecks exact;

    bool has(Section s) const { return sections.count(s) != 0; }
    /// Residuals within tolerance and every structural cross-check holds.
    bool passed() const;
};

/// Link coefficients b_j > 1 at the evaluation point, one message per node.
std::vector<std::string> warnings(const Analysis& a);

/// Runs the pipeline for the requested sections. Throws Error on invalid input.
Analysis analyze(ProblemSpec spec, std::set<Section> sections);

/// Keys are sorted; exact values are canonical Scalar strings; residuals carry 12 significant digits.
nlohmann::json report_json(const Analysis& a);
std::string report_text(const Analysis& a);

/// Face lattice Hasse diagram and link forest.
std::string dot_graph(const Analysis& a);

/// 2 parse, 3 validation or domain, 4 verification or internal.
int exit_code(ErrorKind kind);
nlohmann::json error_json(const Error& e);
std::string kind_name(ErrorKind kind);

double round_significant(double x, int digits = 12);

}  // namespace strata

#endif
