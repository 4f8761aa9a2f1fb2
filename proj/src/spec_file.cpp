#include "strata/spec_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "strata/error.hpp"

namespace strata {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string text_of(const json& j, const std::string& what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    fail(ErrorKind::Parse, what + ": expected a string or an integer");
}

Rational rational_of(const json& j, const std::string& what) {
    try {
        return parse_rational(text_of(j, what));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorKind::Parse, what + ": not a rational number");
    }
}

ScalarVector scalar_row(const json& j, const ParamRegistry& reg, const std::string& what) {
    if (!j.is_array()) fail(ErrorKind::Parse, what + ": expected an array");
    ScalarVector row;
    for (const auto& e : j) row.push_back(parse_scalar(text_of(e, what), reg));
    return row;
}

}  // namespace

std::string format_index_set(const IndexSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i] + 1);
    }
    return out;
}

IndexSet parse_index_set(const std::string& text) {
    IndexSet s;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
            fail(ErrorKind::Parse, "bad index set '" + text + "'");
        std::size_t v = std::stoul(item);
        if (v == 0) fail(ErrorKind::Parse, "indices are 1-based in '" + text + "'");
        s.push_back(v - 1);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail(ErrorKind::Parse, "repeated index in '" + text + "'");
    return s;
}

ProblemSpec parse_spec(const json& j) {
    ProblemSpec spec;
    spec.name = j.value("name", std::string("unnamed"));
    const json& dim = field(j, "dimension");
    if (!dim.is_number_integer() || dim.get<long long>() <= 0) fail(ErrorKind::Parse, "dimension must be a positive integer");
    spec.polytope.n = dim.get<std::size_t>();

    // Parameters without a value take the next unused prime.
    std::vector<std::string> names;
    std::vector<std::optional<Rational>> values;
    std::vector<bool> fixed;
    if (j.contains("parameters")) {
        for (const auto& p : j.at("parameters")) {
            names.push_back(text_of(field(p, "name"), "parameter name"));
            values.push_back(p.contains("value") ? std::optional(rational_of(p.at("value"), "parameter value")) : std::nullopt);
            fixed.push_back(p.value("fixed", false));
        }
    }
    auto defaults = ParamRegistry::with_default_values(names);
    for (std::size_t i = 0; i < names.size(); ++i) {
        Rational v = values[i] ? *values[i] : defaults.values()[i];
        if (fixed[i])
            spec.reg.add_fixed(names[i], v);
        else
            spec.reg.add(names[i], v);
    }

    const json& normals = field(j, "normals");
    if (!normals.is_array()) fail(ErrorKind::Parse, "normals must be an array");
    for (std::size_t r = 0; r < normals.size(); ++r) {
        auto row = scalar_row(normals[r], spec.reg, "normal " + std::to_string(r + 1));
        if (row.size() != spec.polytope.n) fail(ErrorKind::Parse, "normal " + std::to_string(r + 1) + " has wrong length");
        spec.polytope.normals.push_back(std::move(row));
    }
    spec.polytope.offsets = scalar_row(field(j, "offsets"), spec.reg, "offsets");
    if (spec.polytope.offsets.size() != spec.polytope.d()) fail(ErrorKind::Parse, "offsets and normals differ in count");

    const json q = j.value("quasilattice", json("normals"));
    if (q.is_string() && q.get<std::string>() == "normals") {
        spec.quasilattice = spec.polytope.normals;
    } else if (q.is_array()) {
        spec.quasilattice = spec.polytope.normals;
        for (const auto& g : q) {
            auto row = scalar_row(g, spec.reg, "quasilattice generator");
            if (row.size() != spec.polytope.n) fail(ErrorKind::Parse, "quasilattice generator has wrong length");
            spec.quasilattice.push_back(std::move(row));
        }
    } else {
        fail(ErrorKind::Parse, "quasilattice must be \"normals\" or a list of generators");
    }

    if (j.contains("options")) {
        const json& o = j.at("options");
        if (o.contains("epsilon")) spec.options.epsilon = rational_of(o.at("epsilon"), "epsilon");
        if (spec.options.epsilon <= 0) fail(ErrorKind::Parse, "epsilon must be positive");
        if (o.contains("samples")) spec.options.samples = o.at("samples").get<std::size_t>();
        if (o.contains("seed")) spec.options.seed = o.at("seed").get<std::uint64_t>();
        if (o.contains("tolerance")) spec.options.tolerance = o.at("tolerance").get<double>();
        if (o.contains("cone_tolerance")) spec.options.cone_tolerance = o.at("cone_tolerance").get<double>();
        if (o.contains("b")) {
            for (const auto& [key, row] : o.at("b").items()) {
                IndexSet face = parse_index_set(key);
                auto b = scalar_row(row, spec.reg, "b for face " + key);
                if (b.size() != face.size()) fail(ErrorKind::Parse, "b for face " + key + " has wrong length");
                spec.options.b[face] = std::move(b);
            }
        }
    }
    return spec;
}

ProblemSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, "cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, path + ": " + e.what());
    }
    try {
        return parse_spec(j);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, path + ": " + e.what());
    }
}

}  // namespace strata
