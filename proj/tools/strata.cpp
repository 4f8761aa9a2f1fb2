#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "strata/report.hpp"

namespace fs = std::filesystem;
using namespace strata;

namespace {

void write_to(const std::optional<std::string>& path, const std::string& text) {
    if (!path) return;
    if (path->empty() || *path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(*path);
    if (!out) fail(ErrorKind::Parse, "cannot write " + *path);
    out << text;
}

// Runs one spec; the report goes to `out`, diagnostics to standard error.
int run(const std::string& spec_path, const std::vector<std::string>& only, const std::optional<std::string>& out,
        std::optional<std::uint64_t> seed, const std::string& dot) {
    try {
        auto spec = load_spec(spec_path);
        if (seed) spec.options.seed = *seed;
        auto a = analyze(std::move(spec), parse_sections(only));
        write_to(out, report_text(a));
        for (const auto& w : warnings(a)) std::cerr << nlohmann::json{{"warning", w}}.dump() << "\n";
        if (!dot.empty()) write_to(dot, dot_graph(a));
        if (!a.passed()) {
            std::cerr << nlohmann::json{{"error", "verification"}, {"message", "residual or cross-check out of tolerance"},
                                        {"exit_code", 4}}
                             .dump()
                      << "\n";
            return 4;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << error_json(e).dump() << "\n";
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << error_json(Error(ErrorKind::Parse, e.what())).dump() << "\n";
        return 2;
    }
}

std::vector<fs::path> fixture_files(const std::string& dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(dir)) return files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stratification data of convex polytopes"};
    app.require_subcommand(1);

    auto* analyze_cmd = app.add_subcommand("analyze", "Compute the stratification report of an input file");
    std::string spec_path, out, dot;
    std::vector<std::string> only;
    std::optional<std::uint64_t> seed;
    analyze_cmd->add_option("spec", spec_path, "Input file (JSON)")->required();
    analyze_cmd->add_option("--only", only, "faces|charts|groups|links|verify|all (repeatable)");
    analyze_cmd->add_option("--out", out, "Report file (default: standard output)");
    analyze_cmd->add_option("--seed", seed, "Sampling seed, overrides the input file");
    analyze_cmd->add_option("--dot", dot, "Write the face lattice and link forest in DOT format");

    auto* fixtures_cmd = app.add_subcommand("fixtures", "Bundled example polytopes");
    fixtures_cmd->require_subcommand(1);
    std::string dir = STRATA_FIXTURE_DIR;
    fixtures_cmd->add_option("--dir", dir, "Fixture directory");
    auto* list_cmd = fixtures_cmd->add_subcommand("list", "List fixture names");
    auto* run_cmd = fixtures_cmd->add_subcommand("run", "Analyze fixtures and print one status line each");
    std::vector<std::string> names;
    run_cmd->add_option("names", names, "Fixture names (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*analyze_cmd) return run(spec_path, only, out, seed, dot);

    auto files = fixture_files(dir);
    if (*list_cmd) {
        for (const auto& f : files) std::cout << f.stem().string() << "\n";
        return 0;
    }
    if (*run_cmd) {
        int worst = 0;
        for (const auto& f : files) {
            if (!names.empty() && std::find(names.begin(), names.end(), f.stem().string()) == names.end()) continue;
            int code = run(f.string(), {}, std::nullopt, std::nullopt, "");
            std::cout << f.stem().string() << " " << (code == 0 ? "ok" : "exit " + std::to_string(code)) << "\n";
            worst = std::max(worst, code);
        }
        return worst;
    }
    return 0;
}
