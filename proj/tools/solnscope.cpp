#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "solnscope/errors.hpp"
#include "solnscope/report.hpp"
#include "solnscope/specfile.hpp"

#ifndef SOLNSCOPE_DATA_DIR
#define SOLNSCOPE_DATA_DIR "."
#endif

namespace fs = std::filesystem;
using namespace solnscope;

namespace {

enum Exit { Ok = 0, Undecided = 1, BadInput = 2, GoldenMismatch = 3 };

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << s;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> split_checks(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string c; std::getline(ss, c, ',');) {
        const auto& kc = known_checks();
        if (std::find(kc.begin(), kc.end(), c) == kc.end()) throw ParseError("unknown check '" + c + "'", 1, 1);
        out.push_back(c);
    }
    return out;
}

int run_one(const std::string& file, bool as_json, const std::string& checks, const RunOptions& opt) {
    ProblemSpec spec = parse_spec(slurp(file));
    if (!checks.empty()) spec.checks = split_checks(checks);
    ReportDocument doc = run_report(spec, opt);
    if (as_json)
        std::cout << render_json(doc).dump(2) << "\n";
    else
        std::cout << render_text(doc);
    return doc.undecidable() ? Undecided : Ok;
}

int paper_suite(const fs::path& out_dir, const fs::path& data, bool update) {
    fs::path specs = data / "specs", goldens = data / "goldens";
    fs::create_directories(out_dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(specs))
        if (e.path().extension() == ".spec") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    int mismatches = 0;
    for (const auto& f : files) {
        std::string stem = f.stem().string();
        ReportDocument doc = run_report(parse_spec(slurp(f)));
        std::string text = render_text(doc);
        spill(out_dir / (stem + ".txt"), text);
        spill(out_dir / (stem + ".json"), render_json(doc).dump(2) + "\n");
        fs::path g = goldens / (stem + ".txt");
        if (update) {
            spill(g, text);
            continue;
        }
        if (!fs::exists(g)) {
            std::cout << stem << ": no golden file\n";
            ++mismatches;
            continue;
        }
        auto want = lines(slurp(g)), got = lines(text);
        bool same = want == got;
        if (!same) {
            ++mismatches;
            std::cout << stem << ": mismatch\n";
            std::size_t k = std::max(want.size(), got.size());
            for (std::size_t i = 0; i < k; ++i) {
                std::string a = i < want.size() ? want[i] : "", b = i < got.size() ? got[i] : "";
                if (a != b) std::cout << "  row " << (i + 1) << "\n    golden: " << a << "\n    got:    " << b << "\n";
            }
        } else {
            std::cout << stem << ": ok\n";
        }
    }
    std::cout << files.size() << " reports written to " << out_dir.string() << "\n";
    return mismatches ? GoldenMismatch : Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solution-set diagnostics for regularized and equality-constrained convex problems"};
    app.require_subcommand(0, 1);

    std::string suite_flag;
    app.add_option("--paper-suite", suite_flag, "Regenerate the table reports into DIR and diff them against the goldens");

    auto* run = app.add_subcommand("run", "Analyze one problem file");
    std::string file, checks;
    bool as_json = false, oracle = false;
    std::optional<std::uint64_t> seed;
    run->add_option("spec", file, "Problem file")->required();
    run->add_flag("--json", as_json, "Emit the JSON report");
    run->add_option("--checks", checks, "Comma-separated subset of existence,compactness,uniqueness,moreau,connect,exactness,influence");
    run->add_flag("--oracle-verify", oracle, "Append numerical cross-checks");
    run->add_option("--seed", seed, "Seed for sampled property rows");

    auto* suite = app.add_subcommand("paper-suite", "Regenerate the table reports and diff them against the goldens");
    std::string out_dir, data_dir = SOLNSCOPE_DATA_DIR;
    bool update = false;
    suite->add_option("dir", out_dir, "Output directory")->required();
    suite->add_option("--data", data_dir, "Directory holding specs/ and goldens/");
    suite->add_flag("--update-goldens", update, "Overwrite the goldens with the regenerated reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : BadInput;
    }

    try {
        if (*run) {
            RunOptions opt;
            opt.oracle_verify = oracle;
            opt.seed = seed;
            return run_one(file, as_json, checks, opt);
        }
        if (*suite) return paper_suite(out_dir, data_dir, update);
        if (!suite_flag.empty()) return paper_suite(suite_flag, data_dir, false);
        std::cout << app.help();
        return BadInput;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return BadInput;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return BadInput;
    } catch (const UnknownAtom& e) {
        std::cerr << "unknown atom: " << e.what() << "\n";
        return BadInput;
    } catch (const Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return Undecided;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadInput;
    }
}
