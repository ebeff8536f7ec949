#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "solnscope/specfile.hpp"

namespace solnscope {

struct ReportRow {
    std::string key;    // stable identifier
    std::string label;  // table text
    std::string group;  // existence, compactness, uniqueness, ...
    std::string value;
    std::optional<bool> verdict;
    std::string certificate;  // id into ReportDocument::certificates
    bool undecidable = false;
};

struct ReportDocument {
    ProblemSpec spec;
    std::vector<ReportRow> rows;
    nlohmann::ordered_json certificates = nlohmann::ordered_json::object();
    std::vector<std::string> oracle;  // agreement lines from --oracle-verify

    bool undecidable() const;
    const ReportRow* find(const std::string& key) const;
};

struct RunOptions {
    bool oracle_verify = false;
    std::optional<std::uint64_t> seed;  // enables sampled property rows
};

ReportDocument run_report(const ProblemSpec& spec, const RunOptions& opt = {});
std::string render_text(const ReportDocument& doc);
nlohmann::ordered_json render_json(const ReportDocument& doc);

}  // namespace solnscope
