/**
 * @file report_format.cpp
 * @brief Report rendering
 */

#include "dcmval/validation/report_format.hpp"

#include <sstream>

namespace dcmval::validation {

nlohmann::ordered_json to_json(const validation_report& report, const output_filter& filter) {
    using nlohmann::ordered_json;
    const auto counts = report.summary();

    ordered_json j;
    j["validationId"] = report.validation_id;
    j["sopClassUid"] = report.sop_class_uid;
    j["iod"] = report.iod_name;
    j["summary"] = ordered_json{{"valid", counts.valid},
                                {"warning", counts.warning},
                                {"skipped", counts.skipped},
                                {"unsatisfiedCondition", counts.unsatisfied_condition},
                                {"hasErrors", counts.has_errors}};
    auto modules = ordered_json::array();
    for (const auto& m : report.modules) {
        if (!filter.shows(m)) {
            continue;
        }
        auto findings = ordered_json::array();
        for (const auto& f : m.findings) {
            if (!filter.shows(f)) {
                continue;
            }
            ordered_json jf;
            jf["tag"] = f.tag.to_string();
            jf["keyword"] = f.keyword;
            jf["severity"] = std::string(to_string(f.level));
            jf["kind"] = std::string(to_string(f.kind));
            jf["path"] = f.path;
            jf["message"] = f.message;
            findings.push_back(std::move(jf));
        }
        ordered_json jm;
        jm["name"] = m.name;
        jm["ie"] = m.ie;
        jm["category"] = std::string(to_string(m.result));
        jm["findings"] = std::move(findings);
        modules.push_back(std::move(jm));
    }
    j["modules"] = std::move(modules);
    auto used = ordered_json::object();
    for (const auto& [id, value] : report.answers_used) {
        used[id] = value;
    }
    j["answersUsed"] = std::move(used);
    return j;
}

std::string render_json(const validation_report& report, const output_filter& filter) {
    return to_json(report, filter).dump(2) + "\n";
}

std::string render_text(const validation_report& report, const output_filter& filter) {
    std::ostringstream out;
    out << "IOD: " << report.iod_name << " (SOP Class " << report.sop_class_uid << ")\n";
    for (const auto& m : report.modules) {
        if (!filter.shows(m)) {
            continue;
        }
        out << "  [" << to_string(m.result) << "] " << m.name << " (" << m.ie << ")\n";
        for (const auto& f : m.findings) {
            if (!filter.shows(f)) {
                continue;
            }
            out << "      " << to_string(f.level) << ' ' << to_string(f.kind) << ' ' << f.tag.to_string();
            if (!f.keyword.empty()) {
                out << ' ' << f.keyword;
            }
            if (!f.path.empty()) {
                out << " in " << f.path;
            }
            out << ": " << f.message << '\n';
        }
    }
    const auto c = report.summary();
    out << "Summary: " << c.valid << " valid, " << c.warning << " warning, " << c.skipped
        << " skipped, " << c.unsatisfied_condition << " unsatisfied condition, " << c.has_errors
        << " with errors\n";
    if (!report.answers_used.empty()) {
        out << "Answers used:";
        for (const auto& [id, value] : report.answers_used) {
            out << ' ' << id << '=' << (value ? "yes" : "no");
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace dcmval::validation
