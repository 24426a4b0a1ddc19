/**
 * @file report_format.hpp
 * @brief Canonical JSON and text rendering of validation reports
 */

#pragma once

#include "dcmval/validation/engine.hpp"

#include <json.hpp>

#include <set>
#include <string>

namespace dcmval::validation {

/// Rendering-only filter; never changes the computed report or its summary.
struct output_filter {
    std::set<severity> severities{severity::error, severity::warning};
    std::set<category> categories{category::valid, category::warning, category::skipped,
                                  category::unsatisfied_condition, category::has_errors};

    [[nodiscard]] bool shows(const finding& f) const { return severities.contains(f.level); }
    [[nodiscard]] bool shows(const module_result& m) const { return categories.contains(m.result); }
};

/// Keys in fixed order: validationId, sopClassUid, iod, summary, modules, answersUsed.
[[nodiscard]] nlohmann::ordered_json to_json(const validation_report& report,
                                             const output_filter& filter = {});

/// Two-space indented JSON followed by a newline.
[[nodiscard]] std::string render_json(const validation_report& report, const output_filter& filter = {});

[[nodiscard]] std::string render_text(const validation_report& report, const output_filter& filter = {});

}  // namespace dcmval::validation
