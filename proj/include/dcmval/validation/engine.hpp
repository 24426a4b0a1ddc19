/**
 * @file engine.hpp
 * @brief Module-by-module validation of a data set against an IOD description
 */

#pragma once

#include "dcmval/core/dataset.hpp"
#include "dcmval/description/registry.hpp"
#include "dcmval/validation/condition.hpp"

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::validation {

/// Modules chosen for validation; all_modules() selects every include.
struct selection {
    bool all{true};
    std::set<std::string> modules;

    [[nodiscard]] static selection all_modules() { return {}; }
    [[nodiscard]] static selection of(std::set<std::string> names) { return {false, std::move(names)}; }
    [[nodiscard]] bool contains(const std::string& name) const { return all || modules.contains(name); }
};

enum class severity { error, warning };

enum class finding_kind {
    missing_type1,
    empty_type1,
    missing_type2,
    vr_mismatch,
    vm_violation,
    value_not_allowed,
    encoding_invalid,
    condition_violated_missing,
    type3_non_conformant,
    item_count_violation,
    unexpected_conditional,
};

enum class category { valid, warning, skipped, unsatisfied_condition, has_errors };

[[nodiscard]] std::string_view to_string(severity s) noexcept;
[[nodiscard]] std::string_view to_string(finding_kind k) noexcept;
/// Report codes: VALID, WARNING, SKIPPED, UNSATISFIED_CONDITION, HAS_ERRORS.
[[nodiscard]] std::string_view to_string(category c) noexcept;
[[nodiscard]] std::optional<category> category_from_string(std::string_view code) noexcept;

struct finding {
    core::dicom_tag tag;
    std::string keyword;
    severity level{severity::error};
    finding_kind kind{finding_kind::missing_type1};
    std::string message;
    /// Enclosing sequence items, e.g. "00101002[0]"; empty at top level.
    std::string path;

    bool operator==(const finding&) const = default;
};

struct module_result {
    std::string name;
    std::string ie;
    category result{category::valid};
    std::vector<finding> findings;

    bool operator==(const module_result&) const = default;
};

struct category_counts {
    int valid{0};
    int warning{0};
    int skipped{0};
    int unsatisfied_condition{0};
    int has_errors{0};

    bool operator==(const category_counts&) const = default;
};

struct validation_report {
    std::string validation_id;
    std::string sop_class_uid;
    std::string iod_name;
    std::vector<module_result> modules;
    /// Effective value of every precondition a condition consulted.
    answers answers_used;

    [[nodiscard]] category_counts summary() const;
    [[nodiscard]] const module_result* find_module(std::string_view name) const;

    bool operator==(const validation_report&) const = default;
};

class unresolved_module : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Selected module names that the IOD does not include.
[[nodiscard]] std::vector<std::string> unknown_modules(const description::iod_description& iod,
                                                       const selection& sel);

/**
 * IOD defines referenced by selected includes (IOD order), then the defines of
 * selected modules in include order; de-duplicated by id.
 */
[[nodiscard]] std::vector<description::precondition> collect_questions(
    const description::iod_description& iod, const description::registry& reg, const selection& sel);

/// Every precondition of the IOD and of all modules it includes.
[[nodiscard]] precondition_defaults scope_defaults(const description::iod_description& iod,
                                                   const description::registry& reg);

/// Answer keys that name no precondition in scope_defaults().
[[nodiscard]] std::vector<std::string> unknown_answer_keys(const description::iod_description& iod,
                                                           const description::registry& reg,
                                                           const answers& given);

/**
 * Findings for one requirement (tables already expanded).
 * @param path prefix for findings raised inside sequence items
 */
[[nodiscard]] std::vector<finding> validate_requirement(const core::data_set& data,
                                                        const description::element_requirement& req,
                                                        const answers& given,
                                                        const precondition_defaults& defaults,
                                                        const std::string& path = {},
                                                        std::set<std::string>* consulted = nullptr);

/// Category implied by an evaluated module's findings.
[[nodiscard]] category categorize(const std::vector<finding>& findings) noexcept;

/// Findings of a module's requirements, ordered by type (1, 1C, 2, 2C, 3, 3C) then tag.
[[nodiscard]] std::vector<finding> validate_module(const core::data_set& data,
                                                   const description::module_description& module,
                                                   const description::registry& reg,
                                                   const answers& given,
                                                   const precondition_defaults& iod_defaults,
                                                   std::set<std::string>* consulted = nullptr);

[[nodiscard]] validation_report validate(const core::data_set& data,
                                         const description::iod_description& iod,
                                         const description::registry& reg, const selection& sel,
                                         const answers& given);

}  // namespace dcmval::validation
