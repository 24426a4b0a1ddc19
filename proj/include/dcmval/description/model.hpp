/**
 * @file model.hpp
 * @brief Parsed form of IOD, Module and Macro Table description files
 */

#pragma once

#include "dcmval/core/tag.hpp"
#include "dcmval/core/vr.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dcmval::description {

/// Source line of a construct. Ignored by equality so re-printed models compare equal.
struct source_line {
    int value{0};
    friend constexpr bool operator==(source_line, source_line) noexcept { return true; }
};

/// A yes/no question whose answer drives conditional includes and requirements.
struct precondition {
    std::string id;
    std::string question;
    bool default_value{false};
    source_line line;

    bool operator==(const precondition&) const = default;
};

/// If(idref) | And(children) | Or(children). No negation.
struct condition {
    enum class op { if_, and_, or_ };

    op kind{op::if_};
    std::string idref;
    std::vector<condition> children;
    source_line line;

    bool operator==(const condition&) const = default;

    [[nodiscard]] static condition make_if(std::string id) {
        return {op::if_, std::move(id), {}, {}};
    }
    [[nodiscard]] static condition make_and(std::vector<condition> c) {
        return {op::and_, {}, std::move(c), {}};
    }
    [[nodiscard]] static condition make_or(std::vector<condition> c) {
        return {op::or_, {}, std::move(c), {}};
    }
};

/// Every idref mentioned in a condition tree, in document order (duplicates kept).
void collect_idrefs(const condition& cond, std::vector<std::string>& out);

enum class module_usage { mandatory, conditional, user_optional };

[[nodiscard]] std::string_view to_string(module_usage usage) noexcept;
[[nodiscard]] std::optional<module_usage> usage_from_string(std::string_view code) noexcept;

struct module_include {
    std::string ie;
    std::string module_name;
    module_usage usage{module_usage::mandatory};
    std::optional<condition> cond;
    source_line line;

    bool operator==(const module_include&) const = default;
};

enum class element_type { type1 = 1, type2 = 2, type3 = 3 };

struct requirement_entry;

struct element_requirement {
    std::string keyword;
    core::dicom_tag tag;
    core::vr_type vr{core::vr_type::UN};
    std::string vm{"1"};
    element_type type{element_type::type3};
    /// Present for 1C/2C/3C requirements.
    std::optional<condition> cond;
    std::optional<std::vector<std::string>> allowed_values;
    /// SQ only: requirements applied to every item.
    std::optional<std::vector<requirement_entry>> item_requirements;
    /// SQ only: VM-style item count spec.
    std::optional<std::string> item_count;
    source_line line;

    bool operator==(const element_requirement&) const;
};

/// Placeholder for a macro attribute table, expanded through the registry.
struct table_include {
    std::string table_id;
    source_line line;

    bool operator==(const table_include&) const = default;
};

struct requirement_entry {
    std::variant<element_requirement, table_include> node;

    bool operator==(const requirement_entry&) const = default;
};

struct module_description {
    std::string name;
    std::vector<precondition> defines;
    std::vector<requirement_entry> requirements;

    bool operator==(const module_description&) const = default;
};

struct macro_table {
    std::string table_id;
    std::vector<requirement_entry> requirements;

    bool operator==(const macro_table&) const = default;
};

struct iod_description {
    std::string name;
    std::vector<precondition> defines;
    std::vector<module_include> includes;

    bool operator==(const iod_description&) const = default;

    [[nodiscard]] const module_include* find_include(std::string_view module_name) const;
};

}  // namespace dcmval::description
