/**
 * @file registry.hpp
 * @brief Description repository: IODs, Modules, Macro Tables and the SOP Class map
 */

#pragma once

#include "dcmval/description/model.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::description {

enum class repository_errc {
    io,
    parse_failure,
    unresolved_module,
    unresolved_table,
    unresolved_iod,
    unresolved_idref,
    include_cycle,
};

class repository_error : public std::runtime_error {
public:
    repository_error(repository_errc code, std::string subject, const std::string& what);

    [[nodiscard]] repository_errc code() const noexcept { return code_; }
    /// Module name, table id, cycle path or file, depending on code().
    [[nodiscard]] const std::string& subject() const noexcept { return subject_; }

private:
    repository_errc code_;
    std::string subject_;
};

/// Macro tables may include tables up to this depth.
inline constexpr int max_table_depth = 8;

/**
 * @brief Cross-referenced set of description files.
 *
 * Populate with the add_* functions, then call verify(). load_repository()
 * does both; the returned value is not modified afterwards.
 */
class registry {
public:
    void add_iod(iod_description iod);
    void add_module(module_description module);
    void add_table(macro_table table);
    void map_sop_class(std::string sop_class_uid, std::string iod_name);

    /// Checks every cross-reference; throws repository_error on the first failure.
    void verify();

    [[nodiscard]] const iod_description* find_iod(std::string_view name) const;
    [[nodiscard]] const iod_description* find_iod_by_sop_class(std::string_view uid) const;
    [[nodiscard]] const module_description* find_module(std::string_view name) const;
    [[nodiscard]] const macro_table* find_table(std::string_view id) const;

    [[nodiscard]] const std::map<std::string, iod_description, std::less<>>& iods() const { return iods_; }
    [[nodiscard]] const std::map<std::string, module_description, std::less<>>& modules() const { return modules_; }
    [[nodiscard]] const std::map<std::string, macro_table, std::less<>>& tables() const { return tables_; }
    [[nodiscard]] const std::map<std::string, std::string, std::less<>>& sop_class_map() const { return sop_classes_; }

    /// Non-fatal findings from verify() (e.g. IOD files no SOP Class maps to).
    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }

    /**
     * Requirements with every table include replaced by the table's
     * requirements, recursively (item requirements included).
     */
    [[nodiscard]] std::vector<element_requirement> expand(
        const std::vector<requirement_entry>& entries) const;

private:
    void expand_into(const std::vector<requirement_entry>& entries,
                     std::vector<element_requirement>& out, int depth) const;
    void check_tables(const std::vector<requirement_entry>& entries,
                      std::vector<std::string>& path) const;

    std::map<std::string, iod_description, std::less<>> iods_;
    std::map<std::string, module_description, std::less<>> modules_;
    std::map<std::string, macro_table, std::less<>> tables_;
    std::map<std::string, std::string, std::less<>> sop_classes_;
    std::vector<std::string> warnings_;
};

/**
 * Loads the `.xml` files under `iods/`, `modules/` and `tables/`, plus `sopclass-map.txt`
 * (UID<TAB>IOD-name). Names come from file stems. Missing subdirectories are
 * treated as empty.
 */
[[nodiscard]] registry load_repository(const std::filesystem::path& root);

/// IOD mapped to a SOP Class UID, or nullptr.
[[nodiscard]] const iod_description* resolve_iod(const registry& reg, std::string_view sop_class_uid);

/// Every idref used by requirement conditions, tables and item requirements expanded.
[[nodiscard]] std::vector<std::string> requirement_idrefs(const std::vector<element_requirement>& reqs);

}  // namespace dcmval::description
