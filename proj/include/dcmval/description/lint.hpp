/**
 * @file lint.hpp
 * @brief Line-numbered diagnostics for description files
 */

#pragma once

#include "dcmval/description/parser.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::description {

class registry;

/// Precondition scopes known from a repository, used to resolve Module idrefs.
struct lint_context {
    std::set<std::string> iod_define_ids;
    /// Module-local define id -> owning module names.
    std::multimap<std::string, std::string> module_define_owners;
    /// Name of the file being linted, so its own defines are not counted as foreign.
    std::string self_name;
};

[[nodiscard]] lint_context make_lint_context(const registry& reg, std::string self_name = {});

/**
 * @brief Structural and semantic checks; never throws.
 *
 * Returns an empty list iff the document is accepted. Module idrefs that are
 * not local resolve against @p ctx; without a context they are warnings.
 */
[[nodiscard]] std::vector<diagnostic> lint(std::string_view xml,
                                           description_kind kind = description_kind::auto_detect,
                                           const lint_context* ctx = nullptr);

/// `LEVEL<TAB>LINE<TAB>MESSAGE` per finding.
[[nodiscard]] std::string format_lint_machine(const std::vector<diagnostic>& diags);

[[nodiscard]] bool has_errors(const std::vector<diagnostic>& diags);

}  // namespace dcmval::description
