/**
 * @file parser.hpp
 * @brief Description-file parsing (XML to model)
 */

#pragma once

#include "dcmval/description/model.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dcmval::description {

enum class description_errc {
    malformed_xml,
    identification_failed,
    unknown_element,
    unknown_usage_code,
    duplicate_define_id,
    bad_attribute,
    bad_tag_hex,
    unknown_vr,
    bad_type,
    empty_logical,
    invalid_allowed_value,
    unresolved_idref,
    dictionary_mismatch,
    duplicate_element,
};

[[nodiscard]] std::string_view to_string(description_errc code) noexcept;

enum class diagnostic_severity { error, warning };

struct diagnostic {
    diagnostic_severity severity{diagnostic_severity::error};
    int line{0};
    description_errc code{description_errc::malformed_xml};
    std::string message;
    /// Structural problems make parse_* throw; the rest are reported by lint only.
    bool structural{true};
};

class description_error : public std::runtime_error {
public:
    description_error(description_errc code, int line, const std::string& message);

    [[nodiscard]] description_errc code() const noexcept { return code_; }
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    description_errc code_;
    int line_;
};

enum class description_kind { iod, module, table, auto_detect };

/// Throws description_error for the first structural problem.
[[nodiscard]] iod_description parse_iod(std::string_view xml, std::string name = {});
[[nodiscard]] module_description parse_module(std::string_view xml, std::string name = {});
[[nodiscard]] macro_table parse_table(std::string_view xml, std::string table_id = {});

namespace detail {

using parsed_description =
    std::variant<std::monostate, iod_description, module_description, macro_table>;

struct build_outcome {
    parsed_description result;
    std::vector<diagnostic> diagnostics;
};

/// Best-effort build collecting every problem found.
[[nodiscard]] build_outcome build(std::string_view xml, description_kind kind, std::string name);

}  // namespace detail

}  // namespace dcmval::description
