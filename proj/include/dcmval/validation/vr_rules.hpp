/**
 * @file vr_rules.hpp
 * @brief Structural value checks per VR
 */

#pragma once

#include "dcmval/core/dataset.hpp"
#include "dcmval/core/vr.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::validation {

/**
 * @brief Checks a stored value against its VR's encoding rule.
 *
 * Text values are split on backslash (except LT, ST, UT, UR) and each
 * value is checked on its own. Returns one defect text per problem; an
 * empty result means the value conforms. SQ, OB, OW and UN are never
 * content-checked.
 */
[[nodiscard]] std::vector<std::string> check_vr_encoding(core::vr_type vr,
                                                         std::span<const std::uint8_t> value);
[[nodiscard]] std::vector<std::string> check_vr_encoding(core::vr_type vr, std::string_view value);

/// Individual values of a text element, trailing padding removed.
[[nodiscard]] std::vector<std::string> split_values(core::vr_type vr, std::string_view value);

/// Number of values held by an element (0 for an empty value).
[[nodiscard]] std::size_t value_count(const core::data_element& element, core::vr_type as_vr);

/// Calendar validity of a YYYYMMDD date.
[[nodiscard]] bool is_valid_date(int year, int month, int day) noexcept;

}  // namespace dcmval::validation
