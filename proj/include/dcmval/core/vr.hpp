/**
 * @file vr.hpp
 * @brief Value Representation codes and their encoding properties
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace dcmval::core {

/**
 * @brief Two-letter VR codes.
 *
 * The validator's rule tables cover AE..UN; FL, FD, AT and the remaining
 * long-form codes are accepted so that real-world files still round-trip.
 */
enum class vr_type : std::uint8_t {
    AE, AS, AT, CS, DA, DS, DT, FD, FL, IS, LO, LT, OB, OD, OF, OL, OV,
    OW, PN, SH, SL, SQ, SS, ST, SV, TM, UC, UI, UL, UN, UR, US, UT, UV
};

[[nodiscard]] std::string_view to_string(vr_type vr) noexcept;
[[nodiscard]] std::optional<vr_type> vr_from_string(std::string_view code) noexcept;

/// Character-string VRs (value decodes as text).
[[nodiscard]] bool is_text(vr_type vr) noexcept;

/// Text VRs whose values are backslash-delimited (everything but LT, ST, UT, UR).
[[nodiscard]] bool is_multi_valued_text(vr_type vr) noexcept;

/// Explicit-VR encoding uses 2 reserved bytes and a 32-bit length.
[[nodiscard]] bool uses_long_length(vr_type vr) noexcept;

/// Per-value byte width for fixed-width binary VRs, 0 otherwise.
[[nodiscard]] std::size_t fixed_width(vr_type vr) noexcept;

/// Byte used to pad odd-length values (NUL for UI and binary, space for text).
[[nodiscard]] std::uint8_t pad_byte(vr_type vr) noexcept;

}  // namespace dcmval::core
