/**
 * @file tag.hpp
 * @brief DICOM attribute tag (group, element) and well-known tag constants
 */

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dcmval::core {

/// Identifies a data element by its (group, element) pair.
struct dicom_tag {
    std::uint16_t group{0};
    std::uint16_t element{0};

    constexpr auto operator<=>(const dicom_tag&) const = default;

    [[nodiscard]] constexpr std::uint32_t combined() const noexcept {
        return (static_cast<std::uint32_t>(group) << 16) | element;
    }

    /// Odd groups carry private attributes.
    [[nodiscard]] constexpr bool is_private() const noexcept { return (group & 1u) != 0; }

    /// Exactly eight uppercase hex digits, group first ("00100010").
    [[nodiscard]] std::string to_string() const;

    /// Parses exactly eight hex digits (either case). Anything else yields nullopt.
    [[nodiscard]] static std::optional<dicom_tag> parse(std::string_view hex);
};

namespace tags {

// File meta
inline constexpr dicom_tag file_meta_group_length{0x0002, 0x0000};
inline constexpr dicom_tag media_storage_sop_class_uid{0x0002, 0x0002};
inline constexpr dicom_tag media_storage_sop_instance_uid{0x0002, 0x0003};
inline constexpr dicom_tag transfer_syntax_uid{0x0002, 0x0010};

// Identification
inline constexpr dicom_tag specific_character_set{0x0008, 0x0005};
inline constexpr dicom_tag sop_class_uid{0x0008, 0x0016};
inline constexpr dicom_tag sop_instance_uid{0x0008, 0x0018};
inline constexpr dicom_tag accession_number{0x0008, 0x0050};
inline constexpr dicom_tag institution_name{0x0008, 0x0080};
inline constexpr dicom_tag referring_physician_name{0x0008, 0x0090};
inline constexpr dicom_tag performing_physician_name{0x0008, 0x1050};
inline constexpr dicom_tag operators_name{0x0008, 0x1070};

// Patient
inline constexpr dicom_tag patient_name{0x0010, 0x0010};
inline constexpr dicom_tag patient_id{0x0010, 0x0020};
inline constexpr dicom_tag patient_birth_date{0x0010, 0x0030};
inline constexpr dicom_tag patient_sex{0x0010, 0x0040};
inline constexpr dicom_tag other_patient_ids{0x0010, 0x1000};
inline constexpr dicom_tag patient_age{0x0010, 0x1010};
inline constexpr dicom_tag patient_address{0x0010, 0x1040};

// Relationship
inline constexpr dicom_tag study_instance_uid{0x0020, 0x000D};
inline constexpr dicom_tag series_instance_uid{0x0020, 0x000E};

// Image
inline constexpr dicom_tag number_of_frames{0x0028, 0x0008};
inline constexpr dicom_tag pixel_data{0x7FE0, 0x0010};

// Sequence delimitation
inline constexpr dicom_tag item{0xFFFE, 0xE000};
inline constexpr dicom_tag item_delimitation{0xFFFE, 0xE00D};
inline constexpr dicom_tag sequence_delimitation{0xFFFE, 0xE0DD};

}  // namespace tags

}  // namespace dcmval::core
