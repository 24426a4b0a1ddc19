/**
 * @file fixtures.hpp
 * @brief CR fixtures, the shipped repository and reference description documents
 */

#pragma once

#include "dcmval/core/dataset.hpp"
#include "dcmval/core/part10.hpp"
#include "dcmval/description/registry.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::testkit {

inline constexpr std::string_view cr_sop_class = "1.2.840.10008.5.1.4.1.1.1";

[[nodiscard]] std::filesystem::path descriptions_dir();

/// Repository under descriptions/, loaded once.
[[nodiscard]] std::shared_ptr<const description::registry> shipped_registry();

[[nodiscard]] const description::iod_description& cr_iod();

/// Sets a text element, padding as needed.
void put(core::data_set& data, core::dicom_tag tag, core::vr_type vr, std::string_view text);

/**
 * CR data set on which every module of the CR IOD is VALID with default
 * answers (ContrastBolus populated).
 */
[[nodiscard]] core::data_set make_cr_dataset();

/// OW Pixel Data of `bytes` bytes (rounded up to even).
[[nodiscard]] core::data_element make_pixel_data(std::size_t bytes);

[[nodiscard]] core::dicom_file make_file(core::data_set data,
                                         std::string_view transfer_syntax =
                                             core::transfer_syntax::explicit_vr_little_endian);

[[nodiscard]] std::vector<std::uint8_t> to_bytes(const core::dicom_file& file);

/// Reference documents kept byte for byte, including the unclosed define and the "..." text.
[[nodiscard]] std::string_view reference_cr_iod_xml();
[[nodiscard]] std::string_view reference_patient_module_xml();

/// 1-based line of the first occurrence of `needle` in `text`, or 0.
[[nodiscard]] int line_of(std::string_view text, std::string_view needle);

/// `text` with the first occurrence of `from` replaced by `to`.
[[nodiscard]] std::string replace_once(std::string_view text, std::string_view from, std::string_view to);

}  // namespace dcmval::testkit
