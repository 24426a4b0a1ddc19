/**
 * @file part10.hpp
 * @brief DICOM Part-10 file reading and writing
 */

#pragma once

#include "dcmval/core/dataset.hpp"
#include "dcmval/core/dictionary.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::core {

namespace transfer_syntax {
inline constexpr std::string_view implicit_vr_little_endian = "1.2.840.10008.1.2";
inline constexpr std::string_view explicit_vr_little_endian = "1.2.840.10008.1.2.1";
inline constexpr std::string_view explicit_vr_big_endian = "1.2.840.10008.1.2.2";
}  // namespace transfer_syntax

/// Byte-level encoding of a data set.
struct encoding {
    bool explicit_vr{true};
    bool little_endian{true};

    bool operator==(const encoding&) const = default;
};

inline constexpr encoding implicit_little{false, true};
inline constexpr encoding explicit_little{true, true};
inline constexpr encoding explicit_big{true, false};

/// Encoding for one of the three supported transfer syntaxes.
[[nodiscard]] std::optional<encoding> encoding_for(std::string_view transfer_syntax_uid);

enum class parse_errc {
    too_short,
    missing_magic,
    truncated_element,
    duplicate_tag,
    tag_order,
    odd_length,
    unknown_vr,
    unsupported_transfer_syntax,
    malformed,
};

[[nodiscard]] std::string_view to_string(parse_errc code) noexcept;

class parse_error : public std::runtime_error {
public:
    parse_error(parse_errc code, std::size_t offset, const std::string& what);

    [[nodiscard]] parse_errc code() const noexcept { return code_; }
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    parse_errc code_;
    std::size_t offset_;
};

enum class serialize_errc { odd_unpadded_value, value_too_long, unsupported_transfer_syntax };

class serialize_error : public std::runtime_error {
public:
    serialize_error(serialize_errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] serialize_errc code() const noexcept { return code_; }

private:
    serialize_errc code_;
};

inline constexpr std::size_t preamble_size = 128;
inline constexpr std::string_view dicm_magic = "DICM";

/// Preamble plus group-0002 elements. Always written as explicit VR little endian.
struct file_meta {
    std::array<std::uint8_t, preamble_size> preamble{};
    data_set elements;
    std::string transfer_syntax_uid;
};

struct dicom_file {
    file_meta meta;
    data_set data;
};

/**
 * @brief Parses a complete Part-10 byte stream.
 *
 * Lossless: serialize_file() on the result reproduces the input bytes.
 * Implicit-VR elements take their VR from `dict` (UN when unknown).
 */
[[nodiscard]] dicom_file parse_file(std::span<const std::uint8_t> bytes,
                                    const dictionary& dict = dictionary::standard());

[[nodiscard]] std::vector<std::uint8_t> serialize_file(const file_meta& meta, const data_set& data);

/// Parses a bare data set (no preamble or meta).
[[nodiscard]] data_set parse_data_set(std::span<const std::uint8_t> bytes, encoding enc,
                                      const dictionary& dict = dictionary::standard());
[[nodiscard]] std::vector<std::uint8_t> serialize_data_set(const data_set& data, encoding enc);

/// Encoded size of one element under `enc`, header included.
[[nodiscard]] std::size_t encoded_size(const data_element& element, encoding enc);

/**
 * Builds a minimal meta group (version, SOP class/instance, transfer syntax,
 * implementation UID) with a correct group length.
 */
[[nodiscard]] file_meta make_file_meta(std::string_view sop_class_uid,
                                       std::string_view sop_instance_uid,
                                       std::string_view transfer_syntax_uid);

[[nodiscard]] std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace dcmval::core
