/**
 * @file deidentifier.hpp
 * @brief Length- and domain-preserving value replacement and pixel-data removal
 */

#pragma once

#include "dcmval/core/dataset.hpp"
#include "dcmval/core/part10.hpp"
#include "dcmval/deident/profile.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::deident {

/// Root of generated replacement UIDs.
inline constexpr std::string_view uid_root = "9.9.";

/// Injective, length-preserving UID replacement, stable for one map instance.
class uid_map {
public:
    explicit uid_map(std::uint64_t seed);

    /// Replacement with the same length. UIDs already under uid_root map to themselves.
    [[nodiscard]] std::string remap(std::string_view uid);

    [[nodiscard]] std::size_t size() const noexcept { return forward_.size(); }

private:
    [[nodiscard]] std::string generate(std::string_view uid, std::uint64_t attempt) const;

    std::uint64_t seed_;
    std::map<std::string, std::string, std::less<>> forward_;
    std::set<std::string, std::less<>> issued_;
};

/// Seed drawn from std::random_device.
[[nodiscard]] std::uint64_t random_seed();

/// Raised when a value's length cannot hold a valid replacement; a fallback fill is used.
struct deident_notice {
    core::dicom_tag tag;
    std::string message;

    bool operator==(const deident_notice&) const = default;
};

/**
 * @brief Replacement bytes of exactly `length` bytes for a value of `vr`.
 *
 * `logical_length` (default: `length`) is the unpadded size; the remainder is
 * padded with the VR's pad byte. UidRemap needs `uids` and the original value,
 * so use replace_value() for it.
 */
[[nodiscard]] std::vector<std::uint8_t> dummy_value(core::vr_type vr, std::size_t length, strategy how,
                                                    const std::vector<std::string>* allowed = nullptr,
                                                    std::size_t logical_length = SIZE_MAX,
                                                    std::string* notice = nullptr);

/// Replacement for an existing value; backslash value delimiters are kept.
[[nodiscard]] std::vector<std::uint8_t> replace_value(const core::data_element& element,
                                                      const profile_target& target, uid_map& uids,
                                                      std::string* notice = nullptr);

/// Replaces every target present, inside sequence items too.
[[nodiscard]] core::data_set deidentify(const core::data_set& data, const deident_profile& profile,
                                        uid_map& uids, std::vector<deident_notice>* notices = nullptr);

/// Same with a fresh uid_map from random_seed().
[[nodiscard]] core::data_set deidentify(const core::data_set& data, const deident_profile& profile);

/// Removes (7FE0,0010); everything else, Number of Frames included, is kept.
[[nodiscard]] core::data_set strip_pixel_data(const core::data_set& data);

/**
 * De-identifies a whole file. Media Storage SOP Instance UID in the meta group
 * follows the SOP Instance UID mapping.
 */
[[nodiscard]] core::dicom_file deidentify_file(const core::dicom_file& file, const deident_profile& profile,
                                               uid_map& uids, bool strip_pixels,
                                               std::vector<deident_notice>* notices = nullptr);

}  // namespace dcmval::deident
