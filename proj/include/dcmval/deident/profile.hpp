/**
 * @file profile.hpp
 * @brief De-identification profiles
 */

#pragma once

#include "dcmval/core/tag.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::deident {

enum class strategy { text_fill, zero_digits, fixed_date, uid_remap, pick_allowed };

[[nodiscard]] std::string_view to_string(strategy s) noexcept;
/// Accepts the names TextFill, ZeroDigits, FixedDate, UidRemap, PickAllowed.
[[nodiscard]] std::optional<strategy> strategy_from_string(std::string_view name) noexcept;

struct profile_target {
    core::dicom_tag tag;
    strategy how{strategy::text_fill};
    /// PickAllowed only: the value list; the last entry is the designated pick.
    std::vector<std::string> allowed;

    bool operator==(const profile_target&) const = default;
};

class profile_error : public std::runtime_error {
public:
    profile_error(int line, const std::string& message);

    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

class deident_profile {
public:
    deident_profile() = default;

    /// Throws profile_error for Pixel Data or a repeated tag.
    void add(profile_target target);

    [[nodiscard]] const profile_target* find(core::dicom_tag tag) const;
    [[nodiscard]] const std::vector<profile_target>& targets() const noexcept { return targets_; }

private:
    std::vector<profile_target> targets_;
};

/// Patient, physician, institution, accession and instance UID attributes.
[[nodiscard]] const deident_profile& default_profile();

/**
 * Profile text: `TAG<TAB>STRATEGY[<TAB>ALLOWED]` per line, `#` comments.
 * ALLOWED is a backslash-separated list for PickAllowed (default M\F\O for PatientSex).
 */
[[nodiscard]] deident_profile parse_profile(std::string_view text);
[[nodiscard]] deident_profile load_profile(const std::filesystem::path& path);

}  // namespace dcmval::deident
