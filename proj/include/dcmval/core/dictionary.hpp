/**
 * @file dictionary.hpp
 * @brief Data dictionary: tag to (keyword, VR, VM) lookup
 */

#pragma once

#include "dcmval/core/tag.hpp"
#include "dcmval/core/vr.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace dcmval::core {

struct dictionary_entry {
    std::string keyword;
    vr_type vr{vr_type::UN};
    std::string vm;

    bool operator==(const dictionary_entry&) const = default;
};

class dictionary_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Immutable tag dictionary.
 *
 * The embedded instance covers the tags used by the shipped description
 * files plus common patient/study/series/image/equipment attributes.
 * Additional entries can be layered from a tab-separated text file.
 */
class dictionary {
public:
    dictionary() = default;

    /// Embedded curated dictionary.
    [[nodiscard]] static const dictionary& standard();

    /**
     * Reads `TAG<TAB>KEYWORD<TAB>VR<TAB>VM` lines ('#' starts a comment)
     * and returns `base` overridden by those entries.
     */
    [[nodiscard]] static dictionary load(const std::filesystem::path& path,
                                         const dictionary& base = standard());
    [[nodiscard]] static dictionary parse(std::string_view text, const dictionary& base);

    /// Exact match; private (odd-group) tags always return nullopt.
    [[nodiscard]] std::optional<dictionary_entry> lookup(dicom_tag tag) const;
    [[nodiscard]] std::optional<dicom_tag> find_keyword(std::string_view keyword) const;

    /// VR for implicit-VR decoding: dictionary VR, UL for group lengths, else UN.
    [[nodiscard]] vr_type implicit_vr(dicom_tag tag) const;

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::map<dicom_tag, dictionary_entry>& entries() const noexcept {
        return entries_;
    }

    /// Adds or replaces an entry. Throws dictionary_error on a keyword clash.
    void add(dicom_tag tag, dictionary_entry entry);

private:
    std::map<dicom_tag, dictionary_entry> entries_;
    std::unordered_map<std::string, dicom_tag> by_keyword_;
};

/// Convenience wrapper over dictionary::standard().lookup().
[[nodiscard]] std::optional<dictionary_entry> dictionary_lookup(dicom_tag tag);

}  // namespace dcmval::core
