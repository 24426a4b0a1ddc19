/**
 * @file dataset.hpp
 * @brief In-memory data elements and data sets
 */

#pragma once

#include "dcmval/core/tag.hpp"
#include "dcmval/core/vr.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::core {

class data_set;

/**
 * @brief One TLV element.
 *
 * `value` holds the bytes exactly as stored in the stream, including the
 * trailing pad byte of odd-length logical values. For SQ elements `value`
 * is empty and `items` carries the nested data sets.
 */
struct data_element {
    dicom_tag tag;
    vr_type vr{vr_type::UN};
    std::vector<std::uint8_t> value;
    std::vector<data_set> items;
    /// SQ only: encoded with the 0xFFFFFFFF length and a sequence delimiter.
    bool undefined_length{false};

    [[nodiscard]] bool is_sequence() const noexcept { return vr == vr_type::SQ; }
    [[nodiscard]] bool empty() const noexcept;
};

/// Thrown by get_string() when the element does not hold character data.
class not_text_vr : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Tag-ordered collection of elements.
 *
 * Also used for sequence items, where `undefined_length_item` records
 * whether the item was delimited by an item delimitation tag.
 */
class data_set {
public:
    using container = std::map<dicom_tag, data_element>;

    data_set() = default;

    [[nodiscard]] bool contains(dicom_tag tag) const { return elements_.contains(tag); }
    [[nodiscard]] const data_element* find(dicom_tag tag) const;
    [[nodiscard]] data_element* find(dicom_tag tag);

    /// Inserts or replaces.
    void set(data_element element);
    bool erase(dicom_tag tag) { return elements_.erase(tag) > 0; }

    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }

    [[nodiscard]] container::const_iterator begin() const noexcept { return elements_.begin(); }
    [[nodiscard]] container::const_iterator end() const noexcept { return elements_.end(); }
    [[nodiscard]] container::iterator begin() noexcept { return elements_.begin(); }
    [[nodiscard]] container::iterator end() noexcept { return elements_.end(); }

    bool undefined_length_item{false};

private:
    container elements_;
};

/**
 * Logical equality: tag, VR, value bytes and items, recursively.
 * Length-encoding choices are ignored.
 */
[[nodiscard]] bool same_content(const data_set& a, const data_set& b);
[[nodiscard]] bool same_content(const data_element& a, const data_element& b);

/// Builds a text element, padding odd-length values with the VR's pad byte.
[[nodiscard]] data_element make_text_element(dicom_tag tag, vr_type vr, std::string_view text);

/// Builds a sequence element.
[[nodiscard]] data_element make_sequence(dicom_tag tag, std::vector<data_set> items,
                                         bool undefined_length = false);

/// Value bytes as text with trailing spaces and NULs removed.
[[nodiscard]] std::string trimmed_text(const data_element& element);

/**
 * Text value of a tag with trailing padding removed, or nullopt when the tag
 * is absent. Throws not_text_vr for binary and SQ elements.
 */
[[nodiscard]] std::optional<std::string> get_string(const data_set& data, dicom_tag tag);

}  // namespace dcmval::core
