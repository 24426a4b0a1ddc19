/**
 * @file tag.cpp
 * @brief dicom_tag text conversions
 */

#include "dcmval/core/tag.hpp"

#include <charconv>

namespace dcmval::core {

std::string dicom_tag::to_string() const {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out(8, '0');
    std::uint32_t v = combined();
    for (int i = 7; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

std::optional<dicom_tag> dicom_tag::parse(std::string_view hex) {
    if (hex.size() != 8) {
        return std::nullopt;
    }
    std::uint32_t v = 0;
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9') {
            d = c - '0';
        } else if (c >= 'A' && c <= 'F') {
            d = c - 'A' + 10;
        } else if (c >= 'a' && c <= 'f') {
            d = c - 'a' + 10;
        } else {
            return std::nullopt;
        }
        v = (v << 4) | static_cast<std::uint32_t>(d);
    }
    return dicom_tag{static_cast<std::uint16_t>(v >> 16), static_cast<std::uint16_t>(v & 0xFFFF)};
}

}  // namespace dcmval::core
