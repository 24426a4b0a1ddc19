/**
 * @file vr.cpp
 * @brief VR code table
 */

#include "dcmval/core/vr.hpp"

#include <array>
#include <utility>

namespace dcmval::core {

namespace {

constexpr std::array<std::pair<vr_type, std::string_view>, 34> vr_names{{
    {vr_type::AE, "AE"}, {vr_type::AS, "AS"}, {vr_type::AT, "AT"}, {vr_type::CS, "CS"},
    {vr_type::DA, "DA"}, {vr_type::DS, "DS"}, {vr_type::DT, "DT"}, {vr_type::FD, "FD"},
    {vr_type::FL, "FL"}, {vr_type::IS, "IS"}, {vr_type::LO, "LO"}, {vr_type::LT, "LT"},
    {vr_type::OB, "OB"}, {vr_type::OD, "OD"}, {vr_type::OF, "OF"}, {vr_type::OL, "OL"},
    {vr_type::OV, "OV"}, {vr_type::OW, "OW"}, {vr_type::PN, "PN"}, {vr_type::SH, "SH"},
    {vr_type::SL, "SL"}, {vr_type::SQ, "SQ"}, {vr_type::SS, "SS"}, {vr_type::ST, "ST"},
    {vr_type::SV, "SV"}, {vr_type::TM, "TM"}, {vr_type::UC, "UC"}, {vr_type::UI, "UI"},
    {vr_type::UL, "UL"}, {vr_type::UN, "UN"}, {vr_type::UR, "UR"}, {vr_type::US, "US"},
    {vr_type::UT, "UT"}, {vr_type::UV, "UV"},
}};

}  // namespace

std::string_view to_string(vr_type vr) noexcept {
    return vr_names[static_cast<std::size_t>(vr)].second;
}

std::optional<vr_type> vr_from_string(std::string_view code) noexcept {
    for (const auto& [vr, name] : vr_names) {
        if (name == code) {
            return vr;
        }
    }
    return std::nullopt;
}

bool is_text(vr_type vr) noexcept {
    switch (vr) {
        case vr_type::AE: case vr_type::AS: case vr_type::CS: case vr_type::DA:
        case vr_type::DS: case vr_type::DT: case vr_type::IS: case vr_type::LO:
        case vr_type::LT: case vr_type::PN: case vr_type::SH: case vr_type::ST:
        case vr_type::TM: case vr_type::UC: case vr_type::UI: case vr_type::UR:
        case vr_type::UT:
            return true;
        default:
            return false;
    }
}

bool is_multi_valued_text(vr_type vr) noexcept {
    return is_text(vr) && vr != vr_type::LT && vr != vr_type::ST && vr != vr_type::UT &&
           vr != vr_type::UR;
}

bool uses_long_length(vr_type vr) noexcept {
    switch (vr) {
        case vr_type::OB: case vr_type::OD: case vr_type::OF: case vr_type::OL:
        case vr_type::OV: case vr_type::OW: case vr_type::SQ: case vr_type::SV:
        case vr_type::UC: case vr_type::UN: case vr_type::UR: case vr_type::UT:
        case vr_type::UV:
            return true;
        default:
            return false;
    }
}

std::size_t fixed_width(vr_type vr) noexcept {
    switch (vr) {
        case vr_type::US: case vr_type::SS:
            return 2;
        case vr_type::UL: case vr_type::SL: case vr_type::FL: case vr_type::AT:
            return 4;
        case vr_type::FD: case vr_type::SV: case vr_type::UV:
            return 8;
        default:
            return 0;
    }
}

std::uint8_t pad_byte(vr_type vr) noexcept {
    return is_text(vr) && vr != vr_type::UI ? std::uint8_t{' '} : std::uint8_t{0};
}

}  // namespace dcmval::core
