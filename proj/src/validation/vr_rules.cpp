/**
 * @file vr_rules.cpp
 * @brief Per-VR encoding rules (lengths, character repertoires, formats)
 */

#include "dcmval/validation/vr_rules.hpp"

#include <cctype>
#include <limits>
#include <regex>

namespace dcmval::validation {

using core::vr_type;

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) {
        v = v * 10 + (c - '0');
    }
    return v;
}

std::string_view trim_right(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\0')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string_view trim_both(std::string_view s) {
    s = trim_right(s);
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    return s;
}

bool leading_spaces_insignificant(vr_type vr) {
    switch (vr) {
        case vr_type::AE: case vr_type::CS: case vr_type::DS: case vr_type::IS:
        case vr_type::LO: case vr_type::SH:
            return true;
        default:
            return false;
    }
}

std::string quoted(std::string_view v) {
    return "'" + std::string(v) + "'";
}

std::size_t max_length(vr_type vr) {
    switch (vr) {
        case vr_type::AE: case vr_type::CS: case vr_type::DS: case vr_type::SH: return 16;
        case vr_type::IS: return 12;
        case vr_type::LO: case vr_type::UI: return 64;
        case vr_type::ST: return 1024;
        case vr_type::LT: return 10240;
        case vr_type::AS: return 4;
        case vr_type::DA: return 8;
        case vr_type::DT: return 26;
        case vr_type::TM: return 14;
        default: return std::numeric_limits<std::size_t>::max();
    }
}

bool has_bad_control(std::string_view v, bool allow_format_controls) {
    for (unsigned char c : v) {
        if (c >= 0x20 || c == 0x1B) {
            continue;
        }
        if (allow_format_controls && (c == '\r' || c == '\n' || c == '\f' || c == '\t')) {
            continue;
        }
        return true;
    }
    return false;
}

// "HH[MM[SS[.F{1,6}]]]"
std::optional<std::string> time_defect(std::string_view t) {
    static const std::regex form(R"(^(\d{2})((\d{2})((\d{2})(\.\d{1,6})?)?)?$)");
    std::cmatch m;
    if (!std::regex_match(t.begin(), t.end(), m, form)) {
        return "not of the form HHMMSS.FFFFFF";
    }
    if (to_int(m.str(1)) > 23) {
        return "hour out of range";
    }
    if (m[3].matched && to_int(m.str(3)) > 59) {
        return "minute out of range";
    }
    if (m[5].matched && to_int(m.str(5)) > 60) {
        return "second out of range";
    }
    return std::nullopt;
}

std::optional<std::string> datetime_defect(std::string_view dt) {
    static const std::regex form(
        R"(^(\d{4})(\d{2})?(\d{2})?(\d{2})?(\d{2})?(\d{2})?(\.\d{1,6})?([+\-]\d{4})?$)");
    std::cmatch m;
    if (!std::regex_match(dt.begin(), dt.end(), m, form)) {
        return "not of the form YYYYMMDDHHMMSS.FFFFFF&ZZXX";
    }
    // Each component requires all the preceding ones.
    bool gap = false;
    for (int i = 2; i <= 7; ++i) {
        if (!m[i].matched) {
            gap = true;
        } else if (gap) {
            return "component present after an omitted one";
        }
    }
    const int year = to_int(m.str(1));
    const int month = m[2].matched ? to_int(m.str(2)) : 1;
    const int day = m[3].matched ? to_int(m.str(3)) : 1;
    if (month < 1 || month > 12) {
        return "month out of range";
    }
    if (!is_valid_date(year, month, day)) {
        return "day out of range";
    }
    if (m[4].matched && to_int(m.str(4)) > 23) {
        return "hour out of range";
    }
    if (m[5].matched && to_int(m.str(5)) > 59) {
        return "minute out of range";
    }
    if (m[6].matched && to_int(m.str(6)) > 60) {
        return "second out of range";
    }
    if (m[8].matched) {
        const auto z = m.str(8);
        const int hh = to_int(z.substr(1, 2));
        const int mm = to_int(z.substr(3, 2));
        if (hh > 14 || mm > 59) {
            return "UTC offset out of range";
        }
    }
    return std::nullopt;
}

std::optional<std::string> value_defect(vr_type vr, std::string_view raw) {
    std::string_view v = leading_spaces_insignificant(vr) ? trim_both(raw) : trim_right(raw);
    if (raw.size() > max_length(vr)) {
        return "length " + std::to_string(raw.size()) + " exceeds " +
               std::to_string(max_length(vr));
    }
    if (v.empty()) {
        return std::nullopt;
    }
    switch (vr) {
        case vr_type::AE:
            if (has_bad_control(v, false)) return "control character in AE";
            return std::nullopt;
        case vr_type::AS:
            if (v.size() != 4 || !all_digits(v.substr(0, 3)) ||
                std::string_view("DWMY").find(v[3]) == std::string_view::npos) {
                return "not of the form nnnD, nnnW, nnnM or nnnY";
            }
            return std::nullopt;
        case vr_type::CS:
            for (char c : v) {
                if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == ' ' || c == '_')) {
                    return "character " + quoted(std::string(1, c)) + " not allowed in CS";
                }
            }
            return std::nullopt;
        case vr_type::DA: {
            if (v.size() != 8 || !all_digits(v)) {
                return "not of the form YYYYMMDD";
            }
            const int month = to_int(v.substr(4, 2));
            if (month < 1 || month > 12) {
                return "month out of range";
            }
            if (!is_valid_date(to_int(v.substr(0, 4)), month, to_int(v.substr(6, 2)))) {
                return "day out of range";
            }
            return std::nullopt;
        }
        case vr_type::DS: {
            static const std::regex form(R"(^[+\-]?(\d+(\.\d*)?|\.\d+)([eE][+\-]?\d+)?$)");
            if (!std::regex_match(v.begin(), v.end(), form)) {
                return "not a decimal string";
            }
            return std::nullopt;
        }
        case vr_type::DT:
            return datetime_defect(v);
        case vr_type::IS: {
            static const std::regex form(R"(^[+\-]?\d+$)");
            if (!std::regex_match(v.begin(), v.end(), form)) {
                return "not an integer string";
            }
            const long long n = std::stoll(std::string(v));
            if (n < std::numeric_limits<std::int32_t>::min() ||
                n > std::numeric_limits<std::int32_t>::max()) {
                return "integer out of 32-bit range";
            }
            return std::nullopt;
        }
        case vr_type::LO: case vr_type::SH:
            if (has_bad_control(v, false)) return "control character in " + std::string(core::to_string(vr));
            return std::nullopt;
        case vr_type::ST: case vr_type::LT: case vr_type::UT:
            if (has_bad_control(v, true)) return "control character in " + std::string(core::to_string(vr));
            return std::nullopt;
        case vr_type::PN: {
            std::size_t groups = 1;
            std::size_t start = 0;
            for (std::size_t i = 0; i <= v.size(); ++i) {
                if (i == v.size() || v[i] == '=') {
                    if (i - start > 64) {
                        return "name component group longer than 64";
                    }
                    if (i < v.size()) {
                        ++groups;
                    }
                    start = i + 1;
                }
            }
            if (groups > 3) {
                return "more than three component groups";
            }
            if (has_bad_control(v, false)) {
                return "control character in PN";
            }
            return std::nullopt;
        }
        case vr_type::TM:
            return time_defect(v);
        case vr_type::UI: {
            if (v.front() == '.' || v.back() == '.') {
                return "UID starts or ends with '.'";
            }
            std::size_t start = 0;
            for (std::size_t i = 0; i <= v.size(); ++i) {
                if (i < v.size() && v[i] != '.') {
                    if (v[i] < '0' || v[i] > '9') {
                        return "character " + quoted(std::string(1, v[i])) + " not allowed in UI";
                    }
                    continue;
                }
                const auto comp = v.substr(start, i - start);
                if (comp.empty()) {
                    return "empty UID component";
                }
                if (comp.size() > 1 && comp.front() == '0') {
                    return "UID component with a leading zero";
                }
                start = i + 1;
            }
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

bool is_valid_date(int year, int month, int day) noexcept {
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12 || day < 1) {
        return false;
    }
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    const int limit = days[month - 1] + (month == 2 && leap ? 1 : 0);
    return day <= limit;
}

std::vector<std::string> split_values(vr_type vr, std::string_view value) {
    std::vector<std::string> out;
    value = trim_right(value);
    if (value.empty()) {
        return out;
    }
    if (!core::is_multi_valued_text(vr)) {
        out.emplace_back(value);
        return out;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i <= value.size(); ++i) {
        if (i == value.size() || value[i] == '\\') {
            auto part = value.substr(start, i - start);
            part = leading_spaces_insignificant(vr) ? trim_both(part) : trim_right(part);
            out.emplace_back(part);
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> check_vr_encoding(vr_type vr, std::string_view value) {
    std::vector<std::string> defects;
    if (!core::is_text(vr)) {
        return check_vr_encoding(
            vr, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(value.data()),
                                              value.size()));
    }
    value = vr == vr_type::UI ? trim_right(value) : value;
    // Whole-value padding is not part of any individual value.
    if (value.size() % 2 == 0 && !value.empty() && (value.back() == ' ' || value.back() == '\0')) {
        value.remove_suffix(1);
    }
    std::vector<std::string_view> parts;
    if (core::is_multi_valued_text(vr)) {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= value.size(); ++i) {
            if (i == value.size() || value[i] == '\\') {
                parts.push_back(value.substr(start, i - start));
                start = i + 1;
            }
        }
    } else {
        parts.push_back(value);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (auto d = value_defect(vr, parts[i])) {
            std::string prefix = "value " + quoted(trim_right(parts[i]));
            if (parts.size() > 1) {
                prefix += " (#" + std::to_string(i + 1) + ")";
            }
            defects.push_back(prefix + ": " + *d);
        }
    }
    return defects;
}

std::vector<std::string> check_vr_encoding(vr_type vr, std::span<const std::uint8_t> value) {
    if (core::is_text(vr)) {
        return check_vr_encoding(
            vr, std::string_view(reinterpret_cast<const char*>(value.data()), value.size()));
    }
    std::vector<std::string> defects;
    const auto width = core::fixed_width(vr);
    if (width != 0 && value.size() % width != 0) {
        defects.push_back("length " + std::to_string(value.size()) + " is not a multiple of " +
                          std::to_string(width) + " for " + std::string(core::to_string(vr)));
    }
    return defects;
}

std::size_t value_count(const core::data_element& element, vr_type as_vr) {
    if (element.is_sequence()) {
        return element.items.size();
    }
    if (element.value.empty()) {
        return 0;
    }
    if (core::is_text(as_vr)) {
        return split_values(as_vr, std::string_view(reinterpret_cast<const char*>(element.value.data()),
                                                    element.value.size()))
            .size();
    }
    const auto width = core::fixed_width(as_vr);
    return width != 0 ? element.value.size() / width : 1;
}

}  // namespace dcmval::validation
