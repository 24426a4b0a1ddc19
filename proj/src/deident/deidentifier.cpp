/**
 * @file deidentifier.cpp
 * @brief De-identification
 */

#include "dcmval/deident/deidentifier.hpp"

#include <random>

namespace dcmval::deident {

using core::data_element;
using core::data_set;
using core::vr_type;

namespace {

constexpr std::string_view fill_pattern = "REMOVED";
constexpr std::string_view fixed_date = "19000101";

std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h = (h ^ c) * 0x100000001B3ull;
    }
    return h;
}

bool valid_uid(std::string_view uid) {
    if (uid.empty() || uid.size() > 64 || uid.front() == '.' || uid.back() == '.') {
        return false;
    }
    std::size_t start = 0;
    while (start <= uid.size()) {
        auto end = uid.find('.', start);
        if (end == std::string_view::npos) {
            end = uid.size();
        }
        const auto part = uid.substr(start, end - start);
        if (part.empty() || (part.size() > 1 && part.front() == '0')) {
            return false;
        }
        for (char c : part) {
            if (c < '0' || c > '9') {
                return false;
            }
        }
        start = end + 1;
    }
    return true;
}

/// Applies `fn` to each backslash-separated segment when the VR is multi-valued.
template <typename Fn>
std::string per_value(vr_type vr, std::string_view logical, Fn&& fn) {
    if (!core::is_multi_valued_text(vr)) {
        return fn(logical);
    }
    std::string out;
    std::size_t start = 0;
    while (true) {
        const auto pos = logical.find('\\', start);
        const auto end = pos == std::string_view::npos ? logical.size() : pos;
        out += fn(logical.substr(start, end - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        out += '\\';
        start = pos + 1;
    }
}

std::string text_fill(std::string_view value) {
    std::string out(value.size(), ' ');
    for (std::size_t i = 0; i < value.size(); ++i) {
        out[i] = fill_pattern[i % fill_pattern.size()];
    }
    return out;
}

std::string zeros(std::size_t n) {
    return std::string(n, '0');
}

bool is_age_unit(char c) {
    return c == 'D' || c == 'W' || c == 'M' || c == 'Y';
}

struct fill_context {
    vr_type vr;
    std::string* notice;

    void flag(const std::string& message) const {
        if (notice != nullptr && notice->empty()) {
            *notice = "ImpossibleFill: " + message;
        }
    }
};

std::string zero_value(const fill_context& ctx, std::string_view value) {
    if (ctx.vr == vr_type::AS) {
        if (value.size() == 4 && is_age_unit(value.back())) {
            return zeros(3) + value.back();
        }
        if (!value.empty()) {
            ctx.flag("AS value of " + std::to_string(value.size()) +
                     " characters cannot hold an age string; zero filled");
        }
    }
    return zeros(value.size());
}

std::string date_value(const fill_context& ctx, std::string_view value) {
    const auto n = value.size();
    if (ctx.vr == vr_type::DA && n == fixed_date.size()) {
        return std::string(fixed_date);
    }
    if (ctx.vr == vr_type::DT && n >= fixed_date.size() && n <= 14 && n % 2 == 0) {
        return std::string(fixed_date) + zeros(n - fixed_date.size());
    }
    if (n != 0) {
        ctx.flag(std::string(core::to_string(ctx.vr)) + " value of " + std::to_string(n) +
                 " characters cannot hold the fixed date; zero filled");
    }
    return zeros(n);
}

std::string pick_value(const fill_context& ctx, std::size_t capacity,
                       const std::vector<std::string>* allowed) {
    if (allowed == nullptr || allowed->empty()) {
        ctx.flag("no allowed values to pick from; blank filled");
        return {};
    }
    const auto& pick = allowed->back();
    if (pick.size() > capacity) {
        ctx.flag("designated value '" + pick + "' is longer than the original value; blank filled");
        return {};
    }
    return pick;
}

std::string placeholder_uid(std::size_t n) {
    if (n >= uid_root.size() + 1) {
        return std::string(uid_root) + std::string(n - uid_root.size(), '1');
    }
    return std::string(n, '1');
}

std::vector<std::uint8_t> padded(vr_type vr, const std::string& logical, std::size_t length) {
    std::vector<std::uint8_t> out(logical.begin(), logical.end());
    out.resize(length, core::pad_byte(vr));
    return out;
}

std::string apply(vr_type vr, strategy how, std::string_view logical, std::size_t capacity,
                  const std::vector<std::string>* allowed, uid_map* uids, std::string* notice) {
    const fill_context ctx{vr, notice};
    switch (how) {
        case strategy::text_fill:
            return per_value(vr, logical, text_fill);
        case strategy::zero_digits:
            return per_value(vr, logical, [&](std::string_view v) { return zero_value(ctx, v); });
        case strategy::fixed_date:
            return per_value(vr, logical, [&](std::string_view v) { return date_value(ctx, v); });
        case strategy::uid_remap:
            return per_value(vr, logical, [&](std::string_view v) {
                if (v.empty()) {
                    return std::string();
                }
                return uids != nullptr ? uids->remap(v) : placeholder_uid(v.size());
            });
        case strategy::pick_allowed:
            return pick_value(ctx, capacity, allowed);
    }
    return std::string(logical);
}

std::string_view logical_text(const data_element& e) {
    std::string_view s(reinterpret_cast<const char*>(e.value.data()), e.value.size());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\0')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

uid_map::uid_map(std::uint64_t seed) : seed_(seed) {}

std::string uid_map::generate(std::string_view uid, std::uint64_t attempt) const {
    std::uint64_t state = seed_ ^ fnv1a(uid) ^ (attempt * 0xD6E8FEB86659FD93ull);
    auto digit = [&](bool nonzero) {
        const auto r = splitmix(state);
        return static_cast<char>(nonzero ? '1' + r % 9 : '0' + r % 10);
    };
    std::string out;
    if (uid.size() > uid_root.size()) {
        out = uid_root;
        out += digit(true);
        while (out.size() < uid.size()) {
            out += digit(false);
        }
        return out;
    }
    // Too short for the root: keep the dotted shape, redraw the digits.
    out.assign(uid);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == '.') {
            continue;
        }
        const bool starts = i == 0 || out[i - 1] == '.';
        const bool single = starts && (i + 1 == out.size() || out[i + 1] == '.');
        out[i] = digit(starts && !single);
    }
    return out;
}

std::string uid_map::remap(std::string_view uid) {
    if (auto it = forward_.find(uid); it != forward_.end()) {
        return it->second;
    }
    std::string replacement;
    if (uid.substr(0, uid_root.size()) == uid_root && valid_uid(uid) && !issued_.contains(uid)) {
        replacement = std::string(uid);
    } else {
        for (std::uint64_t attempt = 0;; ++attempt) {
            replacement = generate(uid, attempt);
            if (!issued_.contains(replacement) && !forward_.contains(replacement)) {
                break;
            }
        }
    }
    issued_.insert(replacement);
    forward_.emplace(std::string(uid), replacement);
    return replacement;
}

std::uint64_t random_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<std::uint8_t> dummy_value(vr_type vr, std::size_t length, strategy how,
                                      const std::vector<std::string>* allowed, std::size_t logical_length,
                                      std::string* notice) {
    if (!core::is_text(vr)) {
        return std::vector<std::uint8_t>(length, 0);
    }
    const auto logical = std::string(std::min(logical_length, length), 'x');
    return padded(vr, apply(vr, how, logical, length, allowed, nullptr, notice), length);
}

std::vector<std::uint8_t> replace_value(const data_element& element, const profile_target& target,
                                        uid_map& uids, std::string* notice) {
    if (!core::is_text(element.vr)) {
        return std::vector<std::uint8_t>(element.value.size(), 0);
    }
    const auto logical = logical_text(element);
    if (logical.empty()) {
        return element.value;
    }
    const auto* allowed = target.allowed.empty() ? nullptr : &target.allowed;
    return padded(element.vr,
                  apply(element.vr, target.how, logical, element.value.size(), allowed, &uids, notice),
                  element.value.size());
}

data_set deidentify(const data_set& data, const deident_profile& profile, uid_map& uids,
                    std::vector<deident_notice>* notices) {
    data_set out = data;
    for (auto& [tag, element] : out) {
        if (element.is_sequence()) {
            for (auto& item : element.items) {
                const bool undefined = item.undefined_length_item;
                item = deidentify(item, profile, uids, notices);
                item.undefined_length_item = undefined;
            }
            continue;
        }
        const auto* target = profile.find(tag);
        if (target == nullptr || element.value.empty()) {
            continue;
        }
        std::string notice;
        element.value = replace_value(element, *target, uids, &notice);
        if (!notice.empty() && notices != nullptr) {
            notices->push_back({tag, std::move(notice)});
        }
    }
    return out;
}

data_set deidentify(const data_set& data, const deident_profile& profile) {
    uid_map uids(random_seed());
    return deidentify(data, profile, uids);
}

data_set strip_pixel_data(const data_set& data) {
    data_set out = data;
    out.erase(core::tags::pixel_data);
    return out;
}

core::dicom_file deidentify_file(const core::dicom_file& file, const deident_profile& profile,
                                 uid_map& uids, bool strip_pixels, std::vector<deident_notice>* notices) {
    core::dicom_file out;
    out.meta = file.meta;
    out.data = deidentify(file.data, profile, uids, notices);
    if (strip_pixels) {
        out.data = strip_pixel_data(out.data);
    }
    const auto* instance_target = profile.find(core::tags::sop_instance_uid);
    auto* media = out.meta.elements.find(core::tags::media_storage_sop_instance_uid);
    if (instance_target != nullptr && instance_target->how == strategy::uid_remap && media != nullptr) {
        media->value = replace_value(*media, *instance_target, uids);
    }
    return out;
}

}  // namespace dcmval::deident
