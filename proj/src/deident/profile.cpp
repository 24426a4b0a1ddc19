/**
 * @file profile.cpp
 * @brief Default profile and profile-file parsing
 */

#include "dcmval/deident/profile.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace dcmval::deident {

namespace {

constexpr std::array<std::pair<strategy, std::string_view>, 5> strategy_names{{
    {strategy::text_fill, "TextFill"},
    {strategy::zero_digits, "ZeroDigits"},
    {strategy::fixed_date, "FixedDate"},
    {strategy::uid_remap, "UidRemap"},
    {strategy::pick_allowed, "PickAllowed"},
}};

const std::vector<std::string>& sex_values() {
    static const std::vector<std::string> values{"M", "F", "O"};
    return values;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

}  // namespace

std::string_view to_string(strategy s) noexcept {
    for (const auto& [value, name] : strategy_names) {
        if (value == s) {
            return name;
        }
    }
    return "?";
}

std::optional<strategy> strategy_from_string(std::string_view name) noexcept {
    for (const auto& [value, text] : strategy_names) {
        if (text == name) {
            return value;
        }
    }
    return std::nullopt;
}

profile_error::profile_error(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

void deident_profile::add(profile_target target) {
    if (target.tag == core::tags::pixel_data) {
        throw profile_error(0, "PixelData (7FE00010) is removed, never replaced; it cannot be a target");
    }
    if (find(target.tag) != nullptr) {
        throw profile_error(0, "tag " + target.tag.to_string() + " is listed twice");
    }
    if (target.how == strategy::pick_allowed && target.allowed.empty() &&
        target.tag == core::tags::patient_sex) {
        target.allowed = sex_values();
    }
    targets_.push_back(std::move(target));
}

const profile_target* deident_profile::find(core::dicom_tag tag) const {
    for (const auto& t : targets_) {
        if (t.tag == tag) {
            return &t;
        }
    }
    return nullptr;
}

const deident_profile& default_profile() {
    static const deident_profile profile = [] {
        namespace t = core::tags;
        deident_profile p;
        p.add({t::patient_name, strategy::text_fill, {}});
        p.add({t::patient_id, strategy::zero_digits, {}});
        p.add({t::patient_birth_date, strategy::fixed_date, {}});
        p.add({t::patient_age, strategy::zero_digits, {}});
        p.add({t::patient_sex, strategy::pick_allowed, sex_values()});
        p.add({t::other_patient_ids, strategy::text_fill, {}});
        p.add({t::accession_number, strategy::zero_digits, {}});
        p.add({t::institution_name, strategy::text_fill, {}});
        p.add({t::referring_physician_name, strategy::text_fill, {}});
        p.add({t::performing_physician_name, strategy::text_fill, {}});
        p.add({t::operators_name, strategy::text_fill, {}});
        p.add({t::patient_address, strategy::text_fill, {}});
        p.add({t::study_instance_uid, strategy::uid_remap, {}});
        p.add({t::series_instance_uid, strategy::uid_remap, {}});
        p.add({t::sop_instance_uid, strategy::uid_remap, {}});
        return p;
    }();
    return profile;
}

deident_profile parse_profile(std::string_view text) {
    deident_profile profile;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto fields = split(line, '\t');
        if (fields.size() < 2 || fields.size() > 3) {
            throw profile_error(line_no, "expected TAG<TAB>STRATEGY[<TAB>ALLOWED]");
        }
        const auto tag = core::dicom_tag::parse(fields[0]);
        if (!tag) {
            throw profile_error(line_no, "bad tag '" + fields[0] + "'");
        }
        const auto how = strategy_from_string(fields[1]);
        if (!how) {
            throw profile_error(line_no, "unknown strategy '" + fields[1] + "'");
        }
        profile_target target{*tag, *how, {}};
        if (fields.size() == 3) {
            if (*how != strategy::pick_allowed) {
                throw profile_error(line_no, "a value list is only meaningful for PickAllowed");
            }
            target.allowed = split(fields[2], '\\');
        }
        try {
            profile.add(std::move(target));
        } catch (const profile_error& e) {
            throw profile_error(line_no, e.what());
        }
    }
    return profile;
}

deident_profile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw profile_error(0, "cannot read profile " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

}  // namespace dcmval::deident
