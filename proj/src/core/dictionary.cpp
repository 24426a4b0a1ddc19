/**
 * @file dictionary.cpp
 * @brief Dictionary lookup and external dictionary loading
 */

#include "dcmval/core/dictionary.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace dcmval::core {

namespace detail {
struct raw_entry {
    std::uint16_t group;
    std::uint16_t element;
    const char* keyword;
    const char* vr;
    const char* vm;
};
// dictionary_data.cpp
extern const raw_entry embedded_entries[];
extern const std::size_t embedded_entry_count;
}  // namespace detail

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, '\t')) {
        out.push_back(field);
    }
    return out;
}

std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) {
        s.pop_back();
    }
    std::size_t i = 0;
    while (i < s.size() && s[i] == ' ') {
        ++i;
    }
    return s.substr(i);
}

}  // namespace

const dictionary& dictionary::standard() {
    static const dictionary instance = [] {
        dictionary d;
        for (std::size_t i = 0; i < detail::embedded_entry_count; ++i) {
            const auto& r = detail::embedded_entries[i];
            d.add({r.group, r.element}, {r.keyword, *vr_from_string(r.vr), r.vm});
        }
        return d;
    }();
    return instance;
}

void dictionary::add(dicom_tag tag, dictionary_entry entry) {
    auto kw = by_keyword_.find(entry.keyword);
    if (kw != by_keyword_.end() && kw->second != tag) {
        throw dictionary_error("keyword " + entry.keyword + " already maps to " +
                               kw->second.to_string());
    }
    if (auto old = entries_.find(tag); old != entries_.end()) {
        by_keyword_.erase(old->second.keyword);
    }
    by_keyword_[entry.keyword] = tag;
    entries_.insert_or_assign(tag, std::move(entry));
}

dictionary dictionary::parse(std::string_view text, const dictionary& base) {
    dictionary d = base;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto fields = split_tabs(line);
        if (fields.size() != 4) {
            throw dictionary_error("line " + std::to_string(line_no) +
                                   ": expected TAG, KEYWORD, VR and VM separated by tabs");
        }
        auto tag = dicom_tag::parse(strip(fields[0]));
        if (!tag) {
            throw dictionary_error("line " + std::to_string(line_no) + ": bad tag '" +
                                   fields[0] + "'");
        }
        auto vr = vr_from_string(strip(fields[2]));
        if (!vr) {
            throw dictionary_error("line " + std::to_string(line_no) + ": unknown VR '" +
                                   fields[2] + "'");
        }
        d.add(*tag, {strip(fields[1]), *vr, strip(fields[3])});
    }
    return d;
}

dictionary dictionary::load(const std::filesystem::path& path, const dictionary& base) {
    std::ifstream in(path);
    if (!in) {
        throw dictionary_error("cannot read dictionary file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), base);
}

std::optional<dictionary_entry> dictionary::lookup(dicom_tag tag) const {
    if (tag.is_private()) {
        return std::nullopt;
    }
    auto it = entries_.find(tag);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<dicom_tag> dictionary::find_keyword(std::string_view keyword) const {
    auto it = by_keyword_.find(std::string(keyword));
    if (it == by_keyword_.end()) {
        return std::nullopt;
    }
    return it->second;
}

vr_type dictionary::implicit_vr(dicom_tag tag) const {
    if (auto e = lookup(tag)) {
        return e->vr;
    }
    if (tag.element == 0x0000) {
        return vr_type::UL;
    }
    return vr_type::UN;
}

std::optional<dictionary_entry> dictionary_lookup(dicom_tag tag) {
    return dictionary::standard().lookup(tag);
}

}  // namespace dcmval::core
