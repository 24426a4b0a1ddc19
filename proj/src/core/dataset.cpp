/**
 * @file dataset.cpp
 * @brief data_set container and text helpers
 */

#include "dcmval/core/dataset.hpp"

#include <algorithm>

namespace dcmval::core {

bool data_element::empty() const noexcept {
    return is_sequence() ? items.empty() : value.empty();
}

const data_element* data_set::find(dicom_tag tag) const {
    auto it = elements_.find(tag);
    return it == elements_.end() ? nullptr : &it->second;
}

data_element* data_set::find(dicom_tag tag) {
    auto it = elements_.find(tag);
    return it == elements_.end() ? nullptr : &it->second;
}

void data_set::set(data_element element) {
    const auto tag = element.tag;
    elements_.insert_or_assign(tag, std::move(element));
}

bool same_content(const data_element& a, const data_element& b) {
    if (a.tag != b.tag || a.vr != b.vr || a.value != b.value || a.items.size() != b.items.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        if (!same_content(a.items[i], b.items[i])) {
            return false;
        }
    }
    return true;
}

bool same_content(const data_set& a, const data_set& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) {
               return same_content(x.second, y.second);
           });
}

data_element make_text_element(dicom_tag tag, vr_type vr, std::string_view text) {
    data_element e;
    e.tag = tag;
    e.vr = vr;
    e.value.assign(text.begin(), text.end());
    if (e.value.size() % 2 != 0) {
        e.value.push_back(pad_byte(vr));
    }
    return e;
}

data_element make_sequence(dicom_tag tag, std::vector<data_set> items, bool undefined_length) {
    data_element e;
    e.tag = tag;
    e.vr = vr_type::SQ;
    e.items = std::move(items);
    e.undefined_length = undefined_length;
    return e;
}

std::string trimmed_text(const data_element& element) {
    std::string s(element.value.begin(), element.value.end());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\0')) {
        s.pop_back();
    }
    return s;
}

std::optional<std::string> get_string(const data_set& data, dicom_tag tag) {
    const auto* e = data.find(tag);
    if (e == nullptr) {
        return std::nullopt;
    }
    if (!is_text(e->vr)) {
        throw not_text_vr("element " + tag.to_string() + " has non-text VR " +
                          std::string(to_string(e->vr)));
    }
    return trimmed_text(*e);
}

}  // namespace dcmval::core
