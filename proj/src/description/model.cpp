/**
 * @file model.cpp
 * @brief Description model helpers
 */

#include "dcmval/description/model.hpp"

#include <array>

namespace dcmval::description {

void collect_idrefs(const condition& cond, std::vector<std::string>& out) {
    if (cond.kind == condition::op::if_) {
        out.push_back(cond.idref);
        return;
    }
    for (const auto& child : cond.children) {
        collect_idrefs(child, out);
    }
}

std::string_view to_string(module_usage usage) noexcept {
    switch (usage) {
        case module_usage::mandatory: return "M";
        case module_usage::conditional: return "C";
        case module_usage::user_optional: return "U";
    }
    return "?";
}

std::optional<module_usage> usage_from_string(std::string_view code) noexcept {
    if (code == "M") return module_usage::mandatory;
    if (code == "C") return module_usage::conditional;
    if (code == "U") return module_usage::user_optional;
    return std::nullopt;
}

bool element_requirement::operator==(const element_requirement& o) const {
    return keyword == o.keyword && tag == o.tag && vr == o.vr && vm == o.vm && type == o.type &&
           cond == o.cond && allowed_values == o.allowed_values &&
           item_requirements == o.item_requirements && item_count == o.item_count;
}

const module_include* iod_description::find_include(std::string_view module_name) const {
    for (const auto& inc : includes) {
        if (inc.module_name == module_name) {
            return &inc;
        }
    }
    return nullptr;
}

}  // namespace dcmval::description
