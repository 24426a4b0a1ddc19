/**
 * @file engine.cpp
 * @brief Validation engine
 */

#include "dcmval/validation/engine.hpp"

#include "dcmval/validation/vm.hpp"
#include "dcmval/validation/vr_rules.hpp"

#include <algorithm>
#include <unordered_set>

namespace dcmval::validation {

using core::data_element;
using core::data_set;
using core::vr_type;
using description::element_requirement;
using description::element_type;

std::string_view to_string(severity s) noexcept {
    return s == severity::error ? "Error" : "Warning";
}

std::string_view to_string(finding_kind k) noexcept {
    switch (k) {
        case finding_kind::missing_type1: return "MissingType1";
        case finding_kind::empty_type1: return "EmptyType1";
        case finding_kind::missing_type2: return "MissingType2";
        case finding_kind::vr_mismatch: return "VrMismatch";
        case finding_kind::vm_violation: return "VmViolation";
        case finding_kind::value_not_allowed: return "ValueNotAllowed";
        case finding_kind::encoding_invalid: return "EncodingInvalid";
        case finding_kind::condition_violated_missing: return "ConditionViolatedMissing";
        case finding_kind::type3_non_conformant: return "Type3NonConformant";
        case finding_kind::item_count_violation: return "ItemCountViolation";
        case finding_kind::unexpected_conditional: return "UnexpectedConditional";
    }
    return "?";
}

namespace {

constexpr std::array<std::pair<category, std::string_view>, 5> category_codes{{
    {category::valid, "VALID"},
    {category::warning, "WARNING"},
    {category::skipped, "SKIPPED"},
    {category::unsatisfied_condition, "UNSATISFIED_CONDITION"},
    {category::has_errors, "HAS_ERRORS"},
}};

}  // namespace

std::string_view to_string(category c) noexcept {
    for (const auto& [value, code] : category_codes) {
        if (value == c) {
            return code;
        }
    }
    return "?";
}

std::optional<category> category_from_string(std::string_view code) noexcept {
    for (const auto& [value, text] : category_codes) {
        if (text == code) {
            return value;
        }
    }
    return std::nullopt;
}

category_counts validation_report::summary() const {
    category_counts c;
    for (const auto& m : modules) {
        switch (m.result) {
            case category::valid: ++c.valid; break;
            case category::warning: ++c.warning; break;
            case category::skipped: ++c.skipped; break;
            case category::unsatisfied_condition: ++c.unsatisfied_condition; break;
            case category::has_errors: ++c.has_errors; break;
        }
    }
    return c;
}

const module_result* validation_report::find_module(std::string_view name) const {
    for (const auto& m : modules) {
        if (m.name == name) {
            return &m;
        }
    }
    return nullptr;
}

namespace {

std::string_view as_text(const data_element& e) {
    return {reinterpret_cast<const char*>(e.value.data()), e.value.size()};
}

bool is_empty_value(const data_element& e, vr_type vr) {
    if (e.is_sequence()) {
        return e.items.empty();
    }
    if (e.value.empty()) {
        return true;
    }
    if (core::is_text(vr)) {
        return std::all_of(e.value.begin(), e.value.end(),
                           [](std::uint8_t b) { return b == ' ' || b == 0; });
    }
    return false;
}

std::string type_label(const element_requirement& req) {
    auto label = std::to_string(static_cast<int>(req.type));
    if (req.cond) {
        label += 'C';
    }
    return label;
}

int type_rank(const element_requirement& req) {
    return (static_cast<int>(req.type) - 1) * 2 + (req.cond ? 1 : 0);
}

std::string join(const std::vector<std::string>& values) {
    std::string out;
    for (const auto& v : values) {
        out += out.empty() ? "" : ", ";
        out += v;
    }
    return out;
}

struct defect {
    finding_kind kind;
    std::string message;
};

/// Content checks for a present, non-empty element.
std::vector<defect> content_defects(const data_element& e, const element_requirement& req) {
    std::vector<defect> out;
    const bool compatible = e.vr == req.vr || e.vr == vr_type::UN;
    if (!compatible) {
        out.push_back({finding_kind::vr_mismatch, "VR is " + std::string(core::to_string(e.vr)) +
                                                      ", expected " +
                                                      std::string(core::to_string(req.vr))});
        return out;
    }
    if (req.vr == vr_type::SQ) {
        return out;
    }
    const auto count = value_count(e, req.vr);
    bool vm_ok = true;
    try {
        vm_ok = check_vm(req.vm, count);
    } catch (const bad_vm_spec&) {
        vm_ok = false;
    }
    if (!vm_ok) {
        out.push_back({finding_kind::vm_violation,
                       std::to_string(count) + " value(s), VM must be " + req.vm});
    }
    if (req.allowed_values && core::is_text(req.vr)) {
        for (const auto& v : split_values(req.vr, as_text(e))) {
            const auto& allowed = *req.allowed_values;
            if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
                out.push_back({finding_kind::value_not_allowed,
                               "value '" + v + "' is not one of [" + join(allowed) + "]"});
            }
        }
    }
    for (auto& d : check_vr_encoding(req.vr, std::span<const std::uint8_t>(e.value))) {
        out.push_back({finding_kind::encoding_invalid, std::move(d)});
    }
    return out;
}

finding make_finding(const element_requirement& req, severity level, finding_kind kind,
                     std::string message, const std::string& path) {
    return {req.tag, req.keyword, level, kind, std::move(message), path};
}

/// Type 1/2 defects stay errors; type 3 defects become Type3NonConformant warnings.
finding graded(const element_requirement& req, defect d, const std::string& path) {
    if (req.type == element_type::type3) {
        return make_finding(req, severity::warning, finding_kind::type3_non_conformant,
                            std::string(to_string(d.kind)) + ": " + d.message, path);
    }
    return make_finding(req, severity::error, d.kind, std::move(d.message), path);
}

std::vector<element_requirement> item_requirements(const element_requirement& req) {
    std::vector<element_requirement> out;
    if (!req.item_requirements) {
        return out;
    }
    for (const auto& entry : *req.item_requirements) {
        if (const auto* r = std::get_if<element_requirement>(&entry.node)) {
            out.push_back(*r);
        }
    }
    return out;
}

}  // namespace

std::vector<finding> validate_requirement(const data_set& data, const element_requirement& req,
                                          const answers& given, const precondition_defaults& defaults,
                                          const std::string& path, std::set<std::string>* consulted) {
    std::vector<finding> out;
    const data_element* e = data.find(req.tag);
    const bool applies = !req.cond || evaluate_condition(*req.cond, given, defaults, consulted);

    if (!applies) {
        if (e != nullptr) {
            if (req.type == element_type::type3) {
                out.push_back(make_finding(req, severity::warning, finding_kind::type3_non_conformant,
                                           "UnexpectedConditional: type 3C element is present "
                                           "although its condition is not met",
                                           path));
            } else {
                out.push_back(make_finding(req, severity::error, finding_kind::unexpected_conditional,
                                           "type " + type_label(req) +
                                               " element is present although its condition is not met",
                                           path));
            }
        }
        return out;
    }

    if (e == nullptr) {
        if (req.type == element_type::type3) {
            return out;
        }
        if (req.cond) {
            out.push_back(make_finding(req, severity::error, finding_kind::condition_violated_missing,
                                       "condition is met but type " + type_label(req) +
                                           " element is absent",
                                       path));
        } else if (req.type == element_type::type1) {
            out.push_back(make_finding(req, severity::error, finding_kind::missing_type1,
                                       "type 1 element is absent", path));
        } else {
            out.push_back(make_finding(req, severity::error, finding_kind::missing_type2,
                                       "type 2 element is absent", path));
        }
        return out;
    }

    if (is_empty_value(*e, req.vr)) {
        if (req.type == element_type::type1) {
            out.push_back(make_finding(req, severity::error, finding_kind::empty_type1,
                                       "type " + type_label(req) + " element has no value", path));
        }
        return out;
    }

    for (auto& d : content_defects(*e, req)) {
        out.push_back(graded(req, std::move(d), path));
    }

    if (req.vr == vr_type::SQ && e->is_sequence()) {
        if (req.item_count) {
            bool ok = true;
            try {
                ok = check_vm(*req.item_count, e->items.size());
            } catch (const bad_vm_spec&) {
                ok = false;
            }
            if (!ok) {
                out.push_back(graded(req,
                                     {finding_kind::item_count_violation,
                                      std::to_string(e->items.size()) + " item(s), expected " +
                                          *req.item_count},
                                     path));
            }
        }
        const auto inner = item_requirements(req);
        for (std::size_t i = 0; i < e->items.size(); ++i) {
            const auto item_path = (path.empty() ? "" : path + ".") + req.tag.to_string() + "[" +
                                   std::to_string(i) + "]";
            for (const auto& r : inner) {
                auto nested = validate_requirement(e->items[i], r, given, defaults, item_path, consulted);
                out.insert(out.end(), std::make_move_iterator(nested.begin()),
                           std::make_move_iterator(nested.end()));
            }
        }
    }
    return out;
}

category categorize(const std::vector<finding>& findings) noexcept {
    bool warning = false;
    for (const auto& f : findings) {
        if (f.level == severity::error) {
            return category::has_errors;
        }
        warning = true;
    }
    return warning ? category::warning : category::valid;
}

std::vector<finding> validate_module(const data_set& data, const description::module_description& module,
                                     const description::registry& reg, const answers& given,
                                     const precondition_defaults& iod_defaults,
                                     std::set<std::string>* consulted) {
    auto defaults = iod_defaults;
    for (const auto& d : module.defines) {
        defaults.insert_or_assign(d.id, d.default_value);
    }
    const auto reqs = reg.expand(module.requirements);

    std::vector<std::size_t> order(reqs.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ra = type_rank(reqs[a]);
        const auto rb = type_rank(reqs[b]);
        return ra != rb ? ra < rb : reqs[a].tag < reqs[b].tag;
    });

    std::vector<finding> out;
    for (auto i : order) {
        auto f = validate_requirement(data, reqs[i], given, defaults, {}, consulted);
        out.insert(out.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    }
    return out;
}

std::vector<std::string> unknown_modules(const description::iod_description& iod, const selection& sel) {
    std::vector<std::string> out;
    if (sel.all) {
        return out;
    }
    for (const auto& name : sel.modules) {
        if (iod.find_include(name) == nullptr) {
            out.push_back(name);
        }
    }
    return out;
}

std::vector<description::precondition> collect_questions(const description::iod_description& iod,
                                                         const description::registry& reg,
                                                         const selection& sel) {
    std::vector<description::precondition> out;
    std::unordered_set<std::string> seen;

    std::set<std::string> referenced;
    for (const auto& inc : iod.includes) {
        if (!sel.contains(inc.module_name)) {
            continue;
        }
        std::vector<std::string> ids;
        if (inc.cond) {
            description::collect_idrefs(*inc.cond, ids);
        }
        if (const auto* module = reg.find_module(inc.module_name)) {
            auto more = description::requirement_idrefs(reg.expand(module->requirements));
            ids.insert(ids.end(), more.begin(), more.end());
        }
        referenced.insert(ids.begin(), ids.end());
    }
    for (const auto& d : iod.defines) {
        if (referenced.contains(d.id) && seen.insert(d.id).second) {
            out.push_back(d);
        }
    }
    for (const auto& inc : iod.includes) {
        if (!sel.contains(inc.module_name)) {
            continue;
        }
        if (const auto* module = reg.find_module(inc.module_name)) {
            for (const auto& d : module->defines) {
                if (seen.insert(d.id).second) {
                    out.push_back(d);
                }
            }
        }
    }
    return out;
}

precondition_defaults scope_defaults(const description::iod_description& iod,
                                     const description::registry& reg) {
    precondition_defaults out;
    for (const auto& d : iod.defines) {
        out.emplace(d.id, d.default_value);
    }
    for (const auto& inc : iod.includes) {
        if (const auto* module = reg.find_module(inc.module_name)) {
            for (const auto& d : module->defines) {
                out.emplace(d.id, d.default_value);
            }
        }
    }
    return out;
}

std::vector<std::string> unknown_answer_keys(const description::iod_description& iod,
                                             const description::registry& reg, const answers& given) {
    const auto scope = scope_defaults(iod, reg);
    std::vector<std::string> out;
    for (const auto& [id, value] : given) {
        if (!scope.contains(id)) {
            out.push_back(id);
        }
    }
    return out;
}

validation_report validate(const data_set& data, const description::iod_description& iod,
                           const description::registry& reg, const selection& sel,
                           const answers& given) {
    validation_report report;
    report.iod_name = iod.name;
    if (auto uid = core::get_string(data, core::tags::sop_class_uid)) {
        report.sop_class_uid = *uid;
    }

    precondition_defaults iod_defaults;
    for (const auto& d : iod.defines) {
        iod_defaults.emplace(d.id, d.default_value);
    }

    std::set<std::string> consulted;
    precondition_defaults all_defaults = iod_defaults;
    for (const auto& inc : iod.includes) {
        module_result result{inc.module_name, inc.ie, category::valid, {}};
        if (!sel.contains(inc.module_name)) {
            result.result = category::skipped;
        } else if (inc.cond && !evaluate_condition(*inc.cond, given, iod_defaults, &consulted)) {
            result.result = category::unsatisfied_condition;
        } else {
            const auto* module = reg.find_module(inc.module_name);
            if (module == nullptr) {
                throw unresolved_module("UnresolvedModule: " + inc.module_name);
            }
            for (const auto& d : module->defines) {
                all_defaults.emplace(d.id, d.default_value);
            }
            result.findings = validate_module(data, *module, reg, given, iod_defaults, &consulted);
            result.result = categorize(result.findings);
        }
        report.modules.push_back(std::move(result));
    }

    for (const auto& id : consulted) {
        auto it = given.find(id);
        report.answers_used[id] = it != given.end() ? it->second : all_defaults.at(id);
    }
    return report;
}

}  // namespace dcmval::validation
