/**
 * @file parser.cpp
 * @brief XML description files to model objects
 */

#include "dcmval/description/parser.hpp"

#include "dcmval/core/dictionary.hpp"
#include "dcmval/description/xml_reader.hpp"
#include "dcmval/validation/vm.hpp"
#include "dcmval/validation/vr_rules.hpp"

#include <algorithm>
#include <set>

namespace dcmval::description {

using core::dicom_tag;
using core::vr_type;

std::string_view to_string(description_errc code) noexcept {
    switch (code) {
        case description_errc::malformed_xml: return "MalformedXml";
        case description_errc::identification_failed: return "IdentificationFailed";
        case description_errc::unknown_element: return "UnknownElement";
        case description_errc::unknown_usage_code: return "UnknownUsageCode";
        case description_errc::duplicate_define_id: return "DuplicateDefineId";
        case description_errc::bad_attribute: return "BadAttribute";
        case description_errc::bad_tag_hex: return "BadTagHex";
        case description_errc::unknown_vr: return "UnknownVr";
        case description_errc::bad_type: return "BadType";
        case description_errc::empty_logical: return "EmptyLogical";
        case description_errc::invalid_allowed_value: return "InvalidAllowedValue";
        case description_errc::unresolved_idref: return "UnresolvedIdref";
        case description_errc::dictionary_mismatch: return "DictionaryMismatch";
        case description_errc::duplicate_element: return "DuplicateElement";
    }
    return "Unknown";
}

description_error::description_error(description_errc code, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), code_(code), line_(line) {}

namespace {

// VRs the rule tables understand; anything else in a description is rejected.
const std::set<std::string, std::less<>> description_vrs{
    "AE", "AS", "CS", "DA", "DS", "DT", "IS", "LO", "LT", "PN", "SH", "SL",
    "SQ", "SS", "ST", "TM", "UI", "UL", "US", "UT", "OB", "OW", "UN"};

bool is_condition_node(const xml_node& n) {
    return n.name == "If" || n.name == "And" || n.name == "Or";
}

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r';
    });
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

class builder {
public:
    std::vector<diagnostic> diags;

    void error(int line, description_errc code, std::string message, bool structural = true) {
        diags.push_back({diagnostic_severity::error, line, code, std::move(message), structural});
    }
    void warning(int line, description_errc code, std::string message) {
        diags.push_back({diagnostic_severity::warning, line, code, std::move(message), false});
    }

    /// Flags attributes outside `allowed`.
    void check_attributes(const xml_node& n, std::initializer_list<std::string_view> allowed) {
        for (const auto& a : n.attributes) {
            if (std::find(allowed.begin(), allowed.end(), a.name) == allowed.end()) {
                error(a.line, description_errc::bad_attribute,
                      "attribute '" + a.name + "' is not allowed on <" + n.name + ">");
            }
        }
    }

    const xml_attribute* required(const xml_node& n, std::string_view name) {
        const auto* a = n.attribute(name);
        if (a == nullptr) {
            error(n.line, description_errc::bad_attribute,
                  "<" + n.name + "> requires attribute '" + std::string(name) + "'");
        }
        return a;
    }

    std::optional<precondition> define(const xml_node& n, std::set<std::string>& seen) {
        check_attributes(n, {"id", "question", "value", "default"});
        for (const auto& child : n.children) {
            error(child.line, description_errc::unknown_element, "<define> cannot contain <" + child.name + ">");
        }
        const auto* id = required(n, "id");
        const auto* question = required(n, "question");
        const auto* value = n.attribute("value");
        const auto* def = n.attribute("default");
        if (value != nullptr && def != nullptr) {
            error(def->line, description_errc::bad_attribute,
                  "<define> gives both 'value' and 'default'");
            return std::nullopt;
        }
        const auto* dv = value != nullptr ? value : def;
        if (dv == nullptr) {
            error(n.line, description_errc::bad_attribute,
                  "<define> requires a 'default' (or 'value') attribute");
        }
        if (id == nullptr || question == nullptr || dv == nullptr) {
            return std::nullopt;
        }
        if (dv->value != "true" && dv->value != "false") {
            error(dv->line, description_errc::bad_attribute,
                  "default must be 'true' or 'false', got '" + dv->value + "'");
            return std::nullopt;
        }
        if (id->value.empty()) {
            error(id->line, description_errc::bad_attribute, "define id is empty");
            return std::nullopt;
        }
        if (!seen.insert(id->value).second) {
            error(id->line, description_errc::duplicate_define_id,
                  "duplicate define id '" + id->value + "'");
            return std::nullopt;
        }
        return precondition{id->value, question->value, dv->value == "true", {n.line}};
    }

    std::optional<condition> parse_condition(const xml_node& n) {
        condition c;
        c.line = {n.line};
        if (n.name == "If") {
            check_attributes(n, {"idref"});
            for (const auto& child : n.children) {
                error(child.line, description_errc::unknown_element, "<If> cannot contain <" + child.name + ">");
            }
            const auto* idref = required(n, "idref");
            if (idref == nullptr) {
                return std::nullopt;
            }
            if (idref->value.empty()) {
                error(idref->line, description_errc::bad_attribute, "idref is empty");
                return std::nullopt;
            }
            c.kind = condition::op::if_;
            c.idref = idref->value;
            c.line = {idref->line};
            return c;
        }
        check_attributes(n, {});
        c.kind = n.name == "And" ? condition::op::and_ : condition::op::or_;
        bool ok = true;
        for (const auto& child : n.children) {
            if (!is_condition_node(child)) {
                error(child.line, description_errc::unknown_element,
                      "<" + n.name + "> can only contain If, And or Or, found <" + child.name + ">");
                ok = false;
                continue;
            }
            auto sub = parse_condition(child);
            if (!sub) {
                ok = false;
                continue;
            }
            c.children.push_back(std::move(*sub));
        }
        if (ok && c.children.size() < 2) {
            error(n.line, description_errc::empty_logical,
                  "<" + n.name + "> needs at least two operands, has " +
                      std::to_string(c.children.size()));
            return std::nullopt;
        }
        return ok ? std::optional<condition>(std::move(c)) : std::nullopt;
    }

    /// At most one condition child; other children are handled by the caller.
    std::optional<condition> condition_child(const xml_node& n, bool& ok) {
        std::optional<condition> result;
        for (const auto& child : n.children) {
            if (!is_condition_node(child)) {
                continue;
            }
            if (result) {
                error(child.line, description_errc::unknown_element,
                      "<" + n.name + "> can carry only one top-level condition");
                ok = false;
                continue;
            }
            result = parse_condition(child);
            if (!result) {
                ok = false;
            }
        }
        return result;
    }

    std::optional<module_include> module_include_node(const xml_node& n) {
        check_attributes(n, {"ie", "module", "usage"});
        const auto* ie = required(n, "ie");
        const auto* mod = required(n, "module");
        const auto* usage = required(n, "usage");
        bool ok = ie != nullptr && mod != nullptr && usage != nullptr;
        for (const auto& child : n.children) {
            if (!is_condition_node(child)) {
                error(child.line, description_errc::unknown_element,
                      "<include> cannot contain <" + child.name + ">");
                ok = false;
            }
        }
        auto cond = condition_child(n, ok);
        std::optional<module_usage> code;
        if (usage != nullptr) {
            code = usage_from_string(usage->value);
            if (!code) {
                error(usage->line, description_errc::unknown_usage_code,
                      "unknown usage code '" + usage->value + "' (expected M, C or U)");
                ok = false;
            }
        }
        if (mod != nullptr && mod->value.empty()) {
            error(mod->line, description_errc::bad_attribute, "module name is empty");
            ok = false;
        }
        if (!ok) {
            return std::nullopt;
        }
        return module_include{ie->value, mod->value, *code, std::move(cond), {n.line}};
    }

    std::optional<table_include> table_include_node(const xml_node& n) {
        check_attributes(n, {"table"});
        for (const auto& child : n.children) {
            error(child.line, description_errc::unknown_element,
                  "<include table> cannot contain <" + child.name + ">");
        }
        const auto* table = required(n, "table");
        if (table == nullptr) {
            return std::nullopt;
        }
        if (table->value.empty()) {
            error(table->line, description_errc::bad_attribute, "table id is empty");
            return std::nullopt;
        }
        return table_include{table->value, {table->line}};
    }

    std::optional<element_requirement> data_element(const xml_node& n) {
        check_attributes(n, {"keyword", "tag", "vr", "vm", "type", "items"});
        element_requirement req;
        req.line = {n.line};
        bool ok = true;

        const auto* keyword = required(n, "keyword");
        const auto* tag = required(n, "tag");
        const auto* vr = required(n, "vr");
        const auto* vm = required(n, "vm");
        const auto* type = required(n, "type");
        ok = keyword && tag && vr && vm && type;

        if (keyword != nullptr) {
            req.keyword = keyword->value;
        }
        if (tag != nullptr) {
            if (auto t = dicom_tag::parse(tag->value)) {
                req.tag = *t;
            } else {
                error(tag->line, description_errc::bad_tag_hex,
                      "tag '" + tag->value + "' is not 8 hexadecimal digits");
                ok = false;
            }
        }
        if (vr != nullptr) {
            auto code = core::vr_from_string(vr->value);
            if (!code || !description_vrs.contains(vr->value)) {
                error(vr->line, description_errc::unknown_vr, "unknown VR '" + vr->value + "'");
                ok = false;
            } else {
                req.vr = *code;
            }
        }
        if (vm != nullptr) {
            if (!validation::parse_vm_spec(vm->value)) {
                error(vm->line, description_errc::bad_attribute, "bad VM '" + vm->value + "'");
                ok = false;
            } else {
                req.vm = vm->value;
            }
        }
        bool conditional_type = false;
        if (type != nullptr) {
            const auto& t = type->value;
            if (t.size() >= 1 && t.size() <= 2 && t[0] >= '1' && t[0] <= '3' &&
                (t.size() == 1 || t[1] == 'C')) {
                req.type = static_cast<element_type>(t[0] - '0');
                conditional_type = t.size() == 2;
            } else {
                error(type->line, description_errc::bad_type,
                      "type '" + t + "' is not one of 1, 2, 3, 1C, 2C, 3C");
                ok = false;
            }
        }

        const bool is_sq = vr != nullptr && vr->value == "SQ";
        if (const auto* items = n.attribute("items")) {
            if (!is_sq) {
                error(items->line, description_errc::bad_attribute,
                      "'items' is only allowed on SQ elements");
                ok = false;
            } else if (!validation::parse_vm_spec(items->value)) {
                error(items->line, description_errc::bad_attribute,
                      "bad item count '" + items->value + "'");
                ok = false;
            } else {
                req.item_count = items->value;
            }
        }

        std::vector<std::pair<std::string, int>> values;
        const xml_node* item_node = nullptr;
        for (const auto& child : n.children) {
            if (is_condition_node(child)) {
                continue;
            }
            if (child.name == "Value") {
                check_attributes(child, {});
                if (is_sq) {
                    error(child.line, description_errc::unknown_element,
                          "SQ elements cannot list <Value>s");
                    ok = false;
                    continue;
                }
                for (const auto& grand : child.children) {
                    error(grand.line, description_errc::unknown_element,
                          "<Value> cannot contain <" + grand.name + ">");
                }
                values.emplace_back(trim(child.text), child.line);
            } else if (child.name == "Item") {
                check_attributes(child, {});
                if (!is_sq) {
                    error(child.line, description_errc::unknown_element,
                          "<Item> is only allowed inside SQ elements");
                    ok = false;
                } else if (item_node != nullptr) {
                    error(child.line, description_errc::unknown_element,
                          "an SQ element describes its items with a single <Item>");
                    ok = false;
                } else {
                    item_node = &child;
                }
            } else {
                error(child.line, description_errc::unknown_element,
                      "<DataElement> cannot contain <" + child.name + ">");
                ok = false;
            }
        }

        req.cond = condition_child(n, ok);
        if (conditional_type && !req.cond) {
            error(type->line, description_errc::bad_type,
                  "type '" + type->value + "' requires a condition (If, And or Or)");
            ok = false;
        }

        if (!values.empty()) {
            req.allowed_values.emplace();
            for (const auto& [v, line] : values) {
                if (ok && !is_sq) {
                    auto defects = validation::check_vr_encoding(req.vr, v);
                    if (!defects.empty()) {
                        error(line, description_errc::invalid_allowed_value,
                              "allowed value '" + v + "' is not a valid " +
                                  std::string(core::to_string(req.vr)) + ": " + defects.front(),
                              false);
                    }
                }
                req.allowed_values->push_back(v);
            }
        }

        if (item_node != nullptr) {
            req.item_requirements = requirement_list(*item_node, "Item");
        } else if (is_sq && ok) {
            req.item_requirements.emplace();
        }

        if (ok) {
            dictionary_check(req, keyword != nullptr ? keyword->line : n.line);
        }
        return ok ? std::optional<element_requirement>(std::move(req)) : std::nullopt;
    }

    void dictionary_check(const element_requirement& req, int line) {
        auto entry = core::dictionary::standard().lookup(req.tag);
        if (!entry) {
            return;
        }
        if (entry->keyword != req.keyword) {
            warning(line, description_errc::dictionary_mismatch,
                    "tag " + req.tag.to_string() + " is " + entry->keyword +
                        " in the dictionary, not " + req.keyword);
        } else if (entry->vr != req.vr) {
            warning(line, description_errc::dictionary_mismatch,
                    req.keyword + " has VR " + std::string(core::to_string(entry->vr)) +
                        " in the dictionary, not " + std::string(core::to_string(req.vr)));
        }
    }

    /// DataElement and include-table children of a Module, Table or Item node.
    std::vector<requirement_entry> requirement_list(const xml_node& parent, std::string_view what) {
        std::vector<requirement_entry> out;
        std::set<dicom_tag> tags_seen;
        for (const auto& child : parent.children) {
            if (child.name == "DataElement") {
                if (auto req = data_element(child)) {
                    if (!tags_seen.insert(req->tag).second) {
                        warning(child.line, description_errc::duplicate_element,
                                "tag " + req->tag.to_string() + " is listed twice in this " +
                                    std::string(what));
                    }
                    out.push_back({std::move(*req)});
                }
            } else if (child.name == "include") {
                if (auto inc = table_include_node(child)) {
                    out.push_back({std::move(*inc)});
                }
            } else if (child.name == "define" && what == "Module") {
                continue;
            } else {
                error(child.line, description_errc::unknown_element,
                      "<" + child.name + "> is not allowed inside <" + std::string(what) + ">");
            }
        }
        return out;
    }

    iod_description iod(const xml_node& root, std::string name) {
        iod_description d;
        d.name = std::move(name);
        check_attributes(root, {});
        std::set<std::string> seen;
        for (const auto& child : root.children) {
            if (child.name == "define") {
                if (auto p = define(child, seen)) {
                    d.defines.push_back(std::move(*p));
                }
            } else if (child.name == "include") {
                if (auto inc = module_include_node(child)) {
                    d.includes.push_back(std::move(*inc));
                }
            } else {
                error(child.line, description_errc::unknown_element,
                      "<" + child.name + "> is not allowed inside <IOD>");
            }
        }
        return d;
    }

    module_description module(const xml_node& root, std::string name) {
        module_description m;
        m.name = std::move(name);
        check_attributes(root, {});
        std::set<std::string> seen;
        for (const auto& child : root.children) {
            if (child.name == "define") {
                if (auto p = define(child, seen)) {
                    m.defines.push_back(std::move(*p));
                }
            }
        }
        m.requirements = requirement_list(root, "Module");
        return m;
    }

    macro_table table(const xml_node& root, std::string id) {
        macro_table t;
        check_attributes(root, {"id"});
        if (const auto* a = root.attribute("id")) {
            if (!id.empty() && a->value != id) {
                warning(a->line, description_errc::bad_attribute,
                        "table id '" + a->value + "' differs from the file name '" + id + "'");
            }
            t.table_id = id.empty() ? a->value : id;
        } else {
            t.table_id = std::move(id);
        }
        t.requirements = requirement_list(root, "Table");
        return t;
    }
};

const xml_options& description_xml_options() {
    static const xml_options opts{{"define"}};
    return opts;
}

const char* root_name(description_kind kind) {
    switch (kind) {
        case description_kind::iod: return "IOD";
        case description_kind::module: return "Module";
        case description_kind::table: return "Table";
        case description_kind::auto_detect: return "IOD, Module or Table";
    }
    return "?";
}

template <typename T>
T parse_as(std::string_view xml, description_kind kind, std::string name) {
    auto outcome = detail::build(xml, kind, std::move(name));
    for (const auto& d : outcome.diagnostics) {
        if (d.severity == diagnostic_severity::error && d.structural) {
            throw description_error(d.code, d.line, d.message);
        }
    }
    return std::get<T>(std::move(outcome.result));
}

}  // namespace

namespace detail {

build_outcome build(std::string_view xml, description_kind kind, std::string name) {
    build_outcome out;
    if (is_blank(xml)) {
        out.diagnostics.push_back({diagnostic_severity::error, 1,
                                   description_errc::identification_failed,
                                   "empty document: cannot identify it as an IOD or Module "
                                   "description", true});
        return out;
    }
    xml_node root;
    try {
        root = parse_xml(xml, description_xml_options());
    } catch (const xml_error& e) {
        out.diagnostics.push_back({diagnostic_severity::error, e.line(),
                                   description_errc::malformed_xml, e.what(), true});
        return out;
    }

    description_kind actual;
    if (root.name == "IOD") {
        actual = description_kind::iod;
    } else if (root.name == "Module") {
        actual = description_kind::module;
    } else if (root.name == "Table") {
        actual = description_kind::table;
    } else {
        out.diagnostics.push_back({diagnostic_severity::error, root.line,
                                   description_errc::identification_failed,
                                   "root element <" + root.name +
                                       "> is neither an IOD, a Module nor a Table description",
                                   true});
        return out;
    }
    if (kind != description_kind::auto_detect && kind != actual) {
        out.diagnostics.push_back({diagnostic_severity::error, root.line,
                                   description_errc::identification_failed,
                                   std::string("expected <") + root_name(kind) + "> root, found <" +
                                       root.name + ">",
                                   true});
        return out;
    }

    builder b;
    switch (actual) {
        case description_kind::iod: out.result = b.iod(root, std::move(name)); break;
        case description_kind::module: out.result = b.module(root, std::move(name)); break;
        default: out.result = b.table(root, std::move(name)); break;
    }
    out.diagnostics = std::move(b.diags);
    std::stable_sort(out.diagnostics.begin(), out.diagnostics.end(),
                     [](const diagnostic& a, const diagnostic& b) { return a.line < b.line; });
    return out;
}

}  // namespace detail

iod_description parse_iod(std::string_view xml, std::string name) {
    return parse_as<iod_description>(xml, description_kind::iod, std::move(name));
}

module_description parse_module(std::string_view xml, std::string name) {
    return parse_as<module_description>(xml, description_kind::module, std::move(name));
}

macro_table parse_table(std::string_view xml, std::string table_id) {
    return parse_as<macro_table>(xml, description_kind::table, std::move(table_id));
}

}  // namespace dcmval::description
