/**
 * @file printer.cpp
 * @brief Model to XML
 */

#include "dcmval/description/printer.hpp"

#include "dcmval/description/xml_reader.hpp"

#include <sstream>

namespace dcmval::description {

namespace {

std::string indent(int depth) {
    return std::string(static_cast<std::size_t>(depth) * 4, ' ');
}

void print_condition(std::ostringstream& out, const condition& c, int depth) {
    switch (c.kind) {
        case condition::op::if_:
            out << indent(depth) << "<If idref=\"" << xml_escape(c.idref) << "\" />\n";
            return;
        case condition::op::and_:
        case condition::op::or_: {
            const char* name = c.kind == condition::op::and_ ? "And" : "Or";
            out << indent(depth) << '<' << name << ">\n";
            for (const auto& child : c.children) {
                print_condition(out, child, depth + 1);
            }
            out << indent(depth) << "</" << name << ">\n";
            return;
        }
    }
}

void print_define(std::ostringstream& out, const precondition& p, int depth) {
    out << indent(depth) << "<define id=\"" << xml_escape(p.id) << "\" question=\""
        << xml_escape(p.question) << "\" default=\"" << (p.default_value ? "true" : "false")
        << "\" />\n";
}

void print_requirements(std::ostringstream& out, const std::vector<requirement_entry>& reqs,
                        int depth);

void print_element(std::ostringstream& out, const element_requirement& r, int depth) {
    out << indent(depth) << "<DataElement keyword=\"" << xml_escape(r.keyword) << "\" tag=\""
        << r.tag.to_string() << "\" vr=\"" << core::to_string(r.vr) << "\" vm=\""
        << xml_escape(r.vm) << "\" type=\"" << static_cast<int>(r.type) << (r.cond ? "C" : "")
        << '"';
    if (r.item_count) {
        out << " items=\"" << xml_escape(*r.item_count) << '"';
    }
    const bool has_body = r.cond || r.allowed_values || r.item_requirements;
    if (!has_body) {
        out << " />\n";
        return;
    }
    out << ">\n";
    if (r.cond) {
        print_condition(out, *r.cond, depth + 1);
    }
    if (r.allowed_values) {
        for (const auto& v : *r.allowed_values) {
            out << indent(depth + 1) << "<Value>" << xml_escape(v) << "</Value>\n";
        }
    }
    if (r.item_requirements) {
        out << indent(depth + 1) << "<Item>\n";
        print_requirements(out, *r.item_requirements, depth + 2);
        out << indent(depth + 1) << "</Item>\n";
    }
    out << indent(depth) << "</DataElement>\n";
}

void print_requirements(std::ostringstream& out, const std::vector<requirement_entry>& reqs,
                        int depth) {
    for (const auto& entry : reqs) {
        if (const auto* r = std::get_if<element_requirement>(&entry.node)) {
            print_element(out, *r, depth);
        } else {
            out << indent(depth) << "<include table=\""
                << xml_escape(std::get<table_include>(entry.node).table_id) << "\" />\n";
        }
    }
}

}  // namespace

std::string print_iod(const iod_description& iod) {
    std::ostringstream out;
    out << "<IOD>\n";
    for (const auto& d : iod.defines) {
        print_define(out, d, 1);
    }
    for (const auto& inc : iod.includes) {
        out << indent(1) << "<include ie=\"" << xml_escape(inc.ie) << "\" module=\""
            << xml_escape(inc.module_name) << "\" usage=\"" << to_string(inc.usage) << '"';
        if (inc.cond) {
            out << ">\n";
            print_condition(out, *inc.cond, 2);
            out << indent(1) << "</include>\n";
        } else {
            out << " />\n";
        }
    }
    out << "</IOD>\n";
    return out.str();
}

std::string print_module(const module_description& module) {
    std::ostringstream out;
    out << "<Module>\n";
    for (const auto& d : module.defines) {
        print_define(out, d, 1);
    }
    print_requirements(out, module.requirements, 1);
    out << "</Module>\n";
    return out.str();
}

std::string print_table(const macro_table& table) {
    std::ostringstream out;
    out << "<Table id=\"" << xml_escape(table.table_id) << "\">\n";
    print_requirements(out, table.requirements, 1);
    out << "</Table>\n";
    return out.str();
}

}  // namespace dcmval::description
