/**
 * @file registry.cpp
 * @brief Repository loading and cross-reference checks
 */

#include "dcmval/description/registry.hpp"

#include "dcmval/description/parser.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dcmval::description {

namespace fs = std::filesystem;

repository_error::repository_error(repository_errc code, std::string subject, const std::string& what)
    : std::runtime_error(what), code_(code), subject_(std::move(subject)) {}

void registry::add_iod(iod_description iod) {
    auto name = iod.name;
    iods_.insert_or_assign(std::move(name), std::move(iod));
}

void registry::add_module(module_description module) {
    auto name = module.name;
    modules_.insert_or_assign(std::move(name), std::move(module));
}

void registry::add_table(macro_table table) {
    auto id = table.table_id;
    tables_.insert_or_assign(std::move(id), std::move(table));
}

void registry::map_sop_class(std::string sop_class_uid, std::string iod_name) {
    sop_classes_.insert_or_assign(std::move(sop_class_uid), std::move(iod_name));
}

const iod_description* registry::find_iod(std::string_view name) const {
    auto it = iods_.find(name);
    return it == iods_.end() ? nullptr : &it->second;
}

const iod_description* registry::find_iod_by_sop_class(std::string_view uid) const {
    auto it = sop_classes_.find(uid);
    return it == sop_classes_.end() ? nullptr : find_iod(it->second);
}

const module_description* registry::find_module(std::string_view name) const {
    auto it = modules_.find(name);
    return it == modules_.end() ? nullptr : &it->second;
}

const macro_table* registry::find_table(std::string_view id) const {
    auto it = tables_.find(id);
    return it == tables_.end() ? nullptr : &it->second;
}

void registry::check_tables(const std::vector<requirement_entry>& entries,
                            std::vector<std::string>& path) const {
    for (const auto& entry : entries) {
        if (const auto* req = std::get_if<element_requirement>(&entry.node)) {
            if (req->item_requirements) {
                check_tables(*req->item_requirements, path);
            }
            continue;
        }
        const auto& id = std::get<table_include>(entry.node).table_id;
        const auto* table = find_table(id);
        if (table == nullptr) {
            throw repository_error(repository_errc::unresolved_table, id,
                                   "unresolved macro table '" + id + "'");
        }
        if (std::find(path.begin(), path.end(), id) != path.end() ||
            static_cast<int>(path.size()) >= max_table_depth) {
            std::string chain;
            for (const auto& p : path) {
                chain += p + " -> ";
            }
            chain += id;
            throw repository_error(repository_errc::include_cycle, chain,
                                   "macro table include cycle or depth above " +
                                       std::to_string(max_table_depth) + ": " + chain);
        }
        path.push_back(id);
        check_tables(table->requirements, path);
        path.pop_back();
    }
}

void registry::verify() {
    warnings_.clear();
    for (const auto& [uid, name] : sop_classes_) {
        if (find_iod(name) == nullptr) {
            throw repository_error(repository_errc::unresolved_iod, name,
                                   "SOP Class " + uid + " maps to unknown IOD '" + name + "'");
        }
    }
    for (const auto& [id, table] : tables_) {
        std::vector<std::string> path{id};
        check_tables(table.requirements, path);
    }
    for (const auto& [name, module] : modules_) {
        std::vector<std::string> path;
        check_tables(module.requirements, path);
    }
    for (const auto& [name, iod] : iods_) {
        std::set<std::string> iod_ids;
        for (const auto& d : iod.defines) {
            iod_ids.insert(d.id);
        }
        for (const auto& inc : iod.includes) {
            const auto* module = find_module(inc.module_name);
            if (module == nullptr) {
                throw repository_error(repository_errc::unresolved_module, inc.module_name,
                                       "IOD " + name + " includes unknown module '" +
                                           inc.module_name + "'");
            }
            if (inc.cond) {
                std::vector<std::string> refs;
                collect_idrefs(*inc.cond, refs);
                for (const auto& r : refs) {
                    if (!iod_ids.contains(r)) {
                        throw repository_error(repository_errc::unresolved_idref, r,
                                               "IOD " + name + " references undefined precondition '" +
                                                   r + "'");
                    }
                }
            }
            std::set<std::string> scope = iod_ids;
            for (const auto& d : module->defines) {
                scope.insert(d.id);
            }
            for (const auto& r : requirement_idrefs(expand(module->requirements))) {
                if (!scope.contains(r)) {
                    throw repository_error(repository_errc::unresolved_idref, r,
                                           "module " + inc.module_name + " references '" + r +
                                               "', which neither it nor IOD " + name + " defines");
                }
            }
        }
        const bool mapped = std::any_of(sop_classes_.begin(), sop_classes_.end(),
                                        [&](const auto& kv) { return kv.second == name; });
        if (!mapped) {
            warnings_.push_back("UnmappedIodFile: no SOP Class in sopclass-map.txt maps to IOD '" +
                                name + "'");
        }
    }
}

void registry::expand_into(const std::vector<requirement_entry>& entries,
                           std::vector<element_requirement>& out, int depth) const {
    for (const auto& entry : entries) {
        if (const auto* req = std::get_if<element_requirement>(&entry.node)) {
            element_requirement copy = *req;
            if (copy.item_requirements) {
                std::vector<element_requirement> inner;
                expand_into(*copy.item_requirements, inner, depth);
                copy.item_requirements->clear();
                for (auto& r : inner) {
                    copy.item_requirements->push_back({std::move(r)});
                }
            }
            out.push_back(std::move(copy));
            continue;
        }
        const auto& id = std::get<table_include>(entry.node).table_id;
        const auto* table = find_table(id);
        if (table == nullptr) {
            throw repository_error(repository_errc::unresolved_table, id,
                                   "unresolved macro table '" + id + "'");
        }
        if (depth >= max_table_depth) {
            throw repository_error(repository_errc::include_cycle, id,
                                   "macro table expansion deeper than " +
                                       std::to_string(max_table_depth));
        }
        expand_into(table->requirements, out, depth + 1);
    }
}

std::vector<element_requirement> registry::expand(const std::vector<requirement_entry>& entries) const {
    std::vector<element_requirement> out;
    expand_into(entries, out, 0);
    return out;
}

std::vector<std::string> requirement_idrefs(const std::vector<element_requirement>& reqs) {
    std::vector<std::string> out;
    for (const auto& r : reqs) {
        if (r.cond) {
            collect_idrefs(*r.cond, out);
        }
        if (r.item_requirements) {
            std::vector<element_requirement> inner;
            for (const auto& e : *r.item_requirements) {
                if (const auto* er = std::get_if<element_requirement>(&e.node)) {
                    inner.push_back(*er);
                }
            }
            auto nested = requirement_idrefs(inner);
            out.insert(out.end(), nested.begin(), nested.end());
        }
    }
    return out;
}

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw repository_error(repository_errc::io, path.string(), "cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<fs::path> xml_files(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) {
        return out;
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".xml") {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <typename Fn>
auto parse_file_or_throw(const fs::path& path, Fn&& parse) {
    try {
        return parse(read_text(path), path.stem().string());
    } catch (const description_error& e) {
        throw repository_error(repository_errc::parse_failure, path.string(),
                               path.string() + ": " + e.what());
    }
}

}  // namespace

registry load_repository(const fs::path& root) {
    if (!fs::is_directory(root)) {
        throw repository_error(repository_errc::io, root.string(),
                               "repository directory " + root.string() + " does not exist");
    }
    registry reg;
    for (const auto& p : xml_files(root / "iods")) {
        reg.add_iod(parse_file_or_throw(p, [](const std::string& x, std::string n) {
            return parse_iod(x, std::move(n));
        }));
    }
    for (const auto& p : xml_files(root / "modules")) {
        reg.add_module(parse_file_or_throw(p, [](const std::string& x, std::string n) {
            return parse_module(x, std::move(n));
        }));
    }
    for (const auto& p : xml_files(root / "tables")) {
        reg.add_table(parse_file_or_throw(p, [](const std::string& x, std::string n) {
            return parse_table(x, std::move(n));
        }));
    }

    const auto map_path = root / "sopclass-map.txt";
    if (fs::exists(map_path)) {
        std::istringstream in(read_text(map_path));
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
            const auto tab = line.find('\t');
            if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
                throw repository_error(repository_errc::parse_failure, map_path.string(),
                                       map_path.string() + ": line " + std::to_string(line_no) +
                                           ": expected UID<TAB>IOD-name");
            }
            reg.map_sop_class(line.substr(0, tab), line.substr(tab + 1));
        }
    }
    reg.verify();
    return reg;
}

const iod_description* resolve_iod(const registry& reg, std::string_view sop_class_uid) {
    if (sop_class_uid.empty()) {
        return nullptr;
    }
    return reg.find_iod_by_sop_class(sop_class_uid);
}

}  // namespace dcmval::description
