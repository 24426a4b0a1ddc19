/**
 * @file lint.cpp
 * @brief Description-file linter
 */

#include "dcmval/description/lint.hpp"

#include "dcmval/description/registry.hpp"

#include <algorithm>
#include <variant>

namespace dcmval::description {

namespace {

struct idref_use {
    std::string id;
    int line;
};

void collect_uses(const condition& cond, std::vector<idref_use>& out) {
    if (cond.kind == condition::op::if_) {
        out.push_back({cond.idref, cond.line.value});
        return;
    }
    for (const auto& c : cond.children) {
        collect_uses(c, out);
    }
}

void collect_uses(const std::vector<requirement_entry>& entries, std::vector<idref_use>& out) {
    for (const auto& e : entries) {
        const auto* req = std::get_if<element_requirement>(&e.node);
        if (req == nullptr) {
            continue;
        }
        if (req->cond) {
            collect_uses(*req->cond, out);
        }
        if (req->item_requirements) {
            collect_uses(*req->item_requirements, out);
        }
    }
}

std::set<std::string> ids_of(const std::vector<precondition>& defines) {
    std::set<std::string> out;
    for (const auto& d : defines) {
        out.insert(d.id);
    }
    return out;
}

void check_foreign(const std::vector<idref_use>& uses, const std::set<std::string>& local,
                   const lint_context* ctx, std::vector<diagnostic>& out) {
    for (const auto& use : uses) {
        if (local.contains(use.id)) {
            continue;
        }
        if (ctx == nullptr) {
            out.push_back({diagnostic_severity::warning, use.line, description_errc::unresolved_idref,
                           "precondition id '" + use.id +
                               "' is not defined locally; it must be defined by every IOD "
                               "including this description",
                           false});
            continue;
        }
        if (ctx->iod_define_ids.contains(use.id)) {
            continue;
        }
        std::string owner;
        auto [first, last] = ctx->module_define_owners.equal_range(use.id);
        for (auto it = first; it != last; ++it) {
            if (it->second != ctx->self_name) {
                owner = it->second;
                break;
            }
        }
        std::string msg = "unresolved precondition id '" + use.id + "'";
        if (!owner.empty()) {
            msg += ": it is local to module " + owner;
        }
        out.push_back({diagnostic_severity::error, use.line, description_errc::unresolved_idref,
                       std::move(msg), false});
    }
}

}  // namespace

lint_context make_lint_context(const registry& reg, std::string self_name) {
    lint_context ctx;
    ctx.self_name = std::move(self_name);
    for (const auto& [name, iod] : reg.iods()) {
        for (const auto& d : iod.defines) {
            ctx.iod_define_ids.insert(d.id);
        }
    }
    for (const auto& [name, module] : reg.modules()) {
        for (const auto& d : module.defines) {
            ctx.module_define_owners.emplace(d.id, name);
        }
    }
    return ctx;
}

std::vector<diagnostic> lint(std::string_view xml, description_kind kind, const lint_context* ctx) {
    auto outcome = detail::build(xml, kind, {});
    auto diags = std::move(outcome.diagnostics);

    std::vector<idref_use> uses;
    if (const auto* iod = std::get_if<iod_description>(&outcome.result)) {
        for (const auto& inc : iod->includes) {
            if (inc.cond) {
                collect_uses(*inc.cond, uses);
            }
        }
        const auto local = ids_of(iod->defines);
        for (const auto& use : uses) {
            if (!local.contains(use.id)) {
                diags.push_back({diagnostic_severity::error, use.line,
                                 description_errc::unresolved_idref,
                                 "unresolved precondition id '" + use.id + "'", false});
            }
        }
    } else if (const auto* module = std::get_if<module_description>(&outcome.result)) {
        collect_uses(module->requirements, uses);
        check_foreign(uses, ids_of(module->defines), ctx, diags);
    } else if (const auto* table = std::get_if<macro_table>(&outcome.result)) {
        collect_uses(table->requirements, uses);
        check_foreign(uses, {}, ctx, diags);
    }

    std::stable_sort(diags.begin(), diags.end(),
                     [](const diagnostic& a, const diagnostic& b) { return a.line < b.line; });
    return diags;
}

std::string format_lint_machine(const std::vector<diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
        out += d.severity == diagnostic_severity::error ? "ERROR" : "WARNING";
        out += '\t';
        out += std::to_string(d.line);
        out += '\t';
        out += d.message;
        out += '\n';
    }
    return out;
}

bool has_errors(const std::vector<diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const diagnostic& d) {
        return d.severity == diagnostic_severity::error;
    });
}

}  // namespace dcmval::description
