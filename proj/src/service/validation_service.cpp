/**
 * @file validation_service.cpp
 * @brief Session store and protocol handlers
 */

#include "dcmval/service/validation_service.hpp"

#include "dcmval/core/part10.hpp"
#include "dcmval/deident/deidentifier.hpp"
#include "dcmval/validation/report_format.hpp"

#include <cstdio>

namespace dcmval::service {

namespace {

constexpr std::size_t max_tombstones = 100000;

}  // namespace

std::string_view to_string(session_state s) noexcept {
    switch (s) {
        case session_state::awaiting_selection: return "AwaitingSelection";
        case session_state::awaiting_answers: return "AwaitingAnswers";
        case session_state::completed: return "Completed";
    }
    return "?";
}

service_response error_response(int status, std::string_view code, std::string_view message) {
    nlohmann::ordered_json body;
    body["error"] = std::string(code);
    body["message"] = std::string(message);
    return {status, std::move(body)};
}

validation_service::validation_service(std::shared_ptr<const description::registry> reg,
                                       service_config config, clock_fn clock)
    : config_(config),
      clock_(clock ? std::move(clock) : clock_fn([] { return std::chrono::steady_clock::now(); })),
      registry_(std::move(reg)),
      rng_(std::random_device{}()) {}

void validation_service::set_registry(std::shared_ptr<const description::registry> reg) {
    std::lock_guard guard(mutex_);
    registry_ = std::move(reg);
}

std::size_t validation_service::session_count() const {
    std::lock_guard guard(mutex_);
    return sessions_.size();
}

std::string validation_service::new_id() {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                  static_cast<unsigned long long>(rng_()));
    return buf;
}

bool validation_service::expired(const session& s) const {
    return clock_() - s.created >= config_.session_ttl;
}

void validation_service::tombstone(const std::string& id) {
    if (tombstones_.insert(id).second) {
        tombstone_order_.push_back(id);
    }
    while (tombstone_order_.size() > max_tombstones) {
        tombstones_.erase(tombstone_order_.front());
        tombstone_order_.pop_front();
    }
}

std::size_t validation_service::purge_expired() {
    std::lock_guard guard(mutex_);
    std::size_t removed = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        if (expired(*it->second)) {
            tombstone(it->first);
            it = sessions_.erase(it);
            ++removed;
        } else {
            ++it;
        }
    }
    return removed;
}

service_response validation_service::configure(std::span<const std::uint8_t> file) {
    if (file.size() > config_.max_upload) {
        return error_response(413, "FileTooLarge",
                              "upload of " + std::to_string(file.size()) + " bytes exceeds the limit of " +
                                  std::to_string(config_.max_upload));
    }
    purge_expired();

    core::dicom_file parsed;
    try {
        parsed = core::parse_file(file);
    } catch (const core::parse_error& e) {
        return error_response(400, "ParseFailure", e.what());
    }
    if (config_.server_deident) {
        deident::uid_map uids(deident::random_seed());
        parsed = deident::deidentify_file(parsed, deident::default_profile(), uids, true);
    }

    std::optional<std::string> uid;
    try {
        uid = core::get_string(parsed.data, core::tags::sop_class_uid);
        if (!uid) {
            uid = core::get_string(parsed.meta.elements, core::tags::media_storage_sop_class_uid);
        }
    } catch (const core::not_text_vr& e) {
        return error_response(400, "ParseFailure", e.what());
    }

    std::shared_ptr<const description::registry> reg;
    {
        std::lock_guard guard(mutex_);
        reg = registry_;
    }
    const auto* iod = uid ? description::resolve_iod(*reg, *uid) : nullptr;
    if (iod == nullptr) {
        return error_response(422, "UnknownSopClass",
                              uid ? "no IOD description is mapped to SOP Class " + *uid
                                  : "the file carries no SOP Class UID");
    }

    auto s = std::make_shared<session>();
    s->data = std::move(parsed.data);
    s->sop_class_uid = *uid;
    s->reg = reg;
    s->iod = iod;
    s->created = clock_();

    {
        std::lock_guard guard(mutex_);
        do {
            s->id = new_id();
        } while (sessions_.contains(s->id) || tombstones_.contains(s->id));
        sessions_.emplace(s->id, s);
    }

    nlohmann::ordered_json body;
    body["validationId"] = s->id;
    body["sopClassUid"] = s->sop_class_uid;
    body["iodName"] = iod->name;
    auto modules = nlohmann::ordered_json::array();
    for (const auto& inc : iod->includes) {
        modules.push_back({{"name", inc.module_name},
                           {"ie", inc.ie},
                           {"usage", std::string(description::to_string(inc.usage))}});
    }
    body["modules"] = std::move(modules);
    body["options"] = {{"useDefaultsAvailable", true}};
    return {200, std::move(body)};
}

validation_service::lookup validation_service::find_session(const nlohmann::json& request) {
    if (!request.is_object() || !request.contains("validationId") ||
        !request["validationId"].is_string()) {
        return {nullptr, error_response(400, "BadRequest", "validationId (string) is required")};
    }
    const auto id = request["validationId"].get<std::string>();
    std::lock_guard guard(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        if (tombstones_.contains(id)) {
            return {nullptr, error_response(410, "SessionExpired", "session " + id + " has expired")};
        }
        return {nullptr, error_response(404, "UnknownSession", "no session " + id)};
    }
    if (expired(*it->second)) {
        tombstone(id);
        sessions_.erase(it);
        return {nullptr, error_response(410, "SessionExpired", "session " + id + " has expired")};
    }
    return {it->second, std::nullopt};
}

nlohmann::ordered_json validation_service::run(session& s) {
    auto report = validation::validate(s.data, *s.iod, *s.reg, s.sel, s.given);
    report.validation_id = s.id;
    report.sop_class_uid = s.sop_class_uid;
    return validation::to_json(report);
}

service_response validation_service::validate(const nlohmann::json& request) {
    auto found = find_session(request);
    if (found.failure) {
        return *found.failure;
    }
    auto& s = *found.s;
    std::lock_guard guard(s.lock);
    if (s.state != session_state::awaiting_selection) {
        return error_response(409, "WrongState",
                              "session is " + std::string(to_string(s.state)) +
                                  "; /validate is accepted only before a selection is made");
    }

    validation::selection sel = validation::selection::all_modules();
    if (request.contains("modules")) {
        const auto& m = request["modules"];
        if (m.is_string() && m.get<std::string>() == "all") {
            sel = validation::selection::all_modules();
        } else if (m.is_array()) {
            std::set<std::string> names;
            for (const auto& n : m) {
                if (!n.is_string()) {
                    return error_response(400, "BadRequest", "modules must list module names");
                }
                names.insert(n.get<std::string>());
            }
            sel = validation::selection::of(std::move(names));
        } else {
            return error_response(400, "BadRequest", "modules must be \"all\" or a list of names");
        }
    }
    if (auto unknown = validation::unknown_modules(*s.iod, sel); !unknown.empty()) {
        return error_response(400, "UnknownModuleName",
                              "IOD " + s.iod->name + " has no module '" + unknown.front() + "'");
    }
    bool use_defaults = false;
    if (request.contains("useDefaults")) {
        if (!request["useDefaults"].is_boolean()) {
            return error_response(400, "BadRequest", "useDefaults must be a boolean");
        }
        use_defaults = request["useDefaults"].get<bool>();
    }

    s.sel = std::move(sel);
    nlohmann::ordered_json body;
    if (use_defaults) {
        s.given.clear();
        s.report = run(s);
        s.state = session_state::completed;
        body["report"] = *s.report;
        return {200, std::move(body)};
    }
    s.state = session_state::awaiting_answers;
    auto questions = nlohmann::ordered_json::array();
    for (const auto& q : validation::collect_questions(*s.iod, *s.reg, s.sel)) {
        questions.push_back({{"id", q.id}, {"question", q.question}, {"default", q.default_value}});
    }
    body["validationId"] = s.id;
    body["questions"] = std::move(questions);
    return {200, std::move(body)};
}

service_response validation_service::result(const nlohmann::json& request) {
    auto found = find_session(request);
    if (found.failure) {
        return *found.failure;
    }
    auto& s = *found.s;
    std::lock_guard guard(s.lock);
    const bool has_answers = request.contains("answers") && !request["answers"].is_null();

    if (s.state == session_state::completed) {
        if (has_answers) {
            return error_response(409, "WrongState", "session is Completed; answers can no longer change");
        }
        return {200, {{"report", *s.report}}};
    }
    if (s.state != session_state::awaiting_answers) {
        return error_response(409, "WrongState", "call /validate with a module selection first");
    }

    validation::answers given;
    if (has_answers) {
        const auto& a = request["answers"];
        if (!a.is_object()) {
            return error_response(400, "BadRequest", "answers must map precondition ids to booleans");
        }
        std::set<std::string> asked;
        for (const auto& q : validation::collect_questions(*s.iod, *s.reg, s.sel)) {
            asked.insert(q.id);
        }
        for (const auto& [id, value] : a.items()) {
            if (!asked.contains(id)) {
                return error_response(400, "UnknownAnswerId", "no question has id '" + id + "'");
            }
            if (!value.is_boolean()) {
                return error_response(400, "BadRequest", "answer '" + id + "' must be a boolean");
            }
            given[id] = value.get<bool>();
        }
    }
    s.given = std::move(given);
    s.report = run(s);
    s.state = session_state::completed;
    return {200, {{"report", *s.report}}};
}

}  // namespace dcmval::service
