/**
 * @file validation_service.hpp
 * @brief Stateful configure / validate / result protocol, transport independent
 */

#pragma once

#include "dcmval/core/dataset.hpp"
#include "dcmval/description/registry.hpp"
#include "dcmval/validation/engine.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_set>

namespace dcmval::service {

using clock_fn = std::function<std::chrono::steady_clock::time_point()>;

struct service_config {
    std::chrono::seconds session_ttl{30 * 60};
    std::size_t max_upload{64u * 1024u * 1024u};
    /// De-identify and strip pixel data again on upload.
    bool server_deident{false};
};

struct service_response {
    int status{200};
    nlohmann::ordered_json body;
};

enum class session_state { awaiting_selection, awaiting_answers, completed };

[[nodiscard]] std::string_view to_string(session_state s) noexcept;

/**
 * @brief In-memory session store and protocol state machine.
 *
 * Thread-safe. Requests on one session are serialized; different sessions
 * proceed concurrently. Nothing is written to disk.
 */
class validation_service {
public:
    explicit validation_service(std::shared_ptr<const description::registry> reg,
                                service_config config = {}, clock_fn clock = {});

    /// Upload of a Part-10 file. 200, 400 ParseFailure, 413 FileTooLarge, 422 UnknownSopClass.
    [[nodiscard]] service_response configure(std::span<const std::uint8_t> file);

    /// {validationId, modules: [..] | "all", useDefaults}. Returns {report} or {questions}.
    [[nodiscard]] service_response validate(const nlohmann::json& request);

    /// {validationId, answers?}. Returns {report}.
    [[nodiscard]] service_response result(const nlohmann::json& request);

    /// Replaces the registry used by new sessions; existing sessions keep theirs.
    void set_registry(std::shared_ptr<const description::registry> reg);

    [[nodiscard]] const service_config& config() const noexcept { return config_; }

    /// Drops expired sessions; returns the number removed.
    std::size_t purge_expired();

    [[nodiscard]] std::size_t session_count() const;

private:
    struct session {
        std::mutex lock;
        std::string id;
        core::data_set data;
        std::string sop_class_uid;
        std::shared_ptr<const description::registry> reg;
        const description::iod_description* iod{nullptr};
        session_state state{session_state::awaiting_selection};
        validation::selection sel;
        validation::answers given;
        std::optional<nlohmann::ordered_json> report;
        std::chrono::steady_clock::time_point created;
    };

    struct lookup {
        std::shared_ptr<session> s;
        std::optional<service_response> failure;
    };

    [[nodiscard]] lookup find_session(const nlohmann::json& request);
    [[nodiscard]] bool expired(const session& s) const;
    void tombstone(const std::string& id);
    [[nodiscard]] std::string new_id();
    [[nodiscard]] nlohmann::ordered_json run(session& s);

    service_config config_;
    clock_fn clock_;

    mutable std::mutex mutex_;
    std::shared_ptr<const description::registry> registry_;
    std::map<std::string, std::shared_ptr<session>> sessions_;
    std::unordered_set<std::string> tombstones_;
    std::deque<std::string> tombstone_order_;
    std::mt19937_64 rng_;
};

/// {"error": code, "message": message}
[[nodiscard]] service_response error_response(int status, std::string_view code, std::string_view message);

}  // namespace dcmval::service
