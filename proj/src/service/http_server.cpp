/**
 * @file http_server.cpp
 * @brief cpp-httplib endpoint wiring
 */

#include "dcmval/service/http_server.hpp"

#include <httplib.h>

namespace dcmval::service {

namespace {

constexpr std::size_t multipart_overhead = 64 * 1024;
constexpr std::size_t id_prefix_length = 8;

void send(httplib::Response& res, const service_response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(2) + "\n", "application/json");
}

std::string session_of(const httplib::Request& req, const httplib::Response& res) {
    for (const auto* body : {&res.body, &req.body}) {
        auto j = nlohmann::json::parse(*body, nullptr, false);
        if (!j.is_object()) {
            continue;
        }
        if (j.contains("validationId") && j["validationId"].is_string()) {
            return j["validationId"].get<std::string>();
        }
        if (j.contains("report") && j["report"].is_object() && j["report"].contains("validationId")) {
            return j["report"]["validationId"].get<std::string>();
        }
    }
    return {};
}

template <typename Handler>
void json_endpoint(httplib::Response& res, const httplib::Request& req, Handler&& handler) {
    auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
        send(res, error_response(400, "BadRequest", "request body is not JSON"));
        return;
    }
    send(res, handler(body));
}

}  // namespace

http_server::http_server(validation_service& service, std::ostream* log)
    : service_(service), log_(log), server_(std::make_unique<httplib::Server>()) {
    server_->set_payload_max_length(service_.config().max_upload + multipart_overhead);

    server_->Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("{\"status\": \"ok\"}\n", "application/json");
    });

    server_->Post("/configure", [this](const httplib::Request& req, httplib::Response& res) {
        if (!req.is_multipart_form_data() || !req.has_file("file")) {
            send(res, error_response(400, "ParseFailure",
                                     "expected a multipart form with a 'file' field"));
            return;
        }
        const auto file = req.get_file_value("file");
        const auto* data = reinterpret_cast<const std::uint8_t*>(file.content.data());
        send(res, service_.configure({data, file.content.size()}));
    });

    server_->Post("/validate", [this](const httplib::Request& req, httplib::Response& res) {
        json_endpoint(res, req, [this](const nlohmann::json& b) { return service_.validate(b); });
    });

    server_->Post("/result", [this](const httplib::Request& req, httplib::Response& res) {
        json_endpoint(res, req, [this](const nlohmann::json& b) { return service_.result(b); });
    });

    server_->set_logger([this](const httplib::Request& req, const httplib::Response& res) {
        std::string id;
        if (req.path != "/configure" || res.status == 200) {
            id = session_of(req, res);
        }
        log_request(req.method, req.path, res.status, id);
    });
}

http_server::~http_server() {
    stop();
}

bool http_server::bind(const std::string& host, int port) {
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
    } else {
        port_ = server_->bind_to_port(host, port) ? port : -1;
    }
    return port_ > 0;
}

bool http_server::listen() {
    return server_->listen_after_bind();
}

void http_server::stop() {
    if (server_ && server_->is_running()) {
        server_->stop();
    }
}

void http_server::wait_until_ready() const {
    server_->wait_until_ready();
}

void http_server::log_request(const std::string& method, const std::string& path, int status,
                              const std::string& session_id) {
    if (log_ == nullptr) {
        return;
    }
    std::lock_guard guard(log_mutex_);
    *log_ << method << ' ' << path << ' ' << status << ' '
          << (session_id.empty() ? "-" : session_id.substr(0, id_prefix_length)) << '\n'
          << std::flush;
}

}  // namespace dcmval::service
