/**
 * @file http_server.hpp
 * @brief HTTP transport for validation_service
 */

#pragma once

#include "dcmval/service/validation_service.hpp"

#include <memory>
#include <mutex>
#include <ostream>
#include <string>

namespace httplib {
class Server;
}

namespace dcmval::service {

/**
 * @brief POST /configure (multipart field `file`), POST /validate, POST /result, GET /health.
 *
 * One log line per request: method, path, status, session id prefix.
 */
class http_server {
public:
    explicit http_server(validation_service& service, std::ostream* log = nullptr);
    ~http_server();

    http_server(const http_server&) = delete;
    http_server& operator=(const http_server&) = delete;

    /// Binds; port 0 picks a free port. Returns false when the port is unavailable.
    [[nodiscard]] bool bind(const std::string& host, int port);
    [[nodiscard]] int port() const noexcept { return port_; }

    /// Serves until stop(). Requires a successful bind().
    bool listen();
    void stop();
    void wait_until_ready() const;

private:
    void log_request(const std::string& method, const std::string& path, int status,
                     const std::string& session_id);

    validation_service& service_;
    std::ostream* log_;
    std::mutex log_mutex_;
    std::unique_ptr<httplib::Server> server_;
    int port_{-1};
};

}  // namespace dcmval::service
