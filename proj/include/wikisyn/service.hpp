#pragma once

// HTTP API over one loaded corpus.
//
//   GET  /health
//   GET  /search?title=..&t=&d=&n=&c_max=&epsilon=&k=&root_mode=&max_iterations=
//   GET  /page/{id}/neighbors[?session={token}]
//   POST /session                      {"title": "...", "params": {...}}
//   GET  /session/{token}
//   POST /session/{token}/rate         {"id": 12}
//   POST /session/{token}/unrate       {"id": 12}
//   GET  /session/{token}/export       session file
//   POST /session/import               session file
//
// Errors are {"error": {"code": "bad_request|not_found|server_error",
// "message": "..."}} with status 400/404/500.

#include <filesystem>
#include <string>

#include "wikisyn/corpus.hpp"
#include "wikisyn/hits.hpp"
#include "wikisyn/session.hpp"

namespace httplib {
class Server;
}

namespace wikisyn {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    CorpusPaths corpus;

    /// JSON file: {"listen": "host:port", "manifest": "...", or per-file
    /// "docs"/"links"/"categories"/"members"}. Relative paths resolve against
    /// the config file's directory.
    static ServiceConfig from_file(const std::filesystem::path& path);

    /// WIKISYN_LISTEN and WIKISYN_MANIFEST override the file values.
    void apply_environment();

    /// Parses "host:port" or ":port"; throws std::invalid_argument.
    void set_listen(const std::string& listen);
};

class Service {
public:
    explicit Service(const Corpus& corpus);

    /// Registers every route plus JSON error handlers on the server.
    void install(httplib::Server& server);

    SessionStore& sessions() noexcept { return sessions_; }

private:
    const Corpus& corpus_;
    SessionStore sessions_;
};

/// Server with SO_REUSEADDR only, so binding an occupied port fails instead
/// of silently sharing it.
void configure_socket_options(httplib::Server& server);

}  // namespace wikisyn
