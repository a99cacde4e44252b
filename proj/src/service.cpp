#include "wikisyn/service.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <sys/socket.h>

#include "httplib.h"
#include "json.hpp"
#include "wikisyn/report.hpp"
#include "wikisyn/search.hpp"

namespace wikisyn {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

struct ApiError : std::runtime_error {
    int status;
    const char* code;
    ApiError(int status, const char* code, const std::string& message)
        : std::runtime_error(message), status(status), code(code) {}
};

ApiError bad_request(const std::string& msg) { return ApiError(400, "bad_request", msg); }
ApiError not_found(const std::string& msg) { return ApiError(404, "not_found", msg); }

void send_error(httplib::Response& res, int status, const char* code, const std::string& message) {
    res.status = status;
    res.set_content(dump_json(json{{"error", json{{"code", code}, {"message", message}}}}), kJson);
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const ApiError& e) {
            send_error(res, e.status, e.code, e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "server_error", e.what());
        }
    };
}

template <typename T>
T parse_number(const std::string& text, const char* name) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw bad_request(std::string("parameter '") + name + "' is not a valid number: '" + text + "'");
    }
    return value;
}

DocId path_id(const httplib::Request& req) {
    return DocId{parse_number<std::int64_t>(req.path_params.at("id"), "id")};
}

SearchParams search_params_from_query(const httplib::Request& req, DocId source) {
    SearchParams p;
    p.source = source;
    auto opt = [&](const char* key, auto& slot) {
        if (req.has_param(key)) slot = parse_number<std::decay_t<decltype(slot)>>(req.get_param_value(key), key);
    };
    opt("t", p.t);
    opt("d", p.d);
    opt("n", p.n);
    opt("c_max", p.c_max);
    opt("epsilon", p.epsilon);
    opt("k", p.k);
    opt("max_iterations", p.max_iterations);
    if (req.has_param("root_mode")) {
        const auto mode = parse_root_mode(req.get_param_value("root_mode"));
        if (!mode) throw bad_request("root_mode must be 'adapted' or 'classic'");
        p.root_mode = *mode;
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw bad_request(e.what());
    }
    return p;
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
        return json::parse(req.body);
    } catch (const json::exception& e) {
        throw bad_request(std::string("request body is not valid JSON: ") + e.what());
    }
}

json session_body(const std::string& token, const Session& session) {
    return json{{"token", token}, {"session", json::parse(serialize(session))}};
}

}  // namespace

// ---------------------------------------------------------------- config

void ServiceConfig::set_listen(const std::string& listen) {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("listen address must be host:port");
    const auto port_text = listen.substr(colon + 1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), value);
    if (port_text.empty() || ec != std::errc{} || ptr != port_text.data() + port_text.size() || value < 0 ||
        value > 65535) {
        throw std::invalid_argument("bad port in listen address '" + listen + "'");
    }
    port = value;
    const auto h = listen.substr(0, colon);
    host = h.empty() ? "0.0.0.0" : h;
}

ServiceConfig ServiceConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed config file " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("config file must hold an object");

    ServiceConfig cfg;
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp = p;
        return fp.is_absolute() ? fp : base / fp;
    };
    if (doc.contains("listen")) cfg.set_listen(doc["listen"].get<std::string>());
    if (doc.contains("manifest")) cfg.corpus = CorpusPaths::from_manifest(resolve(doc["manifest"].get<std::string>()));
    if (doc.contains("docs")) cfg.corpus.documents = resolve(doc["docs"].get<std::string>());
    if (doc.contains("links")) cfg.corpus.links = resolve(doc["links"].get<std::string>());
    if (doc.contains("categories")) cfg.corpus.categories = resolve(doc["categories"].get<std::string>());
    if (doc.contains("members")) cfg.corpus.members = resolve(doc["members"].get<std::string>());
    return cfg;
}

void ServiceConfig::apply_environment() {
    if (const char* listen = std::getenv("WIKISYN_LISTEN"); listen && *listen) set_listen(listen);
    if (const char* manifest = std::getenv("WIKISYN_MANIFEST"); manifest && *manifest) {
        corpus = CorpusPaths::from_manifest(manifest);
    }
}

void configure_socket_options(httplib::Server& server) {
    server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
}

// ---------------------------------------------------------------- routes

Service::Service(const Corpus& corpus) : corpus_(corpus) {}

void Service::install(httplib::Server& server) {
    server.Get("/health", guarded([this](const httplib::Request&, httplib::Response& res) {
                   res.set_content(dump_json(json{{"status", "ok"}, {"page_count", corpus_.stats().page_count}}),
                                   kJson);
               }));

    server.Get("/search", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   if (!req.has_param("title")) throw bad_request("missing required parameter 'title'");
                   const auto title = req.get_param_value("title");
                   const auto* doc = corpus_.lookup_title(title);
                   if (doc == nullptr) throw not_found("no page titled '" + title + "'");
                   const auto params = search_params_from_query(req, doc->id);
                   res.set_content(dump_json(search_to_json(search(corpus_, params), corpus_)), kJson);
               }));

    server.Get("/page/:id/neighbors", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const auto id = path_id(req);
                   if (!corpus_.contains(id)) throw not_found("unknown page id " + std::to_string(raw(id)));
                   if (req.has_param("session")) {
                       const auto nb = corpus_.neighbors(id);
                       std::vector<DocId> shown{id};
                       shown.insert(shown.end(), nb.out_links.begin(), nb.out_links.end());
                       shown.insert(shown.end(), nb.in_links.begin(), nb.in_links.end());
                       const auto updated = sessions_.update(req.get_param_value("session"), [&](const Session& s) {
                           return mark_seen(s, shown);
                       });
                       if (!updated) throw not_found("unknown session token");
                   }
                   res.set_content(dump_json(neighbors_to_json(id, corpus_)), kJson);
               }));

    server.Post("/session/import", guarded([this](const httplib::Request& req, httplib::Response& res) {
                    Session session;
                    try {
                        session = parse_session(req.body);
                    } catch (const SessionError& e) {
                        throw bad_request(e.what());
                    }
                    const auto token = sessions_.create(session);
                    res.status = 201;
                    res.set_content(dump_json(session_body(token, session)), kJson);
                }));

    server.Post("/session", guarded([this](const httplib::Request& req, httplib::Response& res) {
                    const auto body = parse_body(req);
                    if (!body.is_object() || !body.contains("title") || !body["title"].is_string()) {
                        throw bad_request("body must be an object with a string 'title'");
                    }
                    const auto title = body["title"].get<std::string>();
                    const auto* doc = corpus_.lookup_title(title);
                    if (doc == nullptr) throw not_found("no page titled '" + title + "'");
                    SearchParams params;
                    try {
                        if (body.contains("params")) params = params_from_json(body["params"]);
                        params.source = doc->id;
                        params.validate();
                    } catch (const std::invalid_argument& e) {
                        throw bad_request(e.what());
                    }
                    const auto result = search(corpus_, params);
                    auto session = make_session(doc->title, params);
                    session = mark_seen(session, result.graph.vertices(), session.created_at);
                    const auto token = sessions_.create(session);
                    res.status = 201;
                    res.set_content(dump_json(session_body(token, session)), kJson);
                }));

    server.Get("/session/:token", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const auto& token = req.path_params.at("token");
                   const auto session = sessions_.get(token);
                   if (!session) throw not_found("unknown session token");
                   res.set_content(dump_json(session_body(token, *session)), kJson);
               }));

    server.Get("/session/:token/export", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const auto session = sessions_.get(req.path_params.at("token"));
                   if (!session) throw not_found("unknown session token");
                   res.set_content(serialize(*session), kJson);
               }));

    auto rating_route = [this](bool on) {
        return guarded([this, on](const httplib::Request& req, httplib::Response& res) {
            const auto& token = req.path_params.at("token");
            if (!sessions_.get(token)) throw not_found("unknown session token");
            DocId id{};
            if (req.has_param("id")) {
                id = DocId{parse_number<std::int64_t>(req.get_param_value("id"), "id")};
            } else {
                const auto body = parse_body(req);
                if (!body.is_object() || !body.contains("id") || !body["id"].is_number_integer()) {
                    throw bad_request("body must be an object with an integer 'id'");
                }
                id = DocId{body["id"].get<std::int64_t>()};
            }
            if (!corpus_.contains(id)) throw bad_request("unknown page id " + std::to_string(raw(id)));
            std::optional<Session> updated;
            try {
                updated = sessions_.update(token, [&](const Session& s) { return on ? rate(s, id) : unrate(s, id); });
            } catch (const SessionError& e) {
                throw bad_request(e.what());
            }
            if (!updated) throw not_found("unknown session token");
            res.set_content(dump_json(session_body(token, *updated)), kJson);
        });
    };
    server.Post("/session/:token/rate", rating_route(true));
    server.Post("/session/:token/unrate", rating_route(false));

    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        if (res.status == 404) {
            send_error(res, 404, "not_found", "no route for " + req.method + " " + req.path);
        } else if (res.status >= 500) {
            send_error(res, res.status, "server_error", "internal error");
        } else if (res.status >= 400) {
            send_error(res, res.status, "bad_request", "bad request");
        }
    });
}

}  // namespace wikisyn
