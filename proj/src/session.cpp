#include "wikisyn/session.hpp"

#include <array>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "wikisyn/report.hpp"

namespace wikisyn {

using nlohmann::json;

Timestamp now_ms() {
    return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

std::string format_timestamp(Timestamp t) {
    const auto secs = std::chrono::floor<std::chrono::seconds>(t);
    const auto millis = (t - secs).count();
    const std::time_t tt = std::chrono::system_clock::to_time_t(secs);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(millis));
    return buf.data();
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    if (text.size() != 24) return std::nullopt;
    const std::string s(text);
    std::tm tm{};
    int millis = 0;
    char z = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3d%c", &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour,
                    &tm.tm_min, &tm.tm_sec, &millis, &z) != 8 ||
        z != 'Z') {
        return std::nullopt;
    }
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;
    const std::time_t tt = timegm(&tm);
    if (tt == static_cast<std::time_t>(-1)) return std::nullopt;
    return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::from_time_t(tt)) +
           std::chrono::milliseconds(millis);
}

Rating Session::rating(DocId id) const {
    const auto it = ratings.find(id);
    return it == ratings.end() ? Rating::unrated : it->second;
}

Session make_session(std::string source_title, const SearchParams& params, Timestamp now) {
    Session s;
    s.source_title = std::move(source_title);
    s.params = params;
    s.created_at = now;
    s.updated_at = now;
    return s;
}

Session mark_seen(Session session, std::span<const DocId> ids, Timestamp now) {
    bool changed = false;
    for (DocId id : ids) changed |= session.seen.insert(id).second;
    if (changed) session.updated_at = now;
    return session;
}

Session rate(Session session, DocId id, Timestamp now) {
    if (!session.seen.contains(id)) {
        throw SessionError(SessionError::Kind::unknown_id,
                           "document " + std::to_string(raw(id)) + " was not shown in this session");
    }
    if (session.ratings.emplace(id, Rating::synonym).second) session.updated_at = now;
    return session;
}

Session unrate(Session session, DocId id, Timestamp now) {
    if (!session.seen.contains(id)) {
        throw SessionError(SessionError::Kind::unknown_id,
                           "document " + std::to_string(raw(id)) + " was not shown in this session");
    }
    if (session.ratings.erase(id) > 0) session.updated_at = now;
    return session;
}

std::string serialize(const Session& session) {
    json seen = json::array();
    for (DocId id : session.seen) seen.push_back(raw(id));
    json ratings = json::array();
    for (const auto& [id, rating] : session.ratings) {
        if (rating == Rating::synonym) ratings.push_back(json{{"id", raw(id)}, {"rating", "synonym"}});
    }
    const json doc{{"version", Session::format_version},
                   {"source_title", session.source_title},
                   {"params", params_to_json(session.params)},
                   {"seen", std::move(seen)},
                   {"ratings", std::move(ratings)},
                   {"created_at", format_timestamp(session.created_at)},
                   {"updated_at", format_timestamp(session.updated_at)}};
    return dump_json(doc);
}

Session parse_session(std::string_view text) {
    using Kind = SessionError::Kind;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SessionError(Kind::malformed, std::string("session file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SessionError(Kind::malformed, "session file must hold an object");
    if (!doc.contains("version") || !doc["version"].is_number_integer()) {
        throw SessionError(Kind::malformed, "session file has no integer version");
    }
    const auto version = doc["version"].get<std::int64_t>();
    if (version != Session::format_version) {
        throw SessionError(Kind::unsupported_version, "unsupported session version " + std::to_string(version));
    }

    try {
        Session s;
        s.source_title = doc.at("source_title").get<std::string>();
        s.params = params_from_json(doc.at("params"));
        for (const auto& id : doc.at("seen")) s.seen.insert(DocId{id.get<std::int64_t>()});
        for (const auto& entry : doc.at("ratings")) {
            const DocId id{entry.at("id").get<std::int64_t>()};
            if (entry.at("rating").get<std::string>() != "synonym") {
                throw SessionError(Kind::malformed, "unknown rating value");
            }
            if (!s.seen.contains(id)) {
                throw SessionError(Kind::malformed, "rated id " + std::to_string(raw(id)) + " is not in seen");
            }
            s.ratings.emplace(id, Rating::synonym);
        }
        auto stamp = [&](const char* key) {
            auto t = parse_timestamp(doc.at(key).get<std::string>());
            if (!t) throw SessionError(Kind::malformed, std::string("bad timestamp in ") + key);
            return *t;
        };
        s.created_at = stamp("created_at");
        s.updated_at = stamp("updated_at");
        return s;
    } catch (const json::exception& e) {
        throw SessionError(Kind::malformed, std::string("malformed session file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw SessionError(Kind::malformed, std::string("malformed session params: ") + e.what());
    }
}

void save(const Session& session, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SessionError(SessionError::Kind::io, "cannot open " + path.string() + " for writing");
    out << serialize(session);
    out.flush();
    if (!out) throw SessionError(SessionError::Kind::io, "write to " + path.string() + " failed");
}

Session load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SessionError(SessionError::Kind::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw SessionError(SessionError::Kind::io, "read from " + path.string() + " failed");
    return parse_session(buf.str());
}

// ---------------------------------------------------------------- store

std::string SessionStore::next_token() {
    std::lock_guard lock(token_mutex_);
    std::array<char, 33> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                  static_cast<unsigned long long>(rng_()));
    return buf.data();
}

std::string SessionStore::create(Session session) {
    auto entry = std::make_shared<Entry>();
    entry->session = std::move(session);
    std::unique_lock lock(mutex_);
    std::string token;
    do {
        token = next_token();
    } while (sessions_.contains(token));
    sessions_.emplace(token, std::move(entry));
    return token;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& token) const {
    std::shared_lock lock(mutex_);
    const auto it = sessions_.find(token);
    return it == sessions_.end() ? nullptr : it->second;
}

std::optional<Session> SessionStore::get(const std::string& token) const {
    const auto entry = find(token);
    if (!entry) return std::nullopt;
    std::lock_guard lock(entry->mutex);
    return entry->session;
}

std::optional<Session> SessionStore::update(const std::string& token,
                                            const std::function<Session(const Session&)>& fn) {
    const auto entry = find(token);
    if (!entry) return std::nullopt;
    std::lock_guard lock(entry->mutex);
    entry->session = fn(entry->session);
    return entry->session;
}

std::size_t SessionStore::size() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

}  // namespace wikisyn
