#pragma once

// Interactive rating state for one source word: the parameters a search was
// run with, the documents the user has been shown, and which of those were
// marked as synonyms. Sessions are plain values; SessionStore keeps the
// server-side copies keyed by token.

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

#include "wikisyn/corpus.hpp"
#include "wikisyn/hits.hpp"

namespace wikisyn {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

Timestamp now_ms();
std::string format_timestamp(Timestamp t);            // 2026-01-02T03:04:05.678Z
std::optional<Timestamp> parse_timestamp(std::string_view text);

enum class Rating { synonym, unrated };

struct Session {
    static constexpr int format_version = 1;

    std::string source_title;
    SearchParams params;
    std::set<DocId> seen;             // ids shown in results or expansions
    std::map<DocId, Rating> ratings;  // only synonym entries are stored
    Timestamp created_at{};
    Timestamp updated_at{};

    Rating rating(DocId id) const;

    friend bool operator==(const Session&, const Session&) = default;
};

class SessionError : public std::runtime_error {
public:
    enum class Kind { unknown_id, io, malformed, unsupported_version };

    SessionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

Session make_session(std::string source_title, const SearchParams& params, Timestamp now = now_ms());

/// Adds ids to the seen set; updated_at moves only if something was new.
Session mark_seen(Session session, std::span<const DocId> ids, Timestamp now = now_ms());

/// Marks id as a synonym. Idempotent: rating an already rated id returns the
/// session unchanged. Throws SessionError(unknown_id) for unseen ids.
Session rate(Session session, DocId id, Timestamp now = now_ms());

/// Inverse of rate(); unrating an unrated id is a no-op.
Session unrate(Session session, DocId id, Timestamp now = now_ms());

std::string serialize(const Session& session);
Session parse_session(std::string_view text);

void save(const Session& session, const std::filesystem::path& path);
Session load(const std::filesystem::path& path);

/// In-memory sessions keyed by opaque random tokens. Map lookups are guarded
/// by a shared lock; each session has its own mutex so updates to one token
/// are serialized without blocking others.
class SessionStore {
public:
    std::string create(Session session);
    std::optional<Session> get(const std::string& token) const;

    /// Applies fn to the stored session under its lock and stores the result.
    /// Returns nullopt for an unknown token; exceptions from fn propagate and
    /// leave the stored session untouched.
    std::optional<Session> update(const std::string& token, const std::function<Session(const Session&)>& fn);

    std::size_t size() const;

private:
    struct Entry {
        mutable std::mutex mutex;
        Session session;
    };

    std::shared_ptr<Entry> find(const std::string& token) const;
    std::string next_token();

    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
    std::mutex token_mutex_;
    std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace wikisyn
