#pragma once

// In-memory corpus of titled documents, directed hyperlinks and a category
// forest. Built once by ingest() and immutable afterwards, so a Corpus can be
// shared between any number of reader threads.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wikisyn {

enum class DocId : std::int64_t {};
enum class CategoryId : std::int64_t {};

constexpr std::int64_t raw(DocId id) noexcept { return static_cast<std::int64_t>(id); }
constexpr std::int64_t raw(CategoryId id) noexcept { return static_cast<std::int64_t>(id); }

struct Document {
    DocId id{};
    std::string title;  // normalized; doubles as the keyword set
    std::vector<DocId> out_links;
    std::vector<DocId> in_links;
    std::vector<CategoryId> categories;
};

struct Category {
    CategoryId id{};
    std::string name;
    std::optional<CategoryId> parent;
};

struct CorpusStats {
    std::size_t page_count = 0;
    std::size_t link_count = 0;
    std::size_t category_count = 0;
    std::size_t dropped_dangling_links = 0;

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

struct Neighbors {
    std::span<const DocId> out_links;
    std::span<const DocId> in_links;
    std::span<const CategoryId> categories;
};

/// Raised for any ingest failure. `line()` is 1-based, 0 when the problem is
/// not tied to a single record (e.g. a category cycle).
class IngestError : public std::runtime_error {
public:
    IngestError(std::string source, std::size_t line, const std::string& what);

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

class UnknownDocument : public std::out_of_range {
public:
    explicit UnknownDocument(DocId id);
    DocId id() const noexcept { return id_; }

private:
    DocId id_;
};

/// Title key used for lookups: surrounding whitespace trimmed, underscores
/// read as spaces, internal whitespace runs collapsed, first character upper
/// cased (ASCII only; non-ASCII leading characters are kept as is).
std::string normalize_title(std::string_view title);

/// The four record streams of the normalized dump format. Any stream may be
/// null, which reads as empty.
struct CorpusSources {
    std::istream* documents = nullptr;
    std::istream* links = nullptr;
    std::istream* categories = nullptr;
    std::istream* members = nullptr;
};

struct CorpusPaths {
    std::filesystem::path documents;
    std::filesystem::path links;
    std::filesystem::path categories;
    std::filesystem::path members;

    /// Reads a JSON manifest {"docs", "links", "categories", "members"};
    /// relative entries resolve against the manifest's directory.
    static CorpusPaths from_manifest(const std::filesystem::path& manifest);
};

class Corpus {
public:
    Corpus() = default;

    static Corpus ingest(const CorpusSources& sources);
    static Corpus load(const CorpusPaths& paths);

    const Document* find(DocId id) const noexcept;
    const Document& at(DocId id) const;  // throws UnknownDocument
    bool contains(DocId id) const noexcept { return index_.contains(id); }

    const Document* lookup_title(std::string_view title) const;
    Neighbors neighbors(DocId id) const;

    const Category* category(CategoryId id) const noexcept;
    std::span<const Category> categories() const noexcept { return categories_; }

    /// Documents in documents-file order.
    std::span<const Document> documents() const noexcept { return documents_; }

    CorpusStats stats() const noexcept { return stats_; }

private:
    std::vector<Document> documents_;
    std::unordered_map<DocId, std::size_t> index_;
    std::unordered_map<std::string, std::size_t> by_title_;
    std::vector<Category> categories_;
    std::unordered_map<CategoryId, std::size_t> category_index_;
    CorpusStats stats_;
};

}  // namespace wikisyn
