#include "wikisyn/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "json.hpp"

namespace wikisyn {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == '_';
}

// Splits on tabs; keeps empty fields.
std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::optional<std::int64_t> parse_int(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

// Calls fn(fields, line_no) for every data line. Blank lines and '#' comments
// are skipped; a trailing '\r' is stripped.
template <typename Fn>
void for_each_record(std::istream* in, const std::string& source, std::size_t arity, Fn&& fn) {
    if (in == nullptr) return;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(*in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() != arity) {
            throw IngestError(source, line_no,
                              "expected " + std::to_string(arity) + " tab-separated fields, got " +
                                  std::to_string(fields.size()));
        }
        fn(fields, line_no);
    }
    if (in->bad()) throw IngestError(source, line_no, "read failure");
}

std::int64_t require_int(std::string_view field, const std::string& source, std::size_t line,
                         const char* what) {
    auto value = parse_int(field);
    if (!value) {
        throw IngestError(source, line, std::string("malformed ") + what + " '" + std::string(field) + "'");
    }
    return *value;
}

}  // namespace

IngestError::IngestError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

UnknownDocument::UnknownDocument(DocId id)
    : std::out_of_range("unknown document id " + std::to_string(raw(id))), id_(id) {}

std::string normalize_title(std::string_view title) {
    std::string out;
    out.reserve(title.size());
    bool pending_space = false;
    for (char c : title) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    if (!out.empty()) {
        out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
    }
    return out;
}

CorpusPaths CorpusPaths::from_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw IngestError(manifest.string(), 0, "cannot open manifest");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(manifest.string(), 0, std::string("malformed manifest: ") + e.what());
    }
    const auto base = manifest.parent_path();
    auto entry = [&](const char* key) -> std::filesystem::path {
        if (!doc.is_object() || !doc.contains(key)) return {};
        if (!doc[key].is_string()) {
            throw IngestError(manifest.string(), 0, std::string("manifest field '") + key + "' must be a string");
        }
        std::filesystem::path p = doc[key].get<std::string>();
        return p.is_absolute() ? p : base / p;
    };
    return CorpusPaths{entry("docs"), entry("links"), entry("categories"), entry("members")};
}

Corpus Corpus::ingest(const CorpusSources& sources) {
    Corpus corpus;

    for_each_record(sources.documents, "documents", 2, [&](const auto& f, std::size_t line) {
        const DocId id{require_int(f[0], "documents", line, "document id")};
        auto title = normalize_title(f[1]);
        if (title.empty()) throw IngestError("documents", line, "empty title");
        if (corpus.index_.contains(id)) {
            throw IngestError("documents", line, "duplicate document id " + std::to_string(raw(id)));
        }
        if (corpus.by_title_.contains(title)) {
            throw IngestError("documents", line, "duplicate title '" + title + "'");
        }
        const auto slot = corpus.documents_.size();
        corpus.index_.emplace(id, slot);
        corpus.by_title_.emplace(title, slot);
        corpus.documents_.push_back(Document{id, std::move(title), {}, {}, {}});
    });

    // Repeated (src, dst) records collapse onto the first occurrence.
    std::unordered_set<std::uint64_t> seen_edges;
    auto edge_key = [](std::size_t a, std::size_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
    };
    for_each_record(sources.links, "links", 2, [&](const auto& f, std::size_t line) {
        const DocId src{require_int(f[0], "links", line, "source id")};
        const DocId dst{require_int(f[1], "links", line, "target id")};
        const auto s = corpus.index_.find(src);
        const auto d = corpus.index_.find(dst);
        if (s == corpus.index_.end() || d == corpus.index_.end()) {
            ++corpus.stats_.dropped_dangling_links;
            return;
        }
        if (!seen_edges.insert(edge_key(s->second, d->second)).second) return;
        corpus.documents_[s->second].out_links.push_back(dst);
        corpus.documents_[d->second].in_links.push_back(src);
        ++corpus.stats_.link_count;
    });

    std::vector<std::pair<std::optional<std::int64_t>, std::size_t>> parent_refs;
    for_each_record(sources.categories, "categories", 3, [&](const auto& f, std::size_t line) {
        const CategoryId id{require_int(f[0], "categories", line, "category id")};
        if (corpus.category_index_.contains(id)) {
            throw IngestError("categories", line, "duplicate category id " + std::to_string(raw(id)));
        }
        std::optional<std::int64_t> parent;
        if (!f[2].empty()) parent = require_int(f[2], "categories", line, "parent id");
        corpus.category_index_.emplace(id, corpus.categories_.size());
        corpus.categories_.push_back(Category{id, std::string(f[1]), std::nullopt});
        parent_refs.emplace_back(parent, line);
    });
    for (std::size_t i = 0; i < corpus.categories_.size(); ++i) {
        const auto& [parent, line] = parent_refs[i];
        if (!parent) continue;
        const CategoryId pid{*parent};
        if (!corpus.category_index_.contains(pid)) {
            throw IngestError("categories", line, "unknown parent category " + std::to_string(*parent));
        }
        corpus.categories_[i].parent = pid;
    }
    // Walk each parent chain; any chain longer than the category count loops.
    for (const auto& cat : corpus.categories_) {
        std::size_t steps = 0;
        auto cur = cat.parent;
        while (cur) {
            if (++steps > corpus.categories_.size()) {
                throw IngestError("categories", 0,
                                  "category cycle through id " + std::to_string(raw(cat.id)));
            }
            cur = corpus.categories_[corpus.category_index_.at(*cur)].parent;
        }
    }
    corpus.stats_.category_count = corpus.categories_.size();

    for_each_record(sources.members, "members", 2, [&](const auto& f, std::size_t line) {
        const DocId doc{require_int(f[0], "members", line, "document id")};
        const CategoryId cat{require_int(f[1], "members", line, "category id")};
        const auto d = corpus.index_.find(doc);
        if (d == corpus.index_.end()) {
            throw IngestError("members", line, "unknown document " + std::to_string(raw(doc)));
        }
        if (!corpus.category_index_.contains(cat)) {
            throw IngestError("members", line, "unknown category " + std::to_string(raw(cat)));
        }
        auto& cats = corpus.documents_[d->second].categories;
        if (std::find(cats.begin(), cats.end(), cat) == cats.end()) cats.push_back(cat);
    });

    corpus.stats_.page_count = corpus.documents_.size();
    return corpus;
}

Corpus Corpus::load(const CorpusPaths& paths) {
    std::vector<std::ifstream> streams;
    streams.reserve(4);
    auto open = [&](const std::filesystem::path& p, const char* role) -> std::istream* {
        if (p.empty()) return nullptr;
        auto& s = streams.emplace_back(p);
        if (!s) throw IngestError(p.string(), 0, std::string("cannot open ") + role + " file");
        return &s;
    };
    CorpusSources sources;
    sources.documents = open(paths.documents, "documents");
    sources.links = open(paths.links, "links");
    sources.categories = open(paths.categories, "categories");
    sources.members = open(paths.members, "members");
    return ingest(sources);
}

const Document* Corpus::find(DocId id) const noexcept {
    const auto it = index_.find(id);
    return it == index_.end() ? nullptr : &documents_[it->second];
}

const Document& Corpus::at(DocId id) const {
    if (const auto* doc = find(id)) return *doc;
    throw UnknownDocument(id);
}

const Document* Corpus::lookup_title(std::string_view title) const {
    const auto it = by_title_.find(normalize_title(title));
    return it == by_title_.end() ? nullptr : &documents_[it->second];
}

Neighbors Corpus::neighbors(DocId id) const {
    const auto& doc = at(id);
    return Neighbors{doc.out_links, doc.in_links, doc.categories};
}

const Category* Corpus::category(CategoryId id) const noexcept {
    const auto it = category_index_.find(id);
    return it == category_index_.end() ? nullptr : &categories_[it->second];
}

}  // namespace wikisyn
