#pragma once

// Renderings of a search result shared by the CLI and the HTTP service.

#include <string>

#include "json.hpp"
#include "wikisyn/corpus.hpp"
#include "wikisyn/hits.hpp"
#include "wikisyn/search.hpp"

namespace wikisyn {

nlohmann::json params_to_json(const SearchParams& params);
/// Missing fields keep their defaults. Throws std::invalid_argument on a
/// wrongly typed field or an unknown root mode; does not validate ranges.
SearchParams params_from_json(const nlohmann::json& doc, SearchParams base = {});

nlohmann::json search_to_json(const SearchResult& result, const Corpus& corpus);
nlohmann::json neighbors_to_json(DocId id, const Corpus& corpus);

/// Canonical text of a JSON body: two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& doc);

std::string render_table(const SearchResult& result, const Corpus& corpus);
std::string render_dot(const SearchResult& result, const Corpus& corpus);

}  // namespace wikisyn
