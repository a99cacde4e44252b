#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wikisyn/corpus.hpp"
#include "wikisyn/hits.hpp"

namespace wikisyn::testing {

inline std::filesystem::path fixture_dir() { return WIKISYN_FIXTURE_DIR; }

inline CorpusPaths mini_wiki_paths() {
    return CorpusPaths::from_manifest(fixture_dir() / "mini_wiki" / "mini_wiki.json");
}

inline const Corpus& mini_wiki() {
    static const Corpus corpus = Corpus::load(mini_wiki_paths());
    return corpus;
}

inline nlohmann::json golden(const std::string& name) {
    std::ifstream in(fixture_dir() / "mini_wiki" / "golden" / name);
    return nlohmann::json::parse(in);
}

inline Corpus corpus_from_text(const std::string& docs, const std::string& links = "",
                               const std::string& cats = "", const std::string& members = "") {
    std::istringstream d(docs), l(links), c(cats), m(members);
    return Corpus::ingest(CorpusSources{&d, &l, &c, &m});
}

struct TextCorpus {
    std::string docs, links, cats, members;
    Corpus build() const { return corpus_from_text(docs, links, cats, members); }
};

/// Random corpus with `pages` documents, roughly `pages * avg_out` links
/// (some dangling, some repeated), and a random category forest.
inline TextCorpus random_corpus(std::mt19937_64& rng, int pages, int avg_out, int categories = 6) {
    auto pick = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
    TextCorpus out;
    for (int i = 1; i <= pages; ++i) out.docs += std::to_string(i) + "\tDoc " + std::to_string(i) + "\n";
    const int links = pages * avg_out;
    for (int e = 0; e < links; ++e) {
        const int src = 1 + pick(pages + 2);  // ids past `pages` dangle
        const int dst = 1 + pick(pages + 2);
        out.links += std::to_string(src) + "\t" + std::to_string(dst) + "\n";
    }
    for (int c = 1; c <= categories; ++c) {
        out.cats += std::to_string(c) + "\tCat " + std::to_string(c) + "\t";
        if (c > 1 && pick(3) != 0) out.cats += std::to_string(1 + pick(c - 1));
        out.cats += "\n";
    }
    for (int i = 1; i <= pages; ++i) {
        const int count = pick(3);
        for (int k = 0; k < count; ++k) {
            out.members += std::to_string(i) + "\t" + std::to_string(1 + pick(categories)) + "\n";
        }
    }
    return out;
}

/// Random simple digraph on ids 0..n-1 with exactly `edges` distinct edges
/// (self loops allowed), capped at n*n.
inline BaseGraph random_graph(std::mt19937_64& rng, int n, int edges, DocId source = DocId{0}) {
    std::vector<DocId> vertices;
    for (int i = 0; i < n; ++i) vertices.push_back(DocId{i});
    std::vector<BaseGraph::Edge> all;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) all.emplace_back(DocId{u}, DocId{v});
    }
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(edges)));
    return BaseGraph(source, vertices, all, {source});
}

}  // namespace wikisyn::testing
