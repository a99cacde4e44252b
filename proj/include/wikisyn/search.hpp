#pragma once

#include <vector>

#include "wikisyn/clustering.hpp"
#include "wikisyn/corpus.hpp"
#include "wikisyn/hits.hpp"

namespace wikisyn {

struct ClusterResult {
    Cluster cluster;
    AuthorityResult authorities;
};

struct SearchResult {
    SearchParams params;
    BaseGraph graph;
    IterationReport iteration;
    std::vector<ClusterResult> clusters;  // best cluster first
};

/// Full pipeline for one source document: root set, base set, iteration,
/// clustering, then authority selection inside every cluster.
/// Throws std::invalid_argument for bad params, UnknownDocument for an
/// unknown source.
SearchResult search(const Corpus& corpus, const SearchParams& params);

}  // namespace wikisyn
