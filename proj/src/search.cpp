#include "wikisyn/search.hpp"

namespace wikisyn {

SearchResult search(const Corpus& corpus, const SearchParams& params) {
    params.validate();
    if (!corpus.contains(params.source)) throw UnknownDocument(params.source);

    SearchResult result;
    result.params = params;
    const auto root = build_root_set(corpus, params.source, params.t, params.root_mode);
    result.graph = build_base_set(corpus, root, params.d);
    result.iteration = iterate(result.graph, IterationOptions{params.epsilon, params.max_iterations, 1.0});

    for (auto& cluster : cluster_base_set(result.graph, corpus, params.c_max)) {
        auto authorities = select_authorities(result.graph, params.n, params.k, std::span<const DocId>(cluster.members));
        result.clusters.push_back(ClusterResult{std::move(cluster), std::move(authorities)});
    }
    return result;
}

}  // namespace wikisyn
