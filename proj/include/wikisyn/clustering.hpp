#pragma once

#include <string>
#include <vector>

#include "wikisyn/corpus.hpp"
#include "wikisyn/hits.hpp"

namespace wikisyn {

struct Cluster {
    std::vector<DocId> members;          // ascending
    std::vector<CategoryId> categories;  // union over members, ascending
    double weight = 0.0;                 // |members| + |categories|
    std::string label;
    bool over_cap = false;               // singleton that alone exceeds c_max
};

/// Half the Jaccard overlap of the two documents' out-links inside the base
/// graph plus half the Jaccard overlap of their categories. J(empty, empty)
/// is 0, so the result is in [0, 1].
double similarity(DocId u, DocId v, const BaseGraph& graph, const Corpus& corpus);

/// Capped average-linkage agglomeration of the base-set vertices.
///
/// Starting from singletons, the pair of clusters with the highest mean
/// pairwise similarity is merged, provided that mean is positive and the
/// merged weight stays within c_max. Means are compared at 1e-9 resolution;
/// ties go to the pair with the lowest (smaller min-member id, larger
/// min-member id). Stops when no admissible pair is left.
///
/// Output clusters are ordered by highest member authority (same rounding as
/// weight_rank_key), then by lowest member id.
std::vector<Cluster> cluster_base_set(const BaseGraph& graph, const Corpus& corpus, double c_max);

}  // namespace wikisyn
