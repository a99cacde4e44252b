#include "wikisyn/clustering.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <unordered_map>

namespace wikisyn {

namespace {

// Integer counts in, so both the pairwise and the inverted-index routes give
// bit-identical values.
double jaccard_from_counts(std::size_t common, std::size_t size_a, std::size_t size_b) {
    const auto united = size_a + size_b - common;
    return united == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(united);
}

double mix(double link_overlap, double category_overlap) {
    return 0.5 * link_overlap + 0.5 * category_overlap;
}

template <typename T>
std::size_t count_common(const std::vector<T>& a, const std::vector<T>& b) {
    std::size_t common = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return common;
}

std::vector<CategoryId> sorted_categories(const Corpus& corpus, DocId id) {
    auto cats = corpus.at(id).categories;
    std::sort(cats.begin(), cats.end());
    return cats;
}

std::vector<CategoryId> merge_union(const std::vector<CategoryId>& a, const std::vector<CategoryId>& b) {
    std::vector<CategoryId> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct Candidate {
    std::int64_t score;  // weight_rank_key of the mean similarity
    DocId low;
    DocId high;
    std::uint32_t a, b;
    std::uint32_t stamp_a, stamp_b;
};

// Max-heap order: score desc, then (low, high) asc.
struct CandidateLess {
    bool operator()(const Candidate& x, const Candidate& y) const noexcept {
        if (x.score != y.score) return x.score < y.score;
        if (x.low != y.low) return x.low > y.low;
        return x.high > y.high;
    }
};

struct Group {
    std::vector<std::uint32_t> members;  // local indices
    std::vector<CategoryId> categories;
    DocId min_id{};
    std::uint32_t stamp = 0;
    bool active = true;
    std::unordered_map<std::uint32_t, double> linkage;  // other group -> summed similarity
};

std::string pick_label(const std::vector<DocId>& members, const Corpus& corpus) {
    std::map<CategoryId, std::size_t> freq;
    for (DocId id : members) {
        for (CategoryId c : corpus.at(id).categories) ++freq[c];
    }
    if (!freq.empty()) {
        auto best = freq.begin();
        for (auto it = freq.begin(); it != freq.end(); ++it) {
            if (it->second > best->second) best = it;
        }
        if (const auto* cat = corpus.category(best->first)) return cat->name;
    }
    std::string label;
    for (DocId id : members) {
        const auto& title = corpus.at(id).title;
        if (label.empty() || title < label) label = title;
    }
    return label;
}

}  // namespace

double similarity(DocId u, DocId v, const BaseGraph& graph, const Corpus& corpus) {
    const auto iu = graph.index_of(u);
    const auto iv = graph.index_of(v);
    if (!iu) throw UnknownDocument(u);
    if (!iv) throw UnknownDocument(v);

    const auto lu = graph.out_neighbors(*iu);
    const auto lv = graph.out_neighbors(*iv);
    const std::vector<std::size_t> links_u(lu.begin(), lu.end());
    const std::vector<std::size_t> links_v(lv.begin(), lv.end());
    const auto cats_u = sorted_categories(corpus, u);
    const auto cats_v = sorted_categories(corpus, v);

    return mix(jaccard_from_counts(count_common(links_u, links_v), links_u.size(), links_v.size()),
               jaccard_from_counts(count_common(cats_u, cats_v), cats_u.size(), cats_v.size()));
}

std::vector<Cluster> cluster_base_set(const BaseGraph& graph, const Corpus& corpus, double c_max) {
    const auto n = static_cast<std::uint32_t>(graph.size());
    const auto ids = graph.vertices();

    std::vector<std::vector<CategoryId>> cats(n);
    for (std::uint32_t v = 0; v < n; ++v) cats[v] = sorted_categories(corpus, ids[v]);

    // Shared-feature counts for every pair that has at least one in common,
    // gathered through inverted lists instead of all n^2 pairs.
    std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> shared_links(n), shared_cats(n);
    auto count_pairs = [](auto& table, const std::vector<std::uint32_t>& holders) {
        for (std::size_t i = 0; i < holders.size(); ++i) {
            for (std::size_t j = i + 1; j < holders.size(); ++j) ++table[holders[i]][holders[j]];
        }
    };
    for (std::uint32_t w = 0; w < n; ++w) {
        const auto in = graph.in_neighbors(w);
        count_pairs(shared_links, std::vector<std::uint32_t>(in.begin(), in.end()));
    }
    std::map<CategoryId, std::vector<std::uint32_t>> holders_of;
    for (std::uint32_t v = 0; v < n; ++v) {
        for (CategoryId c : cats[v]) holders_of[c].push_back(v);
    }
    for (const auto& [cat, holders] : holders_of) count_pairs(shared_cats, holders);

    std::vector<Group> groups(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        groups[v].members = {v};
        groups[v].categories = cats[v];
        groups[v].min_id = ids[v];
    }
    auto pair_similarity = [&](std::uint32_t u, std::uint32_t v) {
        auto lookup = [](const auto& table, std::uint32_t x, std::uint32_t y) -> std::size_t {
            const auto it = table[x].find(y);
            return it == table[x].end() ? 0 : it->second;
        };
        return mix(jaccard_from_counts(lookup(shared_links, u, v), graph.out_neighbors(u).size(),
                                       graph.out_neighbors(v).size()),
                   jaccard_from_counts(lookup(shared_cats, u, v), cats[u].size(), cats[v].size()));
    };
    for (std::uint32_t u = 0; u < n; ++u) {
        std::vector<std::uint32_t> partners;
        for (const auto& [v, count] : shared_links[u]) partners.push_back(v);
        for (const auto& [v, count] : shared_cats[u]) partners.push_back(v);
        std::sort(partners.begin(), partners.end());
        partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
        for (auto v : partners) {
            const double s = pair_similarity(u, v);
            if (s > 0.0) {
                groups[u].linkage[v] = s;
                groups[v].linkage[u] = s;
            }
        }
    }
    shared_links.clear();
    shared_cats.clear();

    auto merged_weight = [&](const Group& a, const Group& b) {
        return static_cast<double>(a.members.size() + b.members.size() +
                                   merge_union(a.categories, b.categories).size());
    };
    std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess> queue;
    auto offer = [&](std::uint32_t a, std::uint32_t b) {
        const auto& ga = groups[a];
        const auto& gb = groups[b];
        const double total = ga.linkage.at(b);
        if (!(total > 0.0) || merged_weight(ga, gb) > c_max) return;
        const double mean = total / (static_cast<double>(ga.members.size()) * static_cast<double>(gb.members.size()));
        queue.push(Candidate{weight_rank_key(mean), std::min(ga.min_id, gb.min_id), std::max(ga.min_id, gb.min_id),
                             a, b, ga.stamp, gb.stamp});
    };
    for (std::uint32_t u = 0; u < n; ++u) {
        for (const auto& [v, s] : groups[u].linkage) {
            if (u < v) offer(u, v);
        }
    }

    while (!queue.empty()) {
        const auto top = queue.top();
        queue.pop();
        auto& ga = groups[top.a];
        auto& gb = groups[top.b];
        if (!ga.active || !gb.active || ga.stamp != top.stamp_a || gb.stamp != top.stamp_b) continue;

        // Fold b into a.
        ga.members.insert(ga.members.end(), gb.members.begin(), gb.members.end());
        std::sort(ga.members.begin(), ga.members.end());
        ga.categories = merge_union(ga.categories, gb.categories);
        ga.min_id = std::min(ga.min_id, gb.min_id);
        ++ga.stamp;
        gb.active = false;
        ga.linkage.erase(top.b);
        gb.linkage.erase(top.a);
        for (const auto& [c, s] : gb.linkage) {
            ga.linkage[c] += s;
            auto& back = groups[c].linkage;
            back[top.a] += back.at(top.b);
            back.erase(top.b);
        }
        gb.linkage.clear();
        for (const auto& [c, s] : ga.linkage) offer(top.a, c);
    }

    std::vector<Cluster> clusters;
    std::vector<std::int64_t> rank;
    const auto auth = graph.authority();
    for (auto& g : groups) {
        if (!g.active) continue;
        Cluster cluster;
        std::int64_t best = weight_rank_key(0.0);
        bool first = true;
        for (auto m : g.members) {
            cluster.members.push_back(ids[m]);
            const auto key = weight_rank_key(auth[m]);
            if (first || key > best) best = key;
            first = false;
        }
        cluster.categories = std::move(g.categories);
        cluster.weight = static_cast<double>(cluster.members.size() + cluster.categories.size());
        cluster.over_cap = cluster.weight > c_max;
        cluster.label = pick_label(cluster.members, corpus);
        clusters.push_back(std::move(cluster));
        rank.push_back(best);
    }

    std::vector<std::size_t> order(clusters.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (rank[x] != rank[y]) return rank[x] > rank[y];
        return clusters[x].members.front() < clusters[y].members.front();
    });
    std::vector<Cluster> sorted;
    sorted.reserve(clusters.size());
    for (auto i : order) sorted.push_back(std::move(clusters[i]));
    return sorted;
}

}  // namespace wikisyn
