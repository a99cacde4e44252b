#pragma once

// Hub/authority analysis around a source document: root set, base set,
// the mutual-reinforcement iteration, and co-citation constrained selection
// of authorities.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wikisyn/corpus.hpp"

namespace wikisyn {

enum class RootMode {
    adapted,  // root = source plus pages it links to
    classic,  // root = source plus pages linking to it
};

std::string_view to_string(RootMode mode) noexcept;
std::optional<RootMode> parse_root_mode(std::string_view text) noexcept;

struct SearchParams {
    static constexpr int default_t = 50;
    static constexpr int default_d = 20;
    static constexpr int default_n = 10;
    static constexpr double default_c_max = 30.0;
    static constexpr double default_epsilon = 1e-8;
    static constexpr double default_k = 0.5;
    static constexpr int default_max_iterations = 1000;

    DocId source{};
    int t = default_t;              // root set volume
    int d = default_d;              // in-link cap per root document
    int n = default_n;              // results per cluster
    double c_max = default_c_max;   // cluster weight cap
    double epsilon = default_epsilon;
    double k = default_k;           // authority/hub mix of the objective
    RootMode root_mode = RootMode::adapted;
    int max_iterations = default_max_iterations;

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;

    friend bool operator==(const SearchParams&, const SearchParams&) = default;
};

struct RootSet {
    DocId source{};
    std::vector<DocId> members;  // ascending, always contains source
};

/// Induced subgraph of the base set. Vertices are kept in ascending id order
/// and addressed by their position ("local index") for the weight vectors.
class BaseGraph {
public:
    using Edge = std::pair<DocId, DocId>;

    BaseGraph() = default;
    /// Vertices are sorted and deduplicated; edges with an endpoint outside
    /// the vertex set are rejected with std::invalid_argument, as is a
    /// source or root member that is not a vertex.
    BaseGraph(DocId source, std::vector<DocId> vertices, std::vector<Edge> edges,
              std::vector<DocId> root_set = {});

    DocId source() const noexcept { return source_; }
    std::span<const DocId> vertices() const noexcept { return vertices_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const DocId> root_set() const noexcept { return root_set_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    std::optional<std::size_t> index_of(DocId id) const noexcept;
    bool contains(DocId id) const noexcept { return index_of(id).has_value(); }

    /// Local indices of successors/predecessors, ascending.
    std::span<const std::size_t> out_neighbors(std::size_t v) const noexcept;
    std::span<const std::size_t> in_neighbors(std::size_t v) const noexcept;
    bool has_edge(DocId from, DocId to) const noexcept;

    std::span<const double> authority() const noexcept { return authority_; }
    std::span<const double> hub() const noexcept { return hub_; }
    double authority(DocId id) const;
    double hub(DocId id) const;
    bool weighted() const noexcept { return weighted_; }

    void set_weights(std::vector<double> authority, std::vector<double> hub);

private:
    DocId source_{};
    std::vector<DocId> vertices_;
    std::vector<Edge> edges_;  // sorted (from, to)
    std::vector<DocId> root_set_;
    std::vector<std::size_t> out_offsets_, out_targets_;
    std::vector<std::size_t> in_offsets_, in_sources_;
    std::vector<double> authority_, hub_;
    bool weighted_ = false;
};

struct IterationReport {
    int iterations = 0;
    double final_error = 0.0;
};

struct IterationOptions {
    double epsilon = SearchParams::default_epsilon;
    int max_iterations = SearchParams::default_max_iterations;
    double initial_weight = 1.0;
};

struct AuthorityResult {
    std::vector<std::pair<DocId, double>> selected;        // authority desc, id asc
    std::map<DocId, std::vector<DocId>> supporting_hubs;  // selected id -> witnesses, ascending
    double objective_value = 0.0;
};

/// Throws UnknownDocument for an unknown source.
RootSet build_root_set(const Corpus& corpus, DocId source, int t, RootMode mode);

/// Root plus every out-link target of each root document plus the first `d`
/// in-link sources of each, in stored order; edges are the induced ones.
BaseGraph build_base_set(const Corpus& corpus, const RootSet& root, int d);

/// Runs authority/hub updates with per-step unit-norm scaling until the
/// summed absolute change is <= epsilon or the iteration cap is hit.
IterationReport iterate(BaseGraph& graph, const IterationOptions& options = {});

/// Top-n authorities among vertices co-cited with the source, i.e. having a
/// hub h in the graph with edges h->source and h->candidate. When `within` is
/// given, only those vertices are candidates (witnesses may lie anywhere).
AuthorityResult select_authorities(const BaseGraph& graph, int n, double k,
                                   std::optional<std::span<const DocId>> within = std::nullopt);

/// Ordering key for weights, rounded to a 1e-9 grid so that mathematically
/// equal weights computed along different summation orders tie and fall
/// through to the id order.
std::int64_t weight_rank_key(double weight) noexcept;

}  // namespace wikisyn
