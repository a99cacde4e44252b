#include "wikisyn/hits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wikisyn {

std::string_view to_string(RootMode mode) noexcept {
    return mode == RootMode::classic ? "classic" : "adapted";
}

std::optional<RootMode> parse_root_mode(std::string_view text) noexcept {
    if (text == "adapted") return RootMode::adapted;
    if (text == "classic") return RootMode::classic;
    return std::nullopt;
}

void SearchParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (t < 1) fail("t must be >= 1");
    if (d < 0) fail("d must be >= 0");
    if (n < 1) fail("n must be >= 1");
    if (!(c_max > 0.0) || !std::isfinite(c_max)) fail("c_max must be a positive finite number");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail("epsilon must be a positive finite number");
    if (!(k >= 0.0 && k <= 1.0)) fail("k must lie in [0, 1]");
    if (max_iterations < 1) fail("max_iterations must be >= 1");
}

std::int64_t weight_rank_key(double weight) noexcept {
    return static_cast<std::int64_t>(std::floor(weight * 1e9 + 0.5));
}

// ---------------------------------------------------------------- BaseGraph

BaseGraph::BaseGraph(DocId source, std::vector<DocId> vertices, std::vector<Edge> edges,
                     std::vector<DocId> root_set)
    : source_(source), vertices_(std::move(vertices)), edges_(std::move(edges)), root_set_(std::move(root_set)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    std::sort(root_set_.begin(), root_set_.end());
    root_set_.erase(std::unique(root_set_.begin(), root_set_.end()), root_set_.end());

    if (!contains(source_)) throw std::invalid_argument("source is not a base-graph vertex");
    for (DocId r : root_set_) {
        if (!contains(r)) throw std::invalid_argument("root member is not a base-graph vertex");
    }

    const auto n = vertices_.size();
    std::vector<std::pair<std::size_t, std::size_t>> local;
    local.reserve(edges_.size());
    for (const auto& [from, to] : edges_) {
        const auto u = index_of(from);
        const auto v = index_of(to);
        if (!u || !v) throw std::invalid_argument("edge endpoint outside the vertex set");
        local.emplace_back(*u, *v);
    }

    // CSR in both directions; edges_ is sorted so targets come out ascending.
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : local) {
        ++out_offsets_[u + 1];
        ++in_offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        out_offsets_[i + 1] += out_offsets_[i];
        in_offsets_[i + 1] += in_offsets_[i];
    }
    out_targets_.resize(local.size());
    in_sources_.resize(local.size());
    auto out_fill = out_offsets_;
    auto in_fill = in_offsets_;
    for (const auto& [u, v] : local) {
        out_targets_[out_fill[u]++] = v;
        in_sources_[in_fill[v]++] = u;
    }

    authority_.assign(n, 0.0);
    hub_.assign(n, 0.0);
}

std::optional<std::size_t> BaseGraph::index_of(DocId id) const noexcept {
    const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
    if (it == vertices_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::span<const std::size_t> BaseGraph::out_neighbors(std::size_t v) const noexcept {
    return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const std::size_t> BaseGraph::in_neighbors(std::size_t v) const noexcept {
    return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

bool BaseGraph::has_edge(DocId from, DocId to) const noexcept {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

double BaseGraph::authority(DocId id) const {
    const auto i = index_of(id);
    if (!i) throw UnknownDocument(id);
    return authority_[*i];
}

double BaseGraph::hub(DocId id) const {
    const auto i = index_of(id);
    if (!i) throw UnknownDocument(id);
    return hub_[*i];
}

void BaseGraph::set_weights(std::vector<double> authority, std::vector<double> hub) {
    if (authority.size() != vertices_.size() || hub.size() != vertices_.size()) {
        throw std::invalid_argument("weight vector size does not match vertex count");
    }
    authority_ = std::move(authority);
    hub_ = std::move(hub);
    weighted_ = true;
}

// ---------------------------------------------------------------- root/base

RootSet build_root_set(const Corpus& corpus, DocId source, int t, RootMode mode) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    const auto& doc = corpus.at(source);
    const auto& links = mode == RootMode::adapted ? doc.out_links : doc.in_links;

    RootSet root{source, {source}};
    const auto take = std::min<std::size_t>(links.size(), static_cast<std::size_t>(t - 1));
    root.members.insert(root.members.end(), links.begin(), links.begin() + static_cast<std::ptrdiff_t>(take));
    std::sort(root.members.begin(), root.members.end());
    root.members.erase(std::unique(root.members.begin(), root.members.end()), root.members.end());
    return root;
}

BaseGraph build_base_set(const Corpus& corpus, const RootSet& root, int d) {
    if (d < 0) throw std::invalid_argument("d must be >= 0");
    if (root.members.empty()) throw std::invalid_argument("root set is empty");

    std::vector<DocId> vertices = root.members;
    for (DocId r : root.members) {
        const auto& doc = corpus.at(r);
        vertices.insert(vertices.end(), doc.out_links.begin(), doc.out_links.end());
        const auto take = std::min<std::size_t>(doc.in_links.size(), static_cast<std::size_t>(d));
        vertices.insert(vertices.end(), doc.in_links.begin(), doc.in_links.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

    std::vector<BaseGraph::Edge> edges;
    for (DocId u : vertices) {
        for (DocId v : corpus.at(u).out_links) {
            if (std::binary_search(vertices.begin(), vertices.end(), v)) edges.emplace_back(u, v);
        }
    }
    return BaseGraph(root.source, std::move(vertices), std::move(edges), root.members);
}

// ---------------------------------------------------------------- iteration

namespace {

// Scales to unit Euclidean length; a zero vector is left as is.
void normalize(std::vector<double>& x) {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    if (sq == 0.0) return;
    const double norm = std::sqrt(sq);
    for (double& v : x) v /= norm;
}

}  // namespace

IterationReport iterate(BaseGraph& graph, const IterationOptions& options) {
    if (!(options.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (options.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(options.initial_weight > 0.0)) throw std::invalid_argument("initial_weight must be > 0");

    const auto n = graph.size();
    std::vector<double> auth(n, options.initial_weight);
    std::vector<double> hub(n, options.initial_weight);
    std::vector<double> next_auth(n), next_hub(n);

    IterationReport report;
    while (true) {
        for (std::size_t v = 0; v < n; ++v) {
            double sum = 0.0;
            for (auto u : graph.in_neighbors(v)) sum += hub[u];
            next_auth[v] = sum;
        }
        normalize(next_auth);
        for (std::size_t v = 0; v < n; ++v) {
            double sum = 0.0;
            for (auto w : graph.out_neighbors(v)) sum += next_auth[w];
            next_hub[v] = sum;
        }
        normalize(next_hub);

        double error = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            error += std::abs(next_auth[v] - auth[v]) + std::abs(next_hub[v] - hub[v]);
        }
        auth.swap(next_auth);
        hub.swap(next_hub);
        ++report.iterations;
        report.final_error = error;
        if (error <= options.epsilon || report.iterations >= options.max_iterations) break;
    }
    graph.set_weights(std::move(auth), std::move(hub));
    return report;
}

// ---------------------------------------------------------------- selection

AuthorityResult select_authorities(const BaseGraph& graph, int n, double k,
                                   std::optional<std::span<const DocId>> within) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(k >= 0.0 && k <= 1.0)) throw std::invalid_argument("k must lie in [0, 1]");

    const auto s = *graph.index_of(graph.source());
    const auto vertices = graph.vertices();
    std::vector<char> allowed(graph.size(), within ? 0 : 1);
    if (within) {
        for (DocId id : *within) {
            if (auto i = graph.index_of(id)) allowed[*i] = 1;
        }
    }

    // Witnesses of a candidate are exactly the in-neighbours of s that also
    // link to it.
    std::map<std::size_t, std::vector<std::size_t>> witnesses;
    for (auto h : graph.in_neighbors(s)) {
        for (auto a : graph.out_neighbors(h)) {
            if (a != s && allowed[a]) witnesses[a].push_back(h);
        }
    }

    std::vector<std::size_t> candidates;
    candidates.reserve(witnesses.size());
    for (const auto& entry : witnesses) candidates.push_back(entry.first);
    const auto auth = graph.authority();
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
        const auto kx = weight_rank_key(auth[x]);
        const auto ky = weight_rank_key(auth[y]);
        if (kx != ky) return kx > ky;
        return x < y;  // local order is id order
    });
    if (candidates.size() > static_cast<std::size_t>(n)) candidates.resize(static_cast<std::size_t>(n));

    AuthorityResult result;
    std::vector<std::size_t> hub_union;
    double auth_sum = 0.0;
    for (auto a : candidates) {
        result.selected.emplace_back(vertices[a], auth[a]);
        auth_sum += auth[a];
        auto& ws = witnesses[a];
        std::sort(ws.begin(), ws.end());
        auto& out = result.supporting_hubs[vertices[a]];
        for (auto h : ws) {
            out.push_back(vertices[h]);
            hub_union.push_back(h);
        }
    }
    std::sort(hub_union.begin(), hub_union.end());
    hub_union.erase(std::unique(hub_union.begin(), hub_union.end()), hub_union.end());
    double hub_sum = 0.0;
    for (auto h : hub_union) hub_sum += graph.hub()[h];
    result.objective_value = k * auth_sum + (1.0 - k) * hub_sum;
    return result;
}

}  // namespace wikisyn
