#include "wikisyn/report.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wikisyn {

using nlohmann::json;

namespace {

json ids_to_json(std::span<const DocId> ids) {
    json out = json::array();
    for (DocId id : ids) out.push_back(raw(id));
    return out;
}

template <typename T>
T field(const json& doc, const char* key, T fallback) {
    if (!doc.contains(key)) return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
    }
}

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

json params_to_json(const SearchParams& p) {
    return json{{"source", raw(p.source)},
                {"t", p.t},
                {"d", p.d},
                {"n", p.n},
                {"c_max", p.c_max},
                {"epsilon", p.epsilon},
                {"k", p.k},
                {"root_mode", std::string(to_string(p.root_mode))},
                {"max_iterations", p.max_iterations}};
}

SearchParams params_from_json(const json& doc, SearchParams p) {
    if (!doc.is_object()) throw std::invalid_argument("params must be an object");
    p.source = DocId{field<std::int64_t>(doc, "source", raw(p.source))};
    p.t = field<int>(doc, "t", p.t);
    p.d = field<int>(doc, "d", p.d);
    p.n = field<int>(doc, "n", p.n);
    p.c_max = field<double>(doc, "c_max", p.c_max);
    p.epsilon = field<double>(doc, "epsilon", p.epsilon);
    p.k = field<double>(doc, "k", p.k);
    p.max_iterations = field<int>(doc, "max_iterations", p.max_iterations);
    if (doc.contains("root_mode")) {
        const auto mode = parse_root_mode(field<std::string>(doc, "root_mode", ""));
        if (!mode) throw std::invalid_argument("root_mode must be 'adapted' or 'classic'");
        p.root_mode = *mode;
    }
    return p;
}

json search_to_json(const SearchResult& result, const Corpus& corpus) {
    const auto& graph = result.graph;
    auto member = [&](DocId id) {
        return json{{"id", raw(id)},
                    {"title", corpus.at(id).title},
                    {"authority", graph.authority(id)},
                    {"hub", graph.hub(id)}};
    };

    json clusters = json::array();
    for (const auto& [cluster, authorities] : result.clusters) {
        json members = json::array();
        for (DocId id : cluster.members) members.push_back(member(id));
        json selected = json::array();
        for (const auto& [id, weight] : authorities.selected) {
            auto entry = member(id);
            entry["supporting_hubs"] = ids_to_json(authorities.supporting_hubs.at(id));
            selected.push_back(std::move(entry));
        }
        json categories = json::array();
        for (CategoryId c : cluster.categories) categories.push_back(raw(c));
        clusters.push_back(json{{"label", cluster.label},
                                {"weight", cluster.weight},
                                {"over_cap", cluster.over_cap},
                                {"categories", std::move(categories)},
                                {"members", std::move(members)},
                                {"selected", std::move(selected)},
                                {"objective_value", authorities.objective_value}});
    }

    json vertices = json::array();
    for (DocId id : graph.vertices()) {
        auto v = member(id);
        v["root"] = std::binary_search(graph.root_set().begin(), graph.root_set().end(), id);
        vertices.push_back(std::move(v));
    }
    json edges = json::array();
    for (const auto& [from, to] : graph.edges()) edges.push_back(json::array({raw(from), raw(to)}));

    const auto source = graph.source();
    return json{{"source", json{{"id", raw(source)}, {"title", corpus.at(source).title}}},
                {"params", params_to_json(result.params)},
                {"iterations_used", result.iteration.iterations},
                {"final_error", result.iteration.final_error},
                {"clusters", std::move(clusters)},
                {"graph", json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}}}};
}

json neighbors_to_json(DocId id, const Corpus& corpus) {
    const auto nb = corpus.neighbors(id);
    json titles = json::object();
    auto note = [&](DocId d) { titles[std::to_string(raw(d))] = corpus.at(d).title; };
    note(id);
    for (DocId d : nb.out_links) note(d);
    for (DocId d : nb.in_links) note(d);
    json categories = json::array();
    for (CategoryId c : nb.categories) {
        const auto* cat = corpus.category(c);
        categories.push_back(json{{"id", raw(c)}, {"name", cat ? cat->name : std::string()}});
    }
    return json{{"id", raw(id)},
                {"title", corpus.at(id).title},
                {"out_links", ids_to_json(nb.out_links)},
                {"in_links", ids_to_json(nb.in_links)},
                {"categories", std::move(categories)},
                {"titles", std::move(titles)}};
}

std::string dump_json(const json& doc) {
    return doc.dump(2) + "\n";
}

std::string render_table(const SearchResult& result, const Corpus& corpus) {
    std::ostringstream out;
    out << std::left << std::setw(6) << "rank" << std::setw(9) << "cluster" << std::setw(36) << "title"
        << std::right << std::setw(12) << "authority" << std::setw(12) << "hub" << "  " << "label" << '\n';
    int rank = 0;
    int cluster_no = 0;
    out << std::fixed << std::setprecision(6);
    for (const auto& [cluster, authorities] : result.clusters) {
        ++cluster_no;
        for (const auto& [id, weight] : authorities.selected) {
            out << std::left << std::setw(6) << ++rank << std::setw(9) << cluster_no << std::setw(36)
                << corpus.at(id).title << std::right << std::setw(12) << weight << std::setw(12)
                << result.graph.hub(id) << "  " << cluster.label << '\n';
        }
    }
    return out.str();
}

std::string render_dot(const SearchResult& result, const Corpus& corpus) {
    std::set<DocId> selected;
    for (const auto& entry : result.clusters) {
        for (const auto& [id, w] : entry.authorities.selected) selected.insert(id);
    }
    const auto& graph = result.graph;
    std::ostringstream out;
    out << "digraph base_set {\n";
    for (DocId id : graph.vertices()) {
        out << "  \"" << raw(id) << "\" [label=\"" << dot_escape(corpus.at(id).title) << '"';
        if (id == graph.source()) {
            out << ", shape=doublecircle";
        } else if (selected.contains(id)) {
            out << ", style=filled, fillcolor=lightblue";
        }
        out << "];\n";
    }
    for (const auto& [from, to] : graph.edges()) out << "  \"" << raw(from) << "\" -> \"" << raw(to) << "\";\n";
    out << "}\n";
    return out.str();
}

}  // namespace wikisyn
