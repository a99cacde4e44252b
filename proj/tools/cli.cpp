#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"
#include "wikisyn/corpus.hpp"
#include "wikisyn/report.hpp"
#include "wikisyn/search.hpp"
#include "wikisyn/service.hpp"
#include "wikisyn/synthetic.hpp"

namespace wikisyn::cli {

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

struct CorpusFlags {
    std::string manifest;
    std::string docs, links, cats, members;

    void attach(CLI::App& cmd) {
        cmd.add_option("--manifest", manifest, "JSON manifest naming the four corpus files");
        cmd.add_option("--docs", docs, "documents file (id<TAB>title)");
        cmd.add_option("--links", links, "links file (src<TAB>dst)");
        cmd.add_option("--cats", cats, "category tree file (id<TAB>name<TAB>parent)");
        cmd.add_option("--members", members, "category membership file (doc<TAB>cat)");
    }

    bool given() const { return !manifest.empty() || !docs.empty() || !links.empty() || !cats.empty() || !members.empty(); }

    CorpusPaths paths() const {
        CorpusPaths p;
        if (!manifest.empty()) p = CorpusPaths::from_manifest(manifest);
        if (!docs.empty()) p.documents = docs;
        if (!links.empty()) p.links = links;
        if (!cats.empty()) p.categories = cats;
        if (!members.empty()) p.members = members;
        return p;
    }
};

std::optional<Corpus> load_corpus(const CorpusPaths& paths, std::ostream& err) {
    try {
        return Corpus::load(paths);
    } catch (const std::exception& e) {
        err << "error: corpus load failed: " << e.what() << '\n';
        return std::nullopt;
    }
}

void print_stats(const CorpusStats& s, std::ostream& out) {
    out << "pages\t" << s.page_count << '\n'
        << "links\t" << s.link_count << '\n'
        << "categories\t" << s.category_count << '\n'
        << "dropped_dangling_links\t" << s.dropped_dangling_links << '\n';
}

int serve(const Corpus& corpus, ServiceConfig cfg, std::ostream& out, std::ostream& err) {
    httplib::Server server;
    configure_socket_options(server);
    Service service(corpus);
    service.install(server);

    int port = cfg.port;
    if (port == 0) {
        port = server.bind_to_any_port(cfg.host);
        if (port < 0) port = -1;
    } else if (!server.bind_to_port(cfg.host, port)) {
        port = -1;
    }
    if (port < 0) {
        err << "error: cannot listen on " << cfg.host << ':' << cfg.port << '\n';
        return kPortUnavailable;
    }
    out << "listening on " << cfg.host << ':' << port << std::endl;

    g_stop = false;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::thread watcher([&server] {
        while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(50));
        server.stop();
    });
    server.listen_after_bind();
    g_stop = true;
    watcher.join();
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Related-term search over a linked, categorized corpus"};
    app.name("wikisyn");
    app.require_subcommand(1);

    CorpusFlags corpus_flags;

    auto* stats_cmd = app.add_subcommand("stats", "Load a corpus and print its statistics");
    corpus_flags.attach(*stats_cmd);

    auto* search_cmd = app.add_subcommand("search", "Find related terms for a page title");
    corpus_flags.attach(*search_cmd);
    std::string word;
    std::string format = "table";
    std::string root_mode = "adapted";
    SearchParams params;
    search_cmd->add_option("word", word, "source page title")->required();
    search_cmd->add_option("-t,--t", params.t, "root set volume")->capture_default_str();
    search_cmd->add_option("-d,--d", params.d, "in-links added per root document")->capture_default_str();
    search_cmd->add_option("-n,--n", params.n, "results per cluster")->capture_default_str();
    search_cmd->add_option("--c-max", params.c_max, "maximum cluster weight")->capture_default_str();
    search_cmd->add_option("--epsilon", params.epsilon, "iteration error threshold")->capture_default_str();
    search_cmd->add_option("-k,--k", params.k, "authority share of the objective")->capture_default_str();
    search_cmd->add_option("--max-iterations", params.max_iterations, "iteration cap")->capture_default_str();
    search_cmd->add_option("--root-mode", root_mode, "adapted or classic")
        ->check(CLI::IsMember({"adapted", "classic"}))
        ->capture_default_str();
    search_cmd->add_option("--format", format, "table, json or dot")
        ->check(CLI::IsMember({"table", "json", "dot"}))
        ->capture_default_str();

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    corpus_flags.attach(*serve_cmd);
    std::string config_path;
    std::string listen;
    serve_cmd->add_option("--config", config_path, "JSON service configuration");
    serve_cmd->add_option("--listen", listen, "host:port (port 0 picks a free port)");

    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic corpus");
    SyntheticSpec spec;
    std::string out_dir;
    gen_cmd->add_option("--pages", spec.pages)->capture_default_str();
    gen_cmd->add_option("--links", spec.links)->capture_default_str();
    gen_cmd->add_option("--categories", spec.categories)->capture_default_str();
    gen_cmd->add_option("--seed", spec.seed)->capture_default_str();
    gen_cmd->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadFlags;
    }

    if (*stats_cmd) {
        std::optional<Corpus> corpus;
        try {
            corpus = load_corpus(corpus_flags.paths(), err);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
        }
        if (!corpus) return kCorpusLoadFailure;
        print_stats(corpus->stats(), out);
        return kOk;
    }

    if (*search_cmd) {
        params.root_mode = *parse_root_mode(root_mode);
        try {
            params.validate();
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << '\n';
            return kBadFlags;
        }
        std::optional<Corpus> corpus;
        try {
            corpus = load_corpus(corpus_flags.paths(), err);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
        }
        if (!corpus) return kCorpusLoadFailure;
        const auto* doc = corpus->lookup_title(word);
        if (doc == nullptr) {
            err << "error: no page titled '" << word << "'\n";
            return kUnknownWord;
        }
        params.source = doc->id;
        const auto result = search(*corpus, params);
        if (format == "json") {
            out << dump_json(search_to_json(result, *corpus));
        } else if (format == "dot") {
            out << render_dot(result, *corpus);
        } else {
            out << render_table(result, *corpus);
        }
        return kOk;
    }

    if (*serve_cmd) {
        ServiceConfig cfg;
        try {
            if (!config_path.empty()) cfg = ServiceConfig::from_file(config_path);
            cfg.apply_environment();
            if (!listen.empty()) cfg.set_listen(listen);
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << '\n';
            return kBadFlags;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kCorpusLoadFailure;
        }
        std::optional<Corpus> corpus;
        try {
            if (corpus_flags.given()) cfg.corpus = corpus_flags.paths();
            corpus = load_corpus(cfg.corpus, err);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
        }
        if (!corpus) return kCorpusLoadFailure;
        return serve(*corpus, cfg, out, err);
    }

    if (*gen_cmd) {
        const std::filesystem::path dir = out_dir;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        std::ofstream docs(dir / "docs.tsv"), links(dir / "links.tsv"), cats(dir / "categories.tsv"),
            members(dir / "members.tsv");
        std::ofstream manifest(dir / "manifest.json");
        if (!docs || !links || !cats || !members || !manifest) {
            err << "error: cannot write to " << dir << '\n';
            return kBadFlags;
        }
        try {
            generate_synthetic(spec, SyntheticStreams{docs, links, cats, members});
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << '\n';
            return kBadFlags;
        }
        manifest << R"({"docs": "docs.tsv", "links": "links.tsv", "categories": "categories.tsv", "members": "members.tsv"})"
                 << '\n';
        out << "wrote " << spec.pages << " pages, " << spec.links << " links to " << dir.string() << '\n';
        return kOk;
    }
    return kBadFlags;
}

}  // namespace wikisyn::cli
