#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "wikisyn/corpus.hpp"

using namespace wikisyn;
using wikisyn::testing::corpus_from_text;

namespace {

std::vector<std::int64_t> ids(std::span<const DocId> xs) {
    std::vector<std::int64_t> out;
    for (auto x : xs) out.push_back(raw(x));
    return out;
}

}  // namespace

TEST_CASE("title normalization") {
    CHECK(normalize_title("robot") == "Robot");
    CHECK(normalize_title("  Space_tourism ") == "Space tourism");
    CHECK(normalize_title("Yuri \t  Gagarin") == "Yuri Gagarin");
    CHECK(normalize_title("__a__b__") == "A b");
    CHECK(normalize_title("Čapek") == "Čapek");
    CHECK(normalize_title("   ").empty());
}

TEST_CASE("empty sources give an empty corpus") {
    const auto corpus = Corpus::ingest({});
    CHECK(corpus.stats() == CorpusStats{0, 0, 0, 0});
    CHECK(corpus_from_text("").stats() == CorpusStats{0, 0, 0, 0});
}

TEST_CASE("single edge is transposed") {
    const auto corpus = corpus_from_text("1\tA\n2\tB\n", "1\t2\n");
    CHECK(corpus.stats() == CorpusStats{2, 1, 0, 0});
    CHECK(ids(corpus.at(DocId{2}).in_links) == std::vector<std::int64_t>{1});
    const auto nb = corpus.neighbors(DocId{1});
    CHECK(ids(nb.out_links) == std::vector<std::int64_t>{2});
    CHECK(nb.in_links.empty());
}

TEST_CASE("lookup by title") {
    const auto corpus = corpus_from_text("1\tRobot\n2\tspace_tourism\n");
    REQUIRE(corpus.lookup_title("Robot") != nullptr);
    CHECK(corpus.lookup_title("Robot")->id == DocId{1});
    CHECK(corpus.lookup_title("robot")->id == DocId{1});
    CHECK(corpus.lookup_title("Space tourism")->id == DocId{2});
    CHECK(corpus.lookup_title("NoSuchPage") == nullptr);
}

TEST_CASE("isolated document neighbors") {
    const auto corpus = corpus_from_text("1\tA\n2\tB\n", "", "5\tTopic\t\n", "2\t5\n");
    const auto nb = corpus.neighbors(DocId{2});
    CHECK(nb.out_links.empty());
    CHECK(nb.in_links.empty());
    REQUIRE(nb.categories.size() == 1);
    CHECK(nb.categories[0] == CategoryId{5});
    CHECK_THROWS_AS(corpus.neighbors(DocId{9}), UnknownDocument);
}

TEST_CASE("ingest errors carry line numbers") {
    SUBCASE("malformed id") {
        try {
            corpus_from_text("# header\n1\tA\nx\tB\n");
            FAIL("expected IngestError");
        } catch (const IngestError& e) {
            CHECK(e.source() == "documents");
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("wrong field count") {
        try {
            corpus_from_text("1\tA\n", "1\n");
            FAIL("expected IngestError");
        } catch (const IngestError& e) {
            CHECK(e.source() == "links");
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("duplicate id") {
        CHECK_THROWS_AS(corpus_from_text("1\tA\n1\tB\n"), IngestError);
    }
    SUBCASE("duplicate normalized title") {
        try {
            corpus_from_text("1\tSpace tourism\n2\tspace_tourism\n");
            FAIL("expected IngestError");
        } catch (const IngestError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("empty title") {
        CHECK_THROWS_AS(corpus_from_text("1\t  \n"), IngestError);
    }
    SUBCASE("category cycle") {
        CHECK_THROWS_WITH_AS(corpus_from_text("1\tA\n", "", "1\tX\t2\n2\tY\t3\n3\tZ\t1\n"),
                             doctest::Contains("cycle"), IngestError);
    }
    SUBCASE("self parent is a cycle") {
        CHECK_THROWS_AS(corpus_from_text("1\tA\n", "", "1\tX\t1\n"), IngestError);
    }
    SUBCASE("unknown parent") {
        CHECK_THROWS_AS(corpus_from_text("1\tA\n", "", "1\tX\t7\n"), IngestError);
    }
    SUBCASE("membership to unknown category") {
        CHECK_THROWS_AS(corpus_from_text("1\tA\n", "", "1\tX\t\n", "1\t2\n"), IngestError);
    }
}

TEST_CASE("dangling and repeated links") {
    const auto corpus = corpus_from_text("1\tA\n2\tB\n", "1\t2\n1\t3\n4\t1\n1\t2\n2\t1\n");
    CHECK(corpus.stats() == CorpusStats{2, 2, 0, 2});
    CHECK(ids(corpus.at(DocId{1}).out_links) == std::vector<std::int64_t>{2});
}

TEST_CASE("CRLF and comments are tolerated") {
    const auto corpus = corpus_from_text("# c\r\n1\tA\r\n\r\n2\tB\r\n", "1\t2\r\n");
    CHECK(corpus.stats() == CorpusStats{2, 1, 0, 0});
    CHECK(corpus.at(DocId{1}).title == "A");
}

TEST_CASE("category forest with forward parent references") {
    const auto corpus = corpus_from_text("1\tA\n", "", "2\tChild\t1\n1\tRoot\t\n", "1\t2\n1\t2\n");
    CHECK(corpus.stats().category_count == 2);
    REQUIRE(corpus.category(CategoryId{2}) != nullptr);
    CHECK(corpus.category(CategoryId{2})->parent == CategoryId{1});
    CHECK_FALSE(corpus.category(CategoryId{1})->parent.has_value());
    CHECK(corpus.at(DocId{1}).categories.size() == 1);
}

TEST_CASE("mini-wiki matches the fixture audit") {
    const auto& corpus = wikisyn::testing::mini_wiki();
    const auto audit = wikisyn::testing::golden("audit.json");
    const auto stats = corpus.stats();
    CHECK(stats == CorpusStats{40, 117, 9, 3});
    CHECK(stats.page_count == audit["stats"]["pages"].get<std::size_t>());
    CHECK(stats.link_count == audit["stats"]["links"].get<std::size_t>());

    const auto nb = corpus.neighbors(DocId{7});
    CHECK(ids(nb.out_links) == audit["doc7"]["out_links"].get<std::vector<std::int64_t>>());
    CHECK(ids(nb.in_links) == audit["doc7"]["in_links"].get<std::vector<std::int64_t>>());
    std::vector<std::int64_t> cats;
    for (auto c : nb.categories) cats.push_back(raw(c));
    CHECK(cats == audit["doc7"]["categories"].get<std::vector<std::int64_t>>());

    CHECK(corpus.lookup_title("Space tourism") != nullptr);
    CHECK(corpus.lookup_title("Yuri Gagarin") != nullptr);
    CHECK(corpus.lookup_title("Cyborg") != nullptr);
}

TEST_CASE("property: transpose, determinism, title round trip") {
    std::mt19937_64 rng(20261016);
    for (int round = 0; round < 25; ++round) {
        const auto text = wikisyn::testing::random_corpus(rng, 5 + round * 3, 3);
        const auto corpus = text.build();

        std::multiset<std::pair<std::int64_t, std::int64_t>> from_out, from_in;
        std::size_t links = 0;
        for (const auto& doc : corpus.documents()) {
            for (auto v : doc.out_links) from_out.emplace(raw(doc.id), raw(v));
            for (auto u : doc.in_links) from_in.emplace(raw(u), raw(doc.id));
            links += doc.out_links.size();
        }
        CHECK(from_out == from_in);
        CHECK(links == corpus.stats().link_count);

        const auto again = text.build();
        CHECK(again.stats() == corpus.stats());
        for (const auto& doc : corpus.documents()) {
            const auto& twin = again.at(doc.id);
            CHECK(twin.out_links == doc.out_links);
            CHECK(twin.in_links == doc.in_links);
            CHECK(corpus.lookup_title(doc.title) == &doc);
        }
    }
}
