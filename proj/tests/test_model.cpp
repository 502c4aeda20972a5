#include "doctest.h"

#include <cctype>

#include "etymograph/model.hpp"
#include "test_util.hpp"

using namespace etymograph;

TEST_CASE("effective language: inherited from the entry") {
    // Example 11: <oRef> under <entry xml:lang="mix"> with no local tag
    const auto doc = testutil::parse_fixture("ex11_kidney.xml");
    const auto lang = effective_language("entry[0]/sense[0]/etym[0]/cit[0]/oRef", doc);
    REQUIRE(lang.has_value());
    CHECK(lang->raw == "mix");
}

TEST_CASE("effective language: explicit tag wins") {
    const auto doc = testutil::parse_fixture("ex03_semper.xml");
    const auto lang = effective_language("entry[0]/etym[0]/cit[0]/cit[0]/oRef", doc);
    REQUIRE(lang.has_value());
    CHECK(lang->raw == "la");
    // the wrapper citation itself still reads the entry language
    CHECK(effective_language("entry[0]/etym[0]/cit[0]", doc)->raw == "srd");
}

TEST_CASE("effective language: mid-chain pRef falls back to the entry") {
    // Example 4, etymon "tsávo" has no xml:lang anywhere below the entry
    const auto doc = testutil::parse_fixture("ex04_chef_cleaned.xml");
    const auto lang = effective_language("entry[0]/etym[0]/cit[4]/pRef", doc);
    REQUIRE(lang.has_value());
    CHECK(lang->raw == "fr");
    // while the first stage carries its own xml:lang="la"
    CHECK(effective_language("entry[0]/etym[0]/cit[0]/pRef", doc)->raw == "la");
}

TEST_CASE("effective language: absent when no ancestor carries one") {
    const auto doc = testutil::parse_fixture("abend_legacy.xml");
    CHECK_FALSE(effective_language("entry[0]", doc).has_value());
    CHECK_FALSE(effective_language("entry[0]/form[0]", doc).has_value());
}

TEST_CASE("effective language: unknown nodes throw") {
    const auto doc = testutil::parse_fixture("ex03_semper.xml");
    CHECK_THROWS_AS(effective_language("entry[7]", doc), unknown_node_error);
    CHECK_THROWS_AS(effective_language("entry[0]/etym[3]", doc), unknown_node_error);
    CHECK_THROWS_AS(effective_language("nonsense", doc), unknown_node_error);
}

TEST_CASE("effective language is idempotent along ancestry") {
    // a node with no explicit tag reads the same language as its parent
    const auto doc = testutil::parse_fixture("ex04_chef_cleaned.xml");
    const std::string chains[][2] = {
        {"entry[0]/etym[0]", "entry[0]"},
        {"entry[0]/etym[0]/cit[4]", "entry[0]/etym[0]"},
        {"entry[0]/etym[0]/cit[4]/pRef", "entry[0]/etym[0]/cit[4]"},
        {"entry[0]/form[0]", "entry[0]"},
        {"entry[0]/sense[0]", "entry[0]"},
    };
    for (const auto& pair : chains) {
        CAPTURE(pair[0]);
        CHECK(effective_language(pair[0], doc) == effective_language(pair[1], doc));
    }
}

TEST_CASE("resolve_ref per spec examples") {
    const auto num13 = testutil::parse_fixture("ex14_num13_synchronic.xml");
    CHECK(std::holds_alternative<Resolved>(resolve_ref(CrossRef{"#num-10"}, num13)));

    const auto kiti = testutil::parse_fixture("ex12_kiti.xml");
    const auto external =
        resolve_ref(CrossRef{"http://dbpedia.org/resource/Horse"}, kiti);
    REQUIRE(std::holds_alternative<External>(external));
    CHECK(std::get<External>(external).uri == "http://dbpedia.org/resource/Horse");

    // Example 4 as printed declares xml:id="távo" but points at "#táβo"
    const auto chef = testutil::parse_fixture("ex04_chef_as_printed.xml");
    CHECK(std::holds_alternative<Unresolved>(resolve_ref(CrossRef{"#táβo"}, chef)));
    CHECK(std::holds_alternative<Resolved>(resolve_ref(CrossRef{"#távo"}, chef)));
}

TEST_CASE("resolve_ref resolves iff the id is indexed") {
    const auto doc = testutil::parse_fixture("besides_as_printed.xml");
    for (const auto& [id, target] : doc.id_index) {
        CAPTURE(id);
        CHECK(std::holds_alternative<Resolved>(resolve_ref(CrossRef{"#" + id}, doc)));
    }
    CHECK(std::holds_alternative<Unresolved>(resolve_ref(CrossRef{"#at-1450"}, doc)));
    CHECK(std::holds_alternative<Unresolved>(resolve_ref(CrossRef{"#"}, doc)));
}

TEST_CASE("id index keeps the first binding and records duplicates") {
    const auto doc = testutil::parse_fixture("ex04_chef_as_printed.xml");
    REQUIRE(doc.duplicate_ids.size() == 1);
    CHECK(doc.duplicate_ids[0].id == "šéf");
    CHECK(doc.duplicate_ids[0].duplicates.size() == 1);
    const auto resolved = resolve_ref(CrossRef{"#šéf"}, doc);
    REQUIRE(std::holds_alternative<Resolved>(resolved));
    CHECK(std::get<Resolved>(resolved).target.path == doc.duplicate_ids[0].first.path);
}

TEST_CASE("two parses of the same bytes yield equal documents") {
    for (const auto& name : testutil::corpus()) {
        CAPTURE(name);
        const std::string bytes = testutil::read_file(testutil::fixture_path(name));
        const auto a = tei::parse_document(bytes, name);
        const auto b = tei::parse_document(bytes, name);
        CHECK(a == b);
    }
}

TEST_CASE("documents with different content compare unequal") {
    const auto a = tei::parse_document("<entry xml:lang=\"en\"><form type=\"lemma\">"
                                       "<orth>word</orth></form></entry>", "a");
    const auto b = tei::parse_document("<entry xml:lang=\"en\"><form type=\"lemma\">"
                                       "<orth>wort</orth></form></entry>", "b");
    CHECK_FALSE(a == b);
}

TEST_CASE("segmented form surface is the concatenation of segments") {
    const auto doc = testutil::parse_fixture("ex15_rouge_gorge.xml");
    const auto& form = doc.entries[0].forms[0];
    REQUIRE(form.orths.size() == 1);
    CHECK(form.orths[0].surface() == "rouge-gorge");
    REQUIRE(form.nested.size() == 1);
    CHECK(form.nested[0].orths[0].surface() == "rougegorge");
    for (const auto& seg : form.orths[0].segments) {
        if (seg.kind == FormSegment::Kind::Punct) {
            for (char c : seg.text) {
                CHECK_FALSE(std::isalnum(static_cast<unsigned char>(c)));
            }
        }
    }
}

TEST_CASE("path comparison is natural on indices") {
    CHECK(compare_paths("entry[2]", "entry[10]") < 0);
    CHECK(compare_paths("entry[0]/cit[9]", "entry[0]/cit[10]") < 0);
    CHECK(compare_paths("entry[0]/cit[2]", "entry[0]/cit[2]") == 0);
    CHECK(compare_paths("entry[0]/etym[0]", "entry[0]/form[0]") < 0);
}
