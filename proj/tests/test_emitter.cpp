#include "doctest.h"

#include "etymograph/tei_parser.hpp"
#include "test_util.hpp"

using namespace etymograph;

TEST_CASE("round-trip: parse(emit(parse(F))) equals parse(F) for every fixture") {
    for (const auto& name : testutil::corpus()) {
        CAPTURE(name);
        const auto original =
            tei::parse_document(testutil::read_file(testutil::fixture_path(name)), name);
        const std::string emitted = tei::emit_tei(original);
        const auto reparsed = tei::parse_document(emitted, name + ".roundtrip");
        CHECK(original == reparsed);
    }
}

TEST_CASE("emit is stable: emitting a reparse reproduces the bytes") {
    for (const auto& name : testutil::corpus()) {
        CAPTURE(name);
        const auto original =
            tei::parse_document(testutil::read_file(testutil::fixture_path(name)), name);
        const std::string first = tei::emit_tei(original);
        const std::string second = tei::emit_tei(tei::parse_document(first, name));
        CHECK(first == second);
    }
}

TEST_CASE("constructed minimal entry emits form and sense in order") {
    const auto doc = tei::parse_document(
        "<entry xml:lang=\"grc\" xml:id=\"logos\"><form type=\"lemma\">"
        "<orth>λόγος</orth></form><sense><def>word</def></sense></entry>",
        "t");
    const std::string out = tei::emit_tei(doc);
    const size_t entry_pos = out.find("<entry xml:id=\"logos\" xml:lang=\"grc\">");
    const size_t form_pos = out.find("<form type=\"lemma\">");
    const size_t orth_pos = out.find("<orth>λόγος</orth>");
    const size_t sense_pos = out.find("<sense>");
    REQUIRE(entry_pos != std::string::npos);
    REQUIRE(form_pos != std::string::npos);
    REQUIRE(orth_pos != std::string::npos);
    REQUIRE(sense_pos != std::string::npos);
    CHECK(entry_pos < form_pos);
    CHECK(form_pos < orth_pos);
    CHECK(orth_pos < sense_pos);
}

TEST_CASE("output is UTF-8 with LF endings and two-space indentation") {
    const auto doc = testutil::parse_fixture("ex03_semper.xml");
    const std::string out = tei::emit_tei(doc);
    CHECK(out.find('\r') == std::string::npos);
    CHECK(out.rfind("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n", 0) == 0);
    CHECK(out.find("\n  <text>") != std::string::npos);
    CHECK(out.find("\n    <body>") != std::string::npos);
    CHECK(out.find("semper") != std::string::npos);
}

TEST_CASE("attribute order is normalized") {
    // source order subtype/type/xml:lang scrambled on purpose
    const auto doc = tei::parse_document(
        "<entry subtype=\"endocentric\" xml:lang=\"de\" type=\"compound\" xml:id=\"hs\">"
        "<form type=\"lemma\"><orth>x</orth></form></entry>",
        "t");
    const std::string out = tei::emit_tei(doc);
    CHECK(out.find("<entry xml:id=\"hs\" xml:lang=\"de\" type=\"compound\""
                   " subtype=\"endocentric\">") != std::string::npos);
}

TEST_CASE("segments emit without injected whitespace") {
    const auto doc = testutil::parse_fixture("ex14_num13_synchronic.xml");
    const std::string out = tei::emit_tei(doc);
    CHECK(out.find("<orth><seg corresp=\"#num-10\">utsi</seg>"
                   "<seg corresp=\"#num-3\">uni</seg></orth>") != std::string::npos);
}

TEST_CASE("empty punctuation marks emit self-closed") {
    const auto doc = testutil::parse_fixture("ex15_rouge_gorge.xml");
    const std::string out = tei::emit_tei(doc);
    CHECK(out.find("<seg>rouge</seg><pc/><seg>gorge</seg>") != std::string::npos);
    CHECK(out.find("<seg>rouge</seg><pc>-</pc><seg>gorge</seg>") != std::string::npos);
}

TEST_CASE("quotes emit inline with embedded markers") {
    const auto doc = testutil::parse_fixture("besides_as_printed.xml");
    const std::string out = tei::emit_tei(doc);
    CHECK(out.find("<quote>&amp; þonne licge on ða swiðran <oRef>sidan</oRef> gode"
                   " while</quote>") != std::string::npos);
    CHECK(out.find("<seg ana=\"#LPeriph\">And <oRef>besides</oRef></seg>") !=
          std::string::npos);
}

TEST_CASE("dates emit four-digit years") {
    const auto doc = testutil::parse_fixture("ex04_chef_cleaned.xml");
    const std::string out = tei::emit_tei(doc);
    CHECK(out.find("<date notBefore=\"0350\" notAfter=\"0399\"/>") != std::string::npos);
}

TEST_CASE("legacy content is preserved through a round trip") {
    const auto doc = testutil::parse_fixture("abend_legacy.xml");
    const std::string out = tei::emit_tei(doc);
    CHECK(out.find("<mentioned>âband</mentioned>") != std::string::npos);
    CHECK(out.find("<lang>Ahd.</lang>") != std::string::npos);
    // loose separator text between the pairs survives
    CHECK(out.find(",") != std::string::npos);
    const auto again = tei::parse_document(out, "roundtrip");
    CHECK(doc == again);
}
