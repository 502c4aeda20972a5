#include "doctest.h"

#include <functional>
#include <map>

#include "etymograph/legacy_lift.hpp"
#include "etymograph/tei_parser.hpp"
#include "test_util.hpp"

using namespace etymograph;

namespace {

const bcp47::AbbrevTable& table() {
    static const auto t =
        bcp47::AbbrevTable::load_file(std::string(DATA_DIR) + "/abbreviations.json");
    return t;
}

std::multiset<std::string> etymon_surfaces(const EtymologyBlock& block) {
    std::multiset<std::string> out;
    std::function<void(const Citation&)> visit = [&](const Citation& cit) {
        if (cit.kind == Citation::Kind::Etymon && cit.oref) {
            out.insert(cit.oref->surface());
        }
        for (const auto& n : cit.nested) {
            visit(n);
        }
    };
    for (const auto& cit : block.citations) {
        visit(cit);
    }
    // legacy <mentioned> text counts as an etymon surface before the lift
    for (const auto& o : block.opaque) {
        if (o.node.type == xml::Node::Type::Element && o.node.name == "mentioned") {
            out.insert(tei::collapse_text(o.node.all_text()));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("lifting the Abend legacy entry") {
    const auto doc = testutil::parse_fixture("abend_legacy.xml");
    const auto& block = doc.entries[0].etymologies[0];
    const auto lifted = lift::lift_flat_etym(block, table());

    REQUIRE(lifted.block.citations.size() == 2);
    const auto& first = lifted.block.citations[0];
    CHECK(first.kind == Citation::Kind::Etymon);
    CHECK(first.oref->surface() == "âband");
    CHECK(first.lang_label == "Ahd.");
    REQUIRE(first.lang.has_value());
    CHECK(first.lang->raw == "goh");

    const auto& second = lifted.block.citations[1];
    CHECK(second.oref->surface() == "âbent");
    CHECK(second.lang_label == "mhd.");
    CHECK(second.lang->raw == "gmh");

    CHECK(lifted.block.bibls.size() == 1);
    CHECK(lifted.block.lang_labels.empty());  // consumed into the citations
    CHECK(lifted.log.empty());

    // no <mentioned> left behind
    for (const auto& o : lifted.block.opaque) {
        CHECK(o.node.name != "mentioned");
    }
}

TEST_CASE("lift emits the converted citation shape") {
    auto doc = testutil::parse_fixture("abend_legacy.xml");
    auto lifted = lift::lift_flat_etym(doc.entries[0].etymologies[0], table());
    doc.entries[0].etymologies[0] = std::move(lifted.block);
    const std::string out = tei::emit_tei(doc);
    CHECK(out.find("<cit type=\"etymon\" xml:lang=\"gmh\">") != std::string::npos);
    CHECK(out.find("<oRef>âbent</oRef>") != std::string::npos);
    CHECK(out.find("<lang>mhd.</lang>") != std::string::npos);
    CHECK(out.find("<cit type=\"etymon\" xml:lang=\"goh\">") != std::string::npos);
    CHECK(out.find("<mentioned>") == std::string::npos);
}

TEST_CASE("content preservation: etymon surfaces before and after") {
    const auto doc = testutil::parse_fixture("abend_legacy.xml");
    const auto& block = doc.entries[0].etymologies[0];
    const auto before = etymon_surfaces(block);
    const auto lifted = lift::lift_flat_etym(block, table());
    CHECK(etymon_surfaces(lifted.block) == before);
}

TEST_CASE("lifted language tags come from the table's value set") {
    const auto doc = testutil::parse_fixture("abend_legacy.xml");
    const auto lifted = lift::lift_flat_etym(doc.entries[0].etymologies[0], table());
    const auto values = table().value_set();
    for (const auto& cit : lifted.block.citations) {
        if (cit.lang) {
            CHECK(values.contains(cit.lang->raw));
        }
    }
}

TEST_CASE("mentioned without a label warns") {
    const auto block = tei::parse_etym(
        xml::parse("<etym><mentioned>stan</mentioned></etym>"));
    const auto lifted = lift::lift_flat_etym(block, table());
    REQUIRE(lifted.block.citations.size() == 1);
    CHECK(lifted.block.citations[0].oref->surface() == "stan");
    CHECK_FALSE(lifted.block.citations[0].lang.has_value());
    REQUIRE(lifted.log.size() == 1);
    CHECK(lifted.log[0].rule == "W-LIFT-NOLANG");
}

TEST_CASE("unmapped labels keep the display text, lose the tag") {
    const auto block = tei::parse_etym(
        xml::parse("<etym><lang>Xyz.</lang><mentioned>word</mentioned></etym>"));
    const auto lifted = lift::lift_flat_etym(block, table());
    REQUIRE(lifted.block.citations.size() == 1);
    CHECK(lifted.block.citations[0].lang_label == "Xyz.");
    CHECK_FALSE(lifted.block.citations[0].lang.has_value());
    REQUIRE(lifted.log.size() == 1);
    CHECK(lifted.log[0].rule == "W-LIFT-NOLANG");
}

TEST_CASE("prose between pairs becomes notes; separators vanish") {
    const auto block = tei::parse_etym(xml::parse(
        "<etym><lang>mhd.</lang><mentioned>abent</mentioned>, probably via dialect, "
        "<lang>ahd.</lang><mentioned>aband</mentioned>;</etym>"));
    const auto lifted = lift::lift_flat_etym(block, table());
    REQUIRE(lifted.block.citations.size() == 2);
    REQUIRE(lifted.block.notes.size() == 1);
    CHECK(lifted.block.notes[0].find("probably via dialect") != std::string::npos);
}

TEST_CASE("a semicolon ends the label run") {
    const auto block = tei::parse_etym(xml::parse(
        "<etym><lang>mhd.</lang><mentioned>abent</mentioned>;"
        "<mentioned>orphan</mentioned></etym>"));
    const auto lifted = lift::lift_flat_etym(block, table());
    REQUIRE(lifted.block.citations.size() == 2);
    CHECK(lifted.block.citations[0].lang->raw == "gmh");
    CHECK_FALSE(lifted.block.citations[1].lang.has_value());
}

TEST_CASE("already-structured blocks are not legacy") {
    const auto doc = testutil::parse_fixture("ex07_pamplemousse_simple.xml");
    CHECK_THROWS_AS(lift::lift_flat_etym(doc.entries[0].etymologies[0], table()),
                    lift::not_legacy_error);
}

TEST_CASE("normalize collapses the example 3 wrapper") {
    const auto doc = testutil::parse_fixture("ex03_semper.xml");
    const auto result = lift::normalize_entry(doc.entries[0]);
    REQUIRE(result.entry.etymologies.size() == 1);
    REQUIRE(result.entry.etymologies[0].citations.size() == 1);
    const auto& cit = result.entry.etymologies[0].citations[0];
    CHECK(cit.nested.empty());
    CHECK(cit.oref->surface() == "semper");
    REQUIRE(result.log.size() == 1);
    CHECK(result.log[0].rule == "I-NORM-UNWRAP");
    CHECK(result.log[0].severity == Severity::Info);
}

TEST_CASE("normalize is a fixpoint on clean entries") {
    const auto doc = testutil::parse_fixture("minimal_clean.xml");
    const auto result = lift::normalize_entry(doc.entries[0]);
    CHECK(result.entry == doc.entries[0]);
    CHECK(result.log.empty());
}

TEST_CASE("normalize is idempotent over the corpus") {
    for (const auto& name : testutil::corpus()) {
        CAPTURE(name);
        const auto doc = testutil::parse_fixture(name);
        for (const auto& entry : doc.entries) {
            for (const bool aggressive : {false, true}) {
                const auto once = lift::normalize_entry(entry, aggressive);
                const auto twice = lift::normalize_entry(once.entry, aggressive);
                CHECK(once.entry == twice.entry);
            }
        }
    }
}

TEST_CASE("duplicate consecutive etymons: report by default, drop when aggressive") {
    const auto doc = testutil::parse_fixture("ex04_chef_as_printed.xml");
    const auto& entry = doc.entries[0];

    const auto kept = lift::normalize_entry(entry, false);
    CHECK(kept.entry.etymologies[0].citations.size() == 10);
    bool reported = false;
    for (const auto& d : kept.log) {
        reported = reported || d.rule == "I-NORM-DUPCIT";
    }
    CHECK(reported);

    const auto dropped = lift::normalize_entry(entry, true);
    CHECK(dropped.entry.etymologies[0].citations.size() == 9);
    // the survivor is the first printed block
    CHECK(dropped.entry.etymologies[0].citations.back().next->raw == "#šéf");

    // duplicate ids are reported but kept
    bool dupid = false;
    for (const auto& d : kept.log) {
        dupid = dupid || d.rule == "I-NORM-DUPID";
    }
    CHECK(dupid);
}

TEST_CASE("legacy ref-as-etymon becomes an oRef") {
    const auto block = tei::parse_etym(xml::parse(
        "<etym type=\"inheritance\"><cit type=\"etymon\">"
        "<ref target=\"#stan\">stan</ref></cit></etym>"));
    LexicalEntry entry;
    entry.etymologies.push_back(block);
    const auto result = lift::normalize_entry(entry);
    const auto& cit = result.entry.etymologies[0].citations[0];
    REQUIRE(cit.oref.has_value());
    CHECK(cit.oref->surface() == "stan");
    CHECK(cit.oref->corresp->raw == "#stan");
    CHECK(cit.refs.empty());
    REQUIRE(result.log.size() == 1);
    CHECK(result.log[0].rule == "I-NORM-REF-OREF");
}

TEST_CASE("normalized output emits cleanly") {
    auto doc = testutil::parse_fixture("ex03_semper.xml");
    doc.entries[0] = lift::normalize_entry(doc.entries[0]).entry;
    const std::string out = tei::emit_tei(doc);
    // single citation, no wrapper
    CHECK(testutil::count_substring(out, "<cit type=\"etymon\">") == 1);
    const auto again = tei::parse_document(out, "roundtrip");
    CHECK(again.entries[0] == doc.entries[0]);
}
