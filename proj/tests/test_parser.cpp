#include "doctest.h"

#include "etymograph/tei_parser.hpp"
#include "test_util.hpp"

using namespace etymograph;

namespace {

size_t count_etymons(const Citation& cit) {
    size_t n = cit.kind == Citation::Kind::Etymon ? 1 : 0;
    for (const auto& nested : cit.nested) {
        n += count_etymons(nested);
    }
    return n;
}

size_t count_etymons(const EtymologyBlock& block) {
    size_t n = 0;
    for (const auto& cit : block.citations) {
        n += count_etymons(cit);
    }
    for (const auto& nested : block.nested) {
        n += count_etymons(nested);
    }
    return n;
}

size_t count_etymons(const Document& doc) {
    size_t n = 0;
    for (const auto& entry : doc.entries) {
        for (const auto& block : entry.etymologies) {
            n += count_etymons(block);
        }
        for (const auto& sense : entry.senses) {
            for (const auto& block : sense.etymologies) {
                n += count_etymons(block);
            }
            for (const auto& t : sense.translations) {
                n += count_etymons(t);
            }
        }
    }
    return n;
}

}  // namespace

TEST_CASE("example 3 parses to one Sardinian entry") {
    const auto doc = testutil::parse_fixture("ex03_semper.xml");
    REQUIRE(doc.entries.size() == 1);
    const auto& entry = doc.entries[0];
    CHECK(entry.id == "semper");
    REQUIRE(entry.lang.has_value());
    CHECK(entry.lang->raw == "srd");
    REQUIRE(entry.etymologies.size() == 1);
    CHECK(entry.etymologies[0].etym_type == EtymType::Inheritance);
    // nested empty etymon wrapper kept faithfully
    REQUIRE(entry.etymologies[0].citations.size() == 1);
    REQUIRE(entry.etymologies[0].citations[0].nested.size() == 1);
    const auto& inner = entry.etymologies[0].citations[0].nested[0];
    REQUIRE(inner.oref.has_value());
    CHECK(inner.oref->surface() == "semper");
    CHECK(inner.oref->lang->raw == "la");
}

TEST_CASE("vacuous TEI document") {
    std::vector<Diagnostic> errors;
    const auto doc = tei::parse_document("<TEI><text><body/></text></TEI>", "empty");
    CHECK(doc.entries.empty());
    for (const auto& d : doc.findings) {
        CHECK(d.severity != Severity::Error);
    }
}

TEST_CASE("corpus entry and etymon counts match raw text search") {
    for (const auto& name : testutil::corpus()) {
        CAPTURE(name);
        const std::string bytes = testutil::read_file(testutil::fixture_path(name));
        const auto doc = tei::parse_document(bytes, name);
        CHECK(doc.entries.size() == testutil::count_substring(bytes, "<entry"));
        CHECK(count_etymons(doc) == testutil::count_substring(bytes, "type=\"etymon\""));
        for (const auto& d : doc.findings) {
            CHECK(d.severity != Severity::Error);
        }
    }
}

TEST_CASE("teiHeader is skipped with an info finding") {
    const auto doc = tei::parse_document(
        "<TEI><teiHeader><fileDesc/></teiHeader><text><body>"
        "<entry xml:lang=\"en\"><form type=\"lemma\"><orth>x</orth></form></entry>"
        "</body></text></TEI>",
        "t");
    CHECK(doc.entries.size() == 1);
    REQUIRE(doc.findings.size() == 1);
    CHECK(doc.findings[0].rule == "I-PARSE-SKIP");
    CHECK(doc.findings[0].severity == Severity::Info);
}

TEST_CASE("example 14: compound entry attributes") {
    const auto doc = testutil::parse_fixture("ex14_num13_synchronic.xml");
    const auto& entry = doc.entries[0];
    CHECK(entry.entry_type == "compound");
    CHECK(entry.entry_subtype == "exocentric");
    const auto& orth = entry.forms[0].orths[0];
    REQUIRE(orth.segments.size() == 2);
    CHECK(orth.segments[0].text == "utsi");
    CHECK(orth.segments[0].corresp->raw == "#num-10");
    CHECK(orth.segments[1].text == "uni");
    CHECK(orth.surface() == "utsiuni");
}

TEST_CASE("degenerate entry") {
    const auto entry = tei::parse_entry(xml::parse("<entry/>"));
    CHECK_FALSE(entry.id.has_value());
    CHECK_FALSE(entry.lang.has_value());
    CHECK(entry.forms.empty());
    CHECK(entry.senses.empty());
    CHECK(entry.etymologies.empty());
}

TEST_CASE("example 6: nested inflected form and form-targeted etym") {
    const auto doc = testutil::parse_fixture("ex06_perdere.xml");
    const auto& entry = doc.entries[0];
    REQUIRE(entry.forms.size() == 1);
    REQUIRE(entry.forms[0].nested.size() == 1);
    const auto& inflected = entry.forms[0].nested[0];
    CHECK(inflected.id == "perdere-1s-rem-pt-indic");
    CHECK(inflected.form_type == "inflected");
    CHECK(inflected.orths[0].surface() == "persí");
    // aspect/voice arrive through <gram type="...">
    REQUIRE(inflected.grammar.has_value());
    CHECK(inflected.grammar->person == "1");
    CHECK(inflected.grammar->extra.size() == 2);

    REQUIRE(entry.etymologies.size() == 1);
    REQUIRE(entry.etymologies[0].nested.size() == 1);
    const auto& nested = entry.etymologies[0].nested[0];
    CHECK(nested.corresp->raw == "#perdere-1s-rem-pt-indic");
    // stray <gram> printed outside <gramGrp> merges into the grammar
    REQUIRE(nested.citations.size() == 1);
    REQUIRE(nested.citations[0].grammar.has_value());
    CHECK(nested.citations[0].grammar->extra.size() == 2);
}

TEST_CASE("example 17: metaphor nested in compounding") {
    const auto doc = testutil::parse_fixture("ex17_handschuh.xml");
    const auto& block = doc.entries[0].etymologies[0];
    CHECK(block.etym_type == EtymType::Compounding);
    REQUIRE(block.citations.size() == 1);
    CHECK(block.citations[0].oref->surface() == "Hand");
    REQUIRE(block.nested.size() == 1);
    CHECK(block.nested[0].etym_type == EtymType::Metaphor);
    REQUIRE(block.nested[0].citations.size() == 1);
    CHECK(block.nested[0].citations[0].oref->surface() == "Schuh");
    CHECK(block.nested[0].citations[0].pref->surface() == "ʃ u:");
}

TEST_CASE("untyped etym maps to Other with a queued warning") {
    std::vector<Diagnostic> findings;
    const auto block = tei::parse_etym(xml::parse("<etym/>"), 0, &findings);
    CHECK(block.etym_type == EtymType::Other);
    CHECK(block.other_type.empty());
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].rule == "W-ETYM-UNTYPED");
    CHECK(findings[0].severity == Severity::Warning);
}

TEST_CASE("open etym types keep their literal string") {
    const auto block = tei::parse_etym(xml::parse("<etym type=\"phonological-processA\"/>"));
    CHECK(block.etym_type == EtymType::Other);
    CHECK(block.other_type == "phonological-processA");
    // the six names match case-insensitively
    CHECK(tei::parse_etym(xml::parse("<etym type=\"Borrowing\"/>")).etym_type ==
          EtymType::Borrowing);
}

TEST_CASE("implicit encoding: bare pRef under etym stays opaque") {
    // the lighter encoding that skips the citation wrapper
    std::vector<Diagnostic> findings;
    const auto block = tei::parse_etym(
        xml::parse("<etym type=\"phonological-processA\">"
                   "<pRef xml:lang=\"gmh\">hant</pRef></etym>"),
        0, &findings);
    CHECK(block.other_type == "phonological-processA");
    CHECK(block.citations.empty());
    REQUIRE(block.opaque.size() == 1);
    CHECK(block.opaque[0].node.name == "pRef");
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].rule == "W-PARSE-OPAQUE");
}

TEST_CASE("example 18: compounding nested in borrowing") {
    const auto doc = testutil::parse_fixture("ex18_pamplemousse_full.xml");
    const auto& block = doc.entries[0].etymologies[0];
    CHECK(block.etym_type == EtymType::Borrowing);
    CHECK(block.labels == std::vector<std::string>{"source"});
    REQUIRE(block.lang_labels.size() == 1);
    CHECK(block.lang_labels[0].text == "Dutch");
    REQUIRE(block.nested.size() == 1);
    const auto& compounding = block.nested[0];
    CHECK(compounding.etym_type == EtymType::Compounding);
    REQUIRE(compounding.citations.size() == 2);
    CHECK(compounding.citations[0].oref->surface() == "pompel");
    CHECK(compounding.citations[1].oref->surface() == "limoes");
    // the stray <ref> under <etym> is preserved opaque
    REQUIRE(compounding.opaque.size() == 1);
    CHECK(compounding.opaque[0].node.name == "ref");
}

TEST_CASE("besides stage 0: attestation, translation, components") {
    const auto doc = testutil::parse_fixture("besides_as_printed.xml");
    const auto& block = doc.entries[0].senses[0].etymologies[0];
    CHECK(block.etym_type == EtymType::Grammaticalization);
    REQUIRE(block.citations.size() == 9);
    const auto& stage0 = block.citations[0];
    CHECK(stage0.id == "at-850-950");
    REQUIRE(stage0.oref.has_value());
    CHECK(stage0.oref->surface() == "sidan");
    REQUIRE(stage0.oref->segments.size() == 2);
    CHECK(stage0.oref->segments[0].id == "els1");

    REQUIRE(stage0.nested.size() == 3);
    const auto& comp1 = stage0.nested[0];
    CHECK(comp1.kind == Citation::Kind::Component);
    CHECK(comp1.component_corresp->raw == "#els1");
    CHECK(comp1.grammar->pos == "noun");
    const auto& comp2 = stage0.nested[1];
    CHECK(comp2.component_corresp->raw == "#els2");
    CHECK(comp2.grammar->grammatical_case == "dative");

    const auto& attestation = stage0.nested[2];
    CHECK(attestation.kind == Citation::Kind::Attestation);
    REQUIRE(attestation.quote.has_value());
    const std::string quote = attestation.quote->plain_text();
    CHECK(quote == "& þonne licge on ða swiðran sidan gode while");
    REQUIRE(attestation.nested.size() == 1);
    const auto& translation = attestation.nested[0];
    CHECK(translation.kind == Citation::Kind::Translation);
    CHECK(translation.lang->raw == "en");
    CHECK(translation.quote->plain_text() ==
          "and then lie on the right side for a good while");
}

TEST_CASE("quote keeps embedded oRef and seg markers") {
    const auto doc = testutil::parse_fixture("besides_as_printed.xml");
    const auto& block = doc.entries[0].senses[0].etymologies[0];
    // stage at-1554: <seg ana="#LPeriph">And <oRef>besides</oRef></seg>
    const auto& at1554 = block.citations[6];
    REQUIRE(at1554.id == "at-1554");
    const auto& quote = at1554.nested.back().quote;
    REQUIRE(quote.has_value());
    bool found_seg = false;
    for (const auto& run : quote->runs) {
        if (run.kind == QuoteNode::Kind::Seg) {
            found_seg = true;
            CHECK(run.ana == "#LPeriph");
            REQUIRE(run.children.size() == 2);
            CHECK(run.children[0].text == "And ");
            CHECK(run.children[1].kind == QuoteNode::Kind::ORef);
        }
    }
    CHECK(found_seg);
}

TEST_CASE("minimal etymon citation") {
    const auto cit = tei::parse_citation(
        xml::parse("<cit type=\"etymon\"><oRef>x</oRef></cit>"));
    CHECK(cit.kind == Citation::Kind::Etymon);
    CHECK(cit.oref->surface() == "x");
    CHECK_FALSE(cit.pref.has_value());
    CHECK_FALSE(cit.id.has_value());
    CHECK_FALSE(cit.date.has_value());
    CHECK(cit.glosses.empty());
    CHECK(cit.nested.empty());
}

TEST_CASE("unknown citation types degrade to etymon with a warning") {
    std::vector<Diagnostic> findings;
    const auto cit =
        tei::parse_citation(xml::parse("<cit type=\"example\"><oRef>x</oRef></cit>"),
                            &findings);
    CHECK(cit.kind == Citation::Kind::Etymon);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].rule == "W-CIT-UNKNOWN-TYPE");
}

TEST_CASE("cert attribute lands in citation notes") {
    const auto cit = tei::parse_citation(
        xml::parse("<cit type=\"etymon\" cert=\"low\"><oRef>x</oRef></cit>"));
    REQUIRE(cit.notes.size() == 1);
    CHECK(cit.notes[0] == "cert: low");
}

TEST_CASE("date attribute parsing") {
    using tei::parse_date_attrs;
    using tei::DateError;

    auto ok = parse_date_attrs({{"notBefore", "0350"}, {"notAfter", "0399"}});
    REQUIRE(std::holds_alternative<DateSpan>(ok));
    CHECK(std::get<DateSpan>(ok).not_before == 350);
    CHECK(std::get<DateSpan>(ok).not_after == 399);

    auto when = parse_date_attrs({{"when", "1517"}});
    REQUIRE(std::holds_alternative<DateSpan>(when));
    CHECK(std::get<DateSpan>(when).when == 1517);

    auto bad = parse_date_attrs({{"notBefore", "350"}});
    REQUIRE(std::holds_alternative<DateError>(bad));
    CHECK(std::get<DateError>(bad).kind == DateError::Kind::BadFormat);

    CHECK(std::holds_alternative<DateError>(parse_date_attrs({{"when", "03 0"}})));
    CHECK(std::holds_alternative<DateError>(parse_date_attrs({{"when", "1234 "}})));
    CHECK(std::holds_alternative<DateError>(parse_date_attrs({})));

    auto inverted = parse_date_attrs({{"notBefore", "0400"}, {"notAfter", "0350"}});
    REQUIRE(std::holds_alternative<DateError>(inverted));
    CHECK(std::get<DateError>(inverted).kind == DateError::Kind::Inverted);

    auto text = parse_date_attrs({{"notBefore", "0350"}, {"notAfter", "0399"}}, " IVe2 ");
    CHECK(std::get<DateSpan>(text).original_text == "IVe2");
}

TEST_CASE("bad dates inside a document degrade to findings plus opaque") {
    const auto doc = tei::parse_document(
        "<entry xml:lang=\"en\"><etym type=\"inheritance\">"
        "<cit type=\"etymon\"><date notBefore=\"350\"/><oRef>x</oRef></cit>"
        "</etym></entry>",
        "t");
    REQUIRE(doc.entries.size() == 1);
    bool has_date_error = false;
    for (const auto& d : doc.findings) {
        if (d.rule == "E-DATE-FORMAT") {
            has_date_error = true;
        }
    }
    CHECK(has_date_error);
    const auto& cit = doc.entries[0].etymologies[0].citations[0];
    CHECK_FALSE(cit.date.has_value());
    REQUIRE(cit.opaque.size() == 1);
    CHECK(cit.opaque[0].node.name == "date");
}

TEST_CASE("etym nesting bound") {
    std::string deep;
    for (int i = 0; i < 34; i++) {
        deep += "<etym type=\"inheritance\">";
    }
    deep += "<cit type=\"etymon\"><oRef>x</oRef></cit>";
    for (int i = 0; i < 34; i++) {
        deep += "</etym>";
    }

    // the standalone operation refuses to start beyond the bound
    CHECK_THROWS_AS(tei::parse_etym(xml::parse(deep), 33), tei::depth_exceeded_error);

    // document parsing stays total: the subtree past the bound goes opaque
    std::vector<Diagnostic> findings;
    const auto block = tei::parse_etym(xml::parse(deep), 0, &findings);
    const EtymologyBlock* cur = &block;
    int depth = 0;
    while (!cur->nested.empty()) {
        cur = &cur->nested[0];
        depth++;
    }
    CHECK(depth == tei::kMaxEtymDepth);
    CHECK(cur->opaque.size() == 1);
    bool warned = false;
    for (const auto& d : findings) {
        warned = warned || (d.rule == "W-PARSE-OPAQUE" &&
                            d.message.find("nesting") != std::string::npos);
    }
    CHECK(warned);
}

TEST_CASE("whitespace in forms and quotes collapses") {
    const auto doc = tei::parse_document(
        "<entry xml:lang=\"en\"><form type=\"lemma\"><orth>  two\n   words </orth>"
        "</form></entry>",
        "t");
    CHECK(doc.entries[0].forms[0].orths[0].surface() == "two words");
}

TEST_CASE("takushi fixture: orth notations and trailing space") {
    const auto doc = testutil::parse_fixture("ex09_takushi.xml");
    const auto& form = doc.entries[0].forms[0];
    REQUIRE(form.orths.size() == 2);
    CHECK(form.orths[0].notation == "rōmaji");
    CHECK(form.orths[0].surface() == "takushī");  // print's trailing space trimmed
    CHECK(form.orths[1].notation == "katakana");
    // @type="transliterated" is outside the model but preserved
    REQUIRE(form.orths[0].extra_attrs.size() == 1);
    CHECK(form.orths[0].extra_attrs[0].first == "type");
    const auto& cit = doc.entries[0].etymologies[0].citations[0];
    CHECK(cit.oref->corresp->raw == "http://en.wiktionary.org/wiki/taxi#English");
}
