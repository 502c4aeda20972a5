#pragma once

#include <stdexcept>
#include <vector>

#include "etymograph/langtag.hpp"
#include "etymograph/model.hpp"

namespace etymograph::lift {

class not_legacy_error : public std::runtime_error {
public:
    not_legacy_error() : std::runtime_error("block contains no <mentioned> to lift") {}
};

struct LiftResult {
    EtymologyBlock block;
    std::vector<Diagnostic> log;
};

// Turns a flat legacy etymology (<lang> + <mentioned> runs, prose, trailing
// <bibl>) into structured etymon citations. Each <mentioned> becomes an
// Etymon with its text as oRef; the nearest preceding <lang> in the same run
// supplies the display label and, through the table, the citation language.
// Throws not_legacy_error when there is nothing to lift.
LiftResult lift_flat_etym(const EtymologyBlock& block, const bcp47::AbbrevTable& table);

struct NormalizeResult {
    LexicalEntry entry;
    std::vector<Diagnostic> log;
};

// Fix passes over one entry: unwrap redundant nested etymon citations,
// report (and under aggressive, remove) identical consecutive etymons,
// rewrite legacy <ref>-as-etymon into oRef, report duplicate ids. Idempotent.
NormalizeResult normalize_entry(const LexicalEntry& entry, bool aggressive = false);

}  // namespace etymograph::lift
