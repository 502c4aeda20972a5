#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "etymograph/config.hpp"
#include "etymograph/etymgraph.hpp"
#include "etymograph/legacy_lift.hpp"
#include "etymograph/linter.hpp"
#include "etymograph/tei_parser.hpp"

#ifndef ETYMOGRAPH_DATA_DIR
#define ETYMOGRAPH_DATA_DIR "data"
#endif

namespace {

namespace eg = etymograph;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

size_t count_etymons(const eg::Citation& cit) {
    size_t n = cit.kind == eg::Citation::Kind::Etymon ? 1 : 0;
    for (const auto& nested : cit.nested) {
        n += count_etymons(nested);
    }
    return n;
}

size_t count_citations(const eg::Citation& cit) {
    size_t n = 1;
    for (const auto& nested : cit.nested) {
        n += count_citations(nested);
    }
    return n;
}

struct Counts {
    size_t citations = 0;
    size_t etymons = 0;
};

void count_block(const eg::EtymologyBlock& block, Counts& c) {
    for (const auto& cit : block.citations) {
        c.citations += count_citations(cit);
        c.etymons += count_etymons(cit);
    }
    for (const auto& nested : block.nested) {
        count_block(nested, c);
    }
}

Counts count_document(const eg::Document& doc) {
    Counts c;
    for (const auto& entry : doc.entries) {
        for (const auto& block : entry.etymologies) {
            count_block(block, c);
        }
        for (const auto& sense : entry.senses) {
            for (const auto& block : sense.etymologies) {
                count_block(block, c);
            }
            for (const auto& t : sense.translations) {
                c.citations += count_citations(t);
                c.etymons += count_etymons(t);
            }
        }
    }
    return c;
}

struct Common {
    std::string config_path;
    std::string rules_path;
    std::string abbrev_path;
    bool link_across_files = false;

    eg::config::Config load() const {
        eg::config::Config cfg;
        cfg.registry_path = std::string(ETYMOGRAPH_DATA_DIR) + "/language-subtag-registry";
        cfg.abbrev_path = std::string(ETYMOGRAPH_DATA_DIR) + "/abbreviations.json";
        if (!config_path.empty()) {
            eg::config::merge(cfg, eg::config::load_file(config_path));
        }
        if (const char* env = std::getenv("ETYMOGRAPH_REGISTRY"); env != nullptr && *env) {
            cfg.registry_path = env;
        }
        if (!rules_path.empty()) {
            eg::config::merge(cfg, eg::config::load_file(rules_path));
        }
        if (!abbrev_path.empty()) {
            cfg.abbrev_path = abbrev_path;
        }
        return cfg;
    }
};

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + out_path);
    }
    out << content;
}

int cmd_parse(const std::vector<std::string>& files) {
    bool syntax_error = false;
    for (const auto& file : files) {
        try {
            const eg::Document doc = eg::tei::parse_document(read_file(file), file);
            const Counts c = count_document(doc);
            std::cout << file << ": entries=" << doc.entries.size()
                      << " citations=" << c.citations << " etymons=" << c.etymons
                      << " findings=" << doc.findings.size() << "\n";
        } catch (const eg::xml::xml_error& e) {
            std::cerr << e.what() << "\n";
            syntax_error = true;
        }
    }
    return syntax_error ? 1 : 0;
}

int cmd_lint(const std::vector<std::string>& files, const Common& common,
             const std::string& format) {
    const auto cfg = common.load();
    eg::lint::RuleConfig rules = cfg.rules;
    eg::bcp47::RegistrySnapshot registry;
    if (rules.check_registry) {
        try {
            registry = eg::bcp47::RegistrySnapshot::load_file(cfg.registry_path);
            rules.registry = &registry;
        } catch (const std::exception& e) {
            std::cerr << "registry unavailable, skipping registry checks: " << e.what()
                      << "\n";
        }
    }

    std::vector<eg::Document> docs;
    for (const auto& file : files) {
        docs.push_back(eg::tei::parse_document(read_file(file), file));
    }
    if (common.link_across_files) {
        for (const auto& doc : docs) {
            for (const auto& [id, target] : doc.id_index) {
                rules.extra_ids.insert(id);
            }
        }
    }

    bool errors = false;
    for (const auto& doc : docs) {
        const auto findings = eg::lint::lint_document(doc, rules);
        errors = errors || eg::lint::has_errors(findings);
        for (const auto& d : findings) {
            if (format == "json") {
                std::cout << eg::lint::to_json_line(d, doc.source_name) << "\n";
            } else {
                std::cout << eg::lint::to_text_line(d, doc.source_name) << "\n";
            }
        }
    }
    return errors ? 1 : 0;
}

int cmd_graph(const std::vector<std::string>& files, const Common& common,
              const std::string& format, const std::string& out_path) {
    std::vector<eg::Document> docs;
    for (const auto& file : files) {
        docs.push_back(eg::tei::parse_document(read_file(file), file));
    }
    const auto graph = eg::graph::build_network(docs, common.link_across_files);
    eg::graph::ExportFormat fmt = eg::graph::ExportFormat::Json;
    if (format == "dot") fmt = eg::graph::ExportFormat::Dot;
    else if (format == "graphml") fmt = eg::graph::ExportFormat::GraphML;
    std::string content = eg::graph::export_graph(graph, fmt);
    if (fmt == eg::graph::ExportFormat::Json) {
        content += "\n";
    }
    write_output(out_path, content);
    return 0;
}

int cmd_trace(const std::vector<std::string>& files, const Common& common,
              const std::string& anchor) {
    std::vector<eg::Document> docs;
    for (const auto& file : files) {
        docs.push_back(eg::tei::parse_document(read_file(file), file));
    }
    const auto graph = eg::graph::build_network(docs, common.link_across_files);
    const auto paths = eg::graph::trace(graph, anchor);
    std::cout << "anchor: " << anchor << " (" << paths.size() << " path"
              << (paths.size() == 1 ? "" : "s") << ")\n";
    for (size_t i = 0; i < paths.size(); i++) {
        std::cout << "path " << (i + 1) << ": ";
        for (const auto& stage : paths[i].stages) {
            const auto* node = graph.find(stage.node_id);
            std::cout << (node != nullptr ? eg::graph::node_display(*node) : stage.node_id)
                      << " --" << eg::graph::relation_name(stage.relation_to_next) << "--> ";
        }
        std::cout << "[" << anchor << "]\n";
    }
    return 0;
}

int cmd_convert(const std::vector<std::string>& files, const Common& common, bool aggressive,
                const std::string& out_dir) {
    const auto cfg = common.load();
    const auto table = eg::bcp47::AbbrevTable::load_file(cfg.abbrev_path);
    fs::create_directories(out_dir);

    bool failed = false;
    for (const auto& file : files) {
        try {
            eg::Document doc = eg::tei::parse_document(read_file(file), file);
            std::vector<eg::Diagnostic> log;
            for (auto& entry : doc.entries) {
                auto lift_blocks = [&](std::vector<eg::EtymologyBlock>& blocks) {
                    for (auto& block : blocks) {
                        try {
                            auto lifted = eg::lift::lift_flat_etym(block, table);
                            block = std::move(lifted.block);
                            for (auto& d : lifted.log) log.push_back(std::move(d));
                        } catch (const eg::lift::not_legacy_error&) {
                            // already structured
                        }
                    }
                };
                lift_blocks(entry.etymologies);
                for (auto& sense : entry.senses) {
                    lift_blocks(sense.etymologies);
                }
                auto normalized = eg::lift::normalize_entry(entry, aggressive);
                entry = std::move(normalized.entry);
                for (auto& d : normalized.log) log.push_back(std::move(d));
            }
            const fs::path out_path = fs::path(out_dir) / fs::path(file).filename();
            write_output(out_path.string(), eg::tei::emit_tei(doc));
            for (const auto& d : log) {
                std::cerr << eg::lint::to_text_line(d, file) << "\n";
            }
            std::cerr << file << " -> " << out_path.string() << "\n";
        } catch (const eg::xml::xml_error& e) {
            std::cerr << e.what() << "\n";
            failed = true;
        }
    }
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TEI dictionary etymology toolkit: parse, lint, extract and convert"};
    app.require_subcommand(1);

    Common common;
    std::vector<std::string> files;
    std::string format_lint = "text";
    std::string format_graph = "json";
    std::string out_path;
    std::string anchor;
    bool aggressive = false;

    auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "JSON config file");
        sub->add_flag("--link-across-files", common.link_across_files,
                      "resolve references across all input files");
    };

    CLI::App* parse_cmd = app.add_subcommand("parse", "parse files and print counts");
    parse_cmd->add_option("files", files, "TEI files")->required()->expected(-1);
    add_common(parse_cmd);

    CLI::App* lint_cmd = app.add_subcommand("lint", "check the structural contract");
    lint_cmd->add_option("files", files, "TEI files")->required()->expected(-1);
    lint_cmd->add_option("--rules", common.rules_path, "rule config JSON");
    lint_cmd->add_option("--format", format_lint, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    add_common(lint_cmd);

    CLI::App* graph_cmd = app.add_subcommand("graph", "extract the lexical network");
    graph_cmd->add_option("files", files, "TEI files")->required()->expected(-1);
    graph_cmd->add_option("--format", format_graph, "dot|graphml|json")
        ->required()
        ->check(CLI::IsMember({"dot", "graphml", "json"}));
    graph_cmd->add_option("--out", out_path, "output path (default stdout)");
    add_common(graph_cmd);

    CLI::App* trace_cmd = app.add_subcommand("trace", "trace a word's diachrony");
    trace_cmd->add_option("files", files, "TEI files")->required()->expected(-1);
    trace_cmd->add_option("--anchor", anchor, "entry or sense xml:id")->required();
    add_common(trace_cmd);

    CLI::App* convert_cmd = app.add_subcommand("convert", "lift legacy etymologies");
    convert_cmd->add_option("files", files, "TEI files")->required()->expected(-1);
    convert_cmd->add_flag("--aggressive", aggressive, "also drop duplicated citations");
    convert_cmd->add_option("--abbrev", common.abbrev_path, "abbreviation table JSON");
    convert_cmd->add_option("--out", out_path, "output directory")->required();
    add_common(convert_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 2;
    }

    try {
        if (parse_cmd->parsed()) return cmd_parse(files);
        if (lint_cmd->parsed()) return cmd_lint(files, common, format_lint);
        if (graph_cmd->parsed()) return cmd_graph(files, common, format_graph, out_path);
        if (trace_cmd->parsed()) return cmd_trace(files, common, anchor);
        if (convert_cmd->parsed()) return cmd_convert(files, common, aggressive, out_path);
    } catch (const eg::xml::xml_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const eg::graph::unknown_anchor_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const eg::config::config_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
