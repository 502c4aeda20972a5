#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "etymograph/tei_parser.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

inline etymograph::Document parse_fixture(const std::string& name) {
    return etymograph::tei::parse_document(read_file(fixture_path(name)), name);
}

inline size_t count_substring(const std::string& haystack, const std::string& needle) {
    size_t count = 0;
    size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        count++;
        pos += needle.size();
    }
    return count;
}

// every .xml fixture in the corpus
inline const std::vector<std::string>& corpus() {
    static const std::vector<std::string> files = {
        "ex01_tompa_appel.xml",    "ex03_semper.xml",
        "ex04_chef_as_printed.xml", "ex04_chef_cleaned.xml",
        "ex05_mari.xml",           "ex06_perdere.xml",
        "ex07_pamplemousse_simple.xml", "ex08_biryani.xml",
        "ex09_takushi.xml",        "ex10_weekend.xml",
        "ex11_kidney.xml",         "ex12_kiti.xml",
        "ex13_merle_noir.xml",     "ex14_num13_synchronic.xml",
        "ex15_rouge_gorge.xml",    "ex16_num13_diachronic.xml",
        "ex17_handschuh.xml",      "ex18_pamplemousse_full.xml",
        "besides_as_printed.xml",  "abend_legacy.xml",
        "minimal_clean.xml",
    };
    return files;
}

}  // namespace testutil
