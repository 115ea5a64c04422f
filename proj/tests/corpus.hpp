#pragma once

// The CLI fixture corpus: tests/fixtures/manifest.txt and tests/golden.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "klab/cli.hpp"

namespace corpus {

inline const std::string kDir = KLAB_TEST_DIR;

struct Entry {
    std::string name, command, fixture;
    std::vector<std::string> extra;
};

inline std::vector<Entry> manifest() {
    std::ifstream in(kDir + "/fixtures/manifest.txt");
    std::vector<Entry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        Entry e;
        ss >> e.name >> e.command >> e.fixture;
        for (std::string w; ss >> w;) e.extra.push_back(w);
        out.push_back(std::move(e));
    }
    return out;
}

inline klab::cli::Result run(const Entry& e, std::vector<std::string> more = {}) {
    std::vector<std::string> args = {e.command, "--input", kDir + "/fixtures/" + e.fixture + ".json"};
    args.insert(args.end(), e.extra.begin(), e.extra.end());
    args.insert(args.end(), more.begin(), more.end());
    return klab::cli::run(args);
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string golden(const Entry& e) { return slurp(kDir + "/golden/" + e.name + ".json"); }

/// "result" of a report, or "error" for failed runs.
inline std::string body(const klab::cli::Result& r) {
    auto j = nlohmann::ordered_json::parse(r.out);
    return (j.contains("result") ? j["result"] : j["error"]).dump();
}

}  // namespace corpus
