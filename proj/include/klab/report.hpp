#pragma once

#include <string>
#include <vector>

namespace klab {

/// Verdict of a checker plus human-readable findings (violations or witnesses).
struct Report {
    bool passed = true;
    std::vector<std::string> findings;

    void fail(std::string why) {
        passed = false;
        findings.push_back(std::move(why));
    }
    void note(std::string what) { findings.push_back(std::move(what)); }
};

}  // namespace klab
