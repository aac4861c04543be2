// Self-contained verification suites pinning the library's headline results.
// Each suite recomputes a fixed value or identity from scratch and reports
// pass/fail with a one-line summary; failures carry enough detail to locate
// the offending generator. Shared by the acceptance runner and the CLI.
#pragma once

#include <string>
#include <vector>

namespace kss {

struct CheckResult {
    std::string suite;    // slug, stable across releases
    std::string summary;  // one line: what was checked and the headline numbers
    bool passed = false;
    std::string detail;   // failure specifics; empty when passed
    double seconds = 0.0;
};

// Slugs in their fixed reporting order.
std::vector<std::string> verification_suites();

// Runs one suite by slug; unknown slugs are an error.
CheckResult run_verification(const std::string& suite);

// Runs every suite in order.
std::vector<CheckResult> run_all_verifications();

}  // namespace kss
