#ifndef CVBELL_VERIFY_HPP
#define CVBELL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cvbell {

struct CheckResult {
    std::string id;       // criterion number, e.g. "4"
    std::string name;
    bool passed = false;
    std::string detail;   // measured vs expected, full precision
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> diagnostics;  // informational: typo reports, residuals
    bool all_passed() const;
};

// Runs every acceptance criterion at its stated tolerance. Deterministic for
// a fixed seed. Expected runtime well under a minute.
VerifyReport run_verification(std::uint64_t seed);

// Formats a full-precision table; one line per check plus diagnostics.
std::string format_report(const VerifyReport& report);

} // namespace cvbell

#endif
