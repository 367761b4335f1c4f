#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace jumploci::cli {

enum ExitCode : int { Ok = 0, ValidationFailure = 2, ComputationFailure = 3 };

struct RunConfig {
    std::string command;  // splitting | jlines | jconics | locus | verify | sample
    std::string spec_path;
    std::string spec_text;  // used instead of spec_path when non-empty
    std::optional<std::string> field;
    std::uint64_t seed = 1;
    std::optional<long long> samples;
    std::optional<std::string> window;  // "LO:HI"
    std::optional<std::string> conic;   // "xi00,xi01,xi02,xi11,xi12,xi22"
    std::optional<std::string> line;    // "l0,l1,l2"
    std::optional<std::string> kind;    // locus kind: J1 | J2 | R | second_kind
    bool pretty = false;
};

struct RunResult {
    int exit_code = Ok;
    std::string report;  // empty on failure
    std::string error;   // diagnostic on failure
};

// Deterministic: identical configs give byte-identical reports.
RunResult run(const RunConfig& cfg);

} // namespace jumploci::cli
