#pragma once

#include <array>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ecmc/epistemic.hpp"

namespace testutil {

// The two-switch lamp circuit used throughout: B and C exogenous binary,
// S endogenous with S = 1 exactly when B = 1 and C = 1.  The agent knows
// B = 0 but not C; the actual state has C = 1.
inline ecmc::SignaturePtr circuit_signature() {
    return std::make_shared<const ecmc::Signature>(
        std::vector<std::string>{"B", "C"}, std::vector<std::string>{"S"},
        std::map<std::string, std::vector<std::string>>{
            {"B", {"0", "1"}}, {"C", {"0", "1"}}, {"S", {"0", "1"}}});
}

inline ecmc::StructuralFunctionSet circuit_functions(const ecmc::SignaturePtr& sig) {
    // Domain of S's table is (B, C), C fastest: (0,0) (0,1) (1,0) (1,1).
    return ecmc::StructuralFunctionSet(sig, {ecmc::FunctionTable{{0, 0, 0, 1}}});
}

inline ecmc::EpistemicCausalModel circuit_model() {
    ecmc::SignaturePtr sig = circuit_signature();
    return ecmc::EpistemicCausalModel(sig, circuit_functions(sig),
                                      {ecmc::Valuation({0, 0, 0}),
                                       ecmc::Valuation({0, 1, 0})});
}

inline ecmc::Valuation circuit_a1() { return ecmc::Valuation({0, 0, 0}); }
inline ecmc::Valuation circuit_a2() { return ecmc::Valuation({0, 1, 0}); }

struct CliResult {
    int exit_code = -1;
    std::string out;

    bool operator==(const CliResult& other) const = default;
};

// Runs a full shell command, capturing stdout.
inline CliResult run_command(const std::string& command) {
    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.out.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

// Runs the built binary through the shell; append "2>/dev/null" inside
// args to silence stderr.  `env` is prepended verbatim, for VAR=value
// prefixes.
inline CliResult run_cli(const std::string& args, const std::string& env = "") {
    std::string command = env.empty() ? std::string(ECMC_CLI_PATH) + " " + args
                                      : env + " " + ECMC_CLI_PATH + " " + args;
    return run_command(command);
}

inline std::string models_dir() { return ECMC_MODELS_DIR; }

} // namespace testutil
