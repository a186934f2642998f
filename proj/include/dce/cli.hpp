#pragma once

#include <string>
#include <vector>

#include "dce/model.hpp"
#include "dce/operators.hpp"
#include "dce/sweep.hpp"

namespace dce::cli {

enum class Command { Stroke, Tomo, Iterate, Sweep };

enum ExitCode : int { kOk = 0, kInvalidArguments = 2, kRuntimeFailure = 3 };

struct RunConfig {
    Command command = Command::Tomo;
    SimParams params;
    std::string init = "ground";
    int samples = 200;
    int cycles = 100;
    std::string method = "affine"; // iterate: affine | channel
    SweepSpec sweep;
    int workers = 1;
    std::string out = "-";
};

// ground | excited | mixed | plus | thermal:<p>, p the ground population.
BlochVector parse_initial_state(const std::string& selector);

// Throws CLI::ParseError on grammar errors and SimError on invalid values.
// --help is reported as CLI::CallForHelp.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes a validated config. Library errors propagate as SimError.
void run(const RunConfig& config);

// Full entry point: parse, run, map failures to exit codes.
int main(int argc, char** argv);

} // namespace dce::cli
