#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Batch front end over the gate, schedule, transfer, and spectrum layers.
// Scenarios are JSON files; every command writes its results to files so
// runs are reproducible, and reruns on identical inputs are byte-identical.
//
//   sim <command> --config <path> [--out <path>] [--tol <x>]
//
// commands: gate-audit, schedule, transfer, sweep, spectrum.
// exit codes: 0 all requested assertions passed, 1 numeric or threshold
// failure, 2 invalid invocation or config.

namespace jqc {

// argv[1..] in, everything printed goes to the two streams.  Returns the
// process exit code; never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace jqc
