#pragma once

// Command-line driver. Exposed as a function so tests can invoke
// subcommands in-process and check exit codes and emitted files.
//
// Exit codes: 0 success, 2 usage/validation error (and failed input
// parsing), 1 failed validation suite or I/O error.

#include <string>
#include <vector>

namespace tbell {

int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace tbell
