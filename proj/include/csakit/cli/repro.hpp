#pragma once

#include <string>

#include "csakit/cli/commands.hpp"

namespace csakit::cli {

// Path of the goldens file shipped with the sources.
std::string default_goldens_path();

// Runs every case of the goldens file and compares verdict, exit code and witnesses. Exit code 0
// with no mismatches, 1 otherwise. Throws InvalidArgument when the file is missing or malformed,
// which run() reports as exit code 2.
Report run_repro(const std::string& goldens_path);

}  // namespace csakit::cli
