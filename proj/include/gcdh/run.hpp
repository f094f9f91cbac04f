#pragma once

#include <ostream>

#include "gcdh/config.hpp"

namespace gcdh {

/// Executes one experiment. Exit codes: 0 success / verification passed,
/// 1 usage, configuration or I/O error, 2 verification failed.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Command-line front end: `gcdh <command> [flags]`. Reads an optional
/// key=value file given by --config, then applies flags on top. MM_THREADS
/// provides the default for --threads.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gcdh
