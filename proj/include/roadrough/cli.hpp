#ifndef ROADROUGH_CLI_HPP
#define ROADROUGH_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace roadrough {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitDataError = 1,  ///< validation findings, parse errors, failed preconditions
    kExitIoError = 2,    ///< missing files, unwritable output, bad usage
};

/**
 * Runs the `roadrough` command line. `args` excludes the program name.
 * Subcommands: validate, segment, rms, pdi, qa, fit, synth, report.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roadrough

#endif
