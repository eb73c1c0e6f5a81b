#pragma once

namespace secbeam {

/// Command-line front end (subcommands: sample, region, validate,
/// asymptotics, montecarlo). Exit codes: 0 success, 1 validation failure,
/// 2 usage error, 3 input parse error.
int run_cli(int argc, const char* const* argv);

}  // namespace secbeam
