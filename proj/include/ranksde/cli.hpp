#pragma once

namespace ranksde {

// Parses argv and runs one pipeline stage (simulate, estimate, approx,
// classify, check, tune-e1, plot).  Returns the process exit code:
// 0 on success, 2 on flag or input validation errors, 3 on runtime or
// numeric failures.  All randomness flows from --seed, so identical
// invocations produce byte-identical output files.
int cli_main(int argc, const char* const* argv);

}  // namespace ranksde
