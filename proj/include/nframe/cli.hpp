#pragma once

namespace nframe {

// Entry point behind the nframe binary; exposed so tests can drive the
// command surface in-process.  Exit codes: 0 success, 1 failed checks or
// internal numeric errors, 2 usage errors and malformed input.
int run_cli(int argc, const char* const* argv);

}  // namespace nframe
