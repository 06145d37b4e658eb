#pragma once

namespace lambdabloch::cli {

// Parses argv, dispatches to the library, writes artifacts.
// Returns the process exit code: 0 success, 2 validation failure,
// 3 runtime failure.
int run(int argc, char** argv);

}  // namespace lambdabloch::cli
