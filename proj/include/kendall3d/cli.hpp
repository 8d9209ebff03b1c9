// cli.hpp — the kendall3d command-line front end.
//
//   kendall3d preshape  --input F [--format csv|json] [--output F2] [--json]
//   kendall3d basis     --input F [--tol T] [--output F2] [--json]
//   kendall3d curvature --input F (--plane A,B | --u-coords L --v-coords L) [--output F2] [--json]
//   kendall3d simulate  --input F --sigma S --n N --seed SEED [--output F2] [--emit-configs] [--json]
//   kendall3d check     --input F [--step H] [--trials N] [--seed S] [--json]
//
// Exit codes: 0 success, 1 usage, 2 parse/data, 3 geometric degeneracy,
// 4 oracle check failure.

#pragma once

#include "kendall3d/errors.hpp"

#include <iosfwd>

namespace kendall3d::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kDataError = 2,
  kDegenerate = 3,
  kCheckFailed = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Runs one invocation. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kendall3d::cli
