#pragma once

namespace xdiff {

/// Entry point behind the xdiff binary. Subcommands: run, weak-strong,
/// gronwall, pme, invariants, convergence. Returns 0 on success, 1 on a
/// contract violation or failed experiment checks, 2 on bad usage.
int cli_main(int argc, const char* const* argv);

} // namespace xdiff
