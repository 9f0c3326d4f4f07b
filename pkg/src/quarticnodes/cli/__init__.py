"""Command-line interface: ``quarticnodes <subcommand> [flags]``.

Exit codes: 0 success, 1 computation error (a precondition or a
construction failed), 2 malformed or invalid input.
"""

from __future__ import annotations

import sys

from .commands import COMMANDS, CliResult, UsageError, build_parser, execute

__all__ = ["COMMANDS", "CliResult", "UsageError", "build_parser", "main", "run"]


def run(argv: list[str]) -> CliResult:
    """Run one invocation without touching the process streams."""
    return execute(list(argv))


def main(argv: list[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    if res.output:
        sys.stdout.write(res.output)
    if res.error:
        sys.stderr.write(res.error)
    return res.code
