"""Entry point for the command-line tool."""

import sys

from .cli.app import cli_dispatch


def main() -> None:
    """Run the CLI and exit with its status code."""
    raise SystemExit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
