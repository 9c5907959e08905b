"""Command-line interface, artifact writer and figure rendering."""

from .app import build_arg_parser, cli_dispatch, load_config, resolve_config
from .plots import check_plot_data, emit_svg
from .report import summarize, write_summary
from .writer import DirectoryArtifactWriter

__all__ = [
    "DirectoryArtifactWriter",
    "build_arg_parser",
    "check_plot_data",
    "cli_dispatch",
    "emit_svg",
    "load_config",
    "resolve_config",
    "summarize",
    "write_summary",
]
