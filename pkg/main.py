"""
S-graph Workbench - Application Entry Point
Bootstrap and command dispatch for the sgx command line.
"""

import sys
import os

# Add src to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from typing import List, Optional

from src import __version__
from src.cli.commands import EXIT_FAILED, EXIT_INPUT, dispatch
from src.cli.parser import build_parser
from src.core.config import get_config
from src.core.exactmath import InputError
from src.utils.logger import get_logger
from src.core.i18n import _


class SgxApp:
    """Main application controller."""

    def __init__(self, argv: Optional[List[str]] = None):
        self.argv = list(sys.argv[1:] if argv is None else argv)
        self.config = get_config()
        self.logger = get_logger()

    def run(self) -> int:
        """Parse arguments and run one command; returns the exit code."""
        parser = build_parser()
        try:
            args = parser.parse_args(self.argv)
        except SystemExit as e:
            # argparse exits 2 on usage errors and 0 on --help
            return e.code if isinstance(e.code, int) else EXIT_INPUT

        if args.verbose:
            self.logger.enable_stderr()
        self.logger.debug(f"sgx {__version__}: {' '.join(self.argv)}")
        try:
            return dispatch(args)
        except InputError as e:
            self.logger.error(_("error_input", message=str(e)))
            sys.stderr.write(_("error_input", message=str(e)) + "\n")
            return EXIT_INPUT
        finally:
            if args.verbose:
                self.logger.disable_stderr()


def main():
    """Application entry point."""
    # Global exception handler
    def exception_hook(exctype, value, tb):
        import traceback
        traceback_str = ''.join(traceback.format_exception(exctype, value, tb))

        # Log to file in case of crash
        path = None
        try:
            path = get_config().crash_dump_path
            with open(path, "w", encoding="utf-8") as f:
                f.write(traceback_str)
        except Exception:
            path = None

        sys.stderr.write(traceback_str)
        if path is not None:
            sys.stderr.write(_("error_crash_dump", path=path) + "\n")
        sys.exit(EXIT_FAILED)

    sys.excepthook = exception_hook

    app_instance = SgxApp()
    exit_code = app_instance.run()
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
