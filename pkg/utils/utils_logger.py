"""
Logger Setup Script
File: utils/utils_logger.py

This script provides the shared logger for the ring toolkit.
Every module imports `logger` from here so checker verdicts, suite
outcomes and search progress all land in the same log file.

Features:
- Logs information, warnings, and errors to a designated log file.
- Ensures the log directory exists.
- Lets the entry point swap the console and file levels.
"""

# Imports from Python Standard Library
import pathlib
import sys

# Imports from external packages
from loguru import logger

# Get this file name without the extension
CURRENT_SCRIPT = pathlib.Path(__file__).stem

# loguru installs its stderr sink with id 0
_console_sink_id: int = 0
_file_sink_id: int = -1

# Set directory where logs will be stored
LOG_FOLDER: pathlib.Path = pathlib.Path("logs")

# Set the name of the log file
LOG_FILE: pathlib.Path = LOG_FOLDER.joinpath("project_log.log")

# Setup messages go out at TRACE so importing the package prints nothing
try:
    LOG_FOLDER.mkdir(exist_ok=True)
    logger.trace(f"Log folder ready at: {LOG_FOLDER}")
except Exception as e:
    logger.error(f"Error creating log folder: {e}")


def set_file_level(level: str) -> None:
    """(Re)attach the log file sink at the given level."""
    global _file_sink_id
    if _file_sink_id >= 0:
        logger.remove(_file_sink_id)
        _file_sink_id = -1
    try:
        _file_sink_id = logger.add(LOG_FILE, level=level.upper(), enqueue=True)
        logger.trace(f"Logging to file: {LOG_FILE} at level {level.upper()}")
    except Exception as e:
        logger.error(f"Error configuring logger to write to file: {e}")


def set_console_level(level: str) -> None:
    """Replace the stderr sink with one at the given level."""
    global _console_sink_id
    try:
        logger.remove(_console_sink_id)
    except ValueError:
        # already removed
        pass
    _console_sink_id = logger.add(sys.stderr, level=level.upper())


set_file_level("INFO")


def main() -> None:
    """Show where the log output goes."""
    logger.info(f"STARTING {CURRENT_SCRIPT}.py")
    logger.info(f"View the log output at {LOG_FILE}")
    logger.info(f"EXITING {CURRENT_SCRIPT}.py.")


# Conditional execution block that calls main() only when this file is executed directly
if __name__ == "__main__":
    main()
