import logging
import sys

from src.config.settings import FileNames, Paths


def setup_logger(name="dilation_surface"):
    """
    Configures and initializes the centralized logging system.

    Two channels are attached once per logger name:

    1.  **File Output**: Appends to `logs/execution.log` for post-run auditing.
    2.  **Console Output**: Streams to `sys.stderr`, leaving `sys.stdout`
        free for CSV rows and reports.

    Args:
        name (str): The name of the logger instance. Defaults to "dilation_surface".

    Returns:
        logging.Logger: The configured logger object ready for use.
    """
    if not Paths.LOGS.exists():
        Paths.LOGS.mkdir(parents=True)

    logger = logging.getLogger(name)
    logger.setLevel(logging.INFO)
    if logger.handlers:
        return logger

    formatter = logging.Formatter(
        "%(asctime)s [%(levelname)s] %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
    )

    file_handler = logging.FileHandler(
        Paths.LOGS / FileNames.EXECUTION_LOG, encoding="utf-8"
    )
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger


log = setup_logger()
