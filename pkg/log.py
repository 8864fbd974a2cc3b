import logging
import os
import sys

LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()


def setup_custom_logger(name, level=None):
    """
    Logger for the CLI, stdout stays reserved for JSON and CSV reports

    :name : logger name shared by every qcodon module
    :level : overrides LOG_LEVEL
    """
    formatter = logging.Formatter(
        fmt='%(asctime)s - %(levelname)s - %(processName)s - %(message)s', datefmt="%Y-%m-%d %H:%M:%S")

    logger = logging.getLogger(name)
    logger.setLevel((level or LOG_LEVEL).upper())
    logger.propagate = False
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    # numpy/scipy RuntimeWarnings end up in the same stream
    logging.captureWarnings(True)
    warnings_logger = logging.getLogger('py.warnings')
    if not warnings_logger.handlers:
        warnings_logger.addHandler(logger.handlers[0])
    return logger
