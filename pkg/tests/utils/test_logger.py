import logging
import sys

from src.utils.logger import setup_logger


def test_handlers_attached_once():
    first = setup_logger("dilation_test")
    second = setup_logger("dilation_test")

    assert first is second
    assert len(second.handlers) == 2


def test_console_goes_to_stderr():
    logger = setup_logger("dilation_test_stream")
    streams = [
        h.stream
        for h in logger.handlers
        if type(h) is logging.StreamHandler
    ]

    assert streams == [sys.stderr]
