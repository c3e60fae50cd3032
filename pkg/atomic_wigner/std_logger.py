# -*- coding: UTF-8 -*-
"""
Logger factories shared by every atomic_wigner module. Records go to standard
error so nothing logged can end up inside an image or scene file.
"""
import logging

PLAIN_FORMAT = '%(message)s'
RUN_FORMAT = '%(asctime)s [%(figure)s] [%(run_id)s]: %(message)s'


def _configure(logger, fmt, loglevel):
    """Set the level and attach one stderr handler, unless one is already attached"""
    level = loglevel.upper()
    logger.setLevel(level)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setLevel(level)
        handler.setFormatter(logging.Formatter(fmt))
        logger.addHandler(handler)
    return logger


def get_logger(name, loglevel='INFO'):
    """Factory for module level loggers

    :Returns: logging.Logger

    :param name: The name of the logger (typically just __name__).
    :type name: String

    :param loglevel: The verbosity of the logging; ERROR, INFO, DEBUG
    :type loglevel: String
    """
    return _configure(logging.getLogger(name), PLAIN_FORMAT, loglevel)


def get_run_logger(figure, run_id, loglevel='INFO'):
    """Logger for one cli invocation; every record is tagged with the figure
    being drawn and the id of the run drawing it.

    :Returns: logging.LoggerAdapter

    :param figure: The figure being rendered, i.e. ``lithium-c``
    :type figure: String

    :param run_id: Identifier of the current invocation
    :type run_id: String
    """
    logger = _configure(logging.getLogger('atomic_wigner.run.{}'.format(run_id)), RUN_FORMAT, loglevel)
    return logging.LoggerAdapter(logger, {'figure': figure, 'run_id': run_id})
