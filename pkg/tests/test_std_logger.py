# -*- coding: UTF-8 -*-
"""
A test suite for the logger factories
"""
import io
import logging
import unittest
from unittest.mock import patch

from atomic_wigner import get_logger, get_run_logger
from atomic_wigner.std_logger import RUN_FORMAT


class TestGetLogger(unittest.TestCase):
    """A suite of test cases for the 'get_logger' function"""

    def test_get_logger(self):
        """get_logger returns an instance of Pythons stdlib logging.Logger object"""
        logger = get_logger('atomic_wigner.tests.single')
        self.assertTrue(isinstance(logger, logging.Logger))

    def test_get_logger_one_handler(self):
        """Asking for the same logger twice does not stack handlers"""
        get_logger('atomic_wigner.tests.many')
        logger = get_logger('atomic_wigner.tests.many')
        self.assertEqual(len(logger.handlers), 1)

    def test_get_logger_level(self):
        """get_logger accepts lower case level names"""
        logger = get_logger('atomic_wigner.tests.quiet', loglevel='error')
        self.assertEqual(logger.level, logging.ERROR)

    def test_stderr(self):
        """Records go to standard error, never standard output"""
        stdout, stderr = io.StringIO(), io.StringIO()
        with patch('sys.stdout', stdout), patch('sys.stderr', stderr):
            logger = get_logger('atomic_wigner.tests.stderr')
            logger.info('sampled')
        self.assertEqual(stdout.getvalue(), '')
        self.assertEqual(stderr.getvalue(), 'sampled\n')


class TestGetRunLogger(unittest.TestCase):
    """A suite of test cases for the 'get_run_logger' function"""

    def test_get_run_logger(self):
        """``get_run_logger`` returns a LoggerAdapter under the atomic_wigner.run namespace"""
        log = get_run_logger(figure='lithium-c', run_id='0a1b2c3d')
        self.assertTrue(isinstance(log, logging.LoggerAdapter))
        self.assertEqual(log.logger.name, 'atomic_wigner.run.0a1b2c3d')

    def test_get_run_logger_contains(self):
        """``get_run_logger`` tags records with the figure and run_id"""
        log = get_run_logger(figure='lithium-c', run_id='0a1b2c3d')
        self.assertEqual(log.logger.handlers[0].formatter._fmt, RUN_FORMAT)
        self.assertEqual(log.extra, {'figure': 'lithium-c', 'run_id': '0a1b2c3d'})

    def test_same_run(self):
        """A second figure in the same run reuses the run's handler"""
        get_run_logger(figure='helium-ground', run_id='feedf00d')
        log = get_run_logger(figure='helium-singlet1', run_id='feedf00d')
        self.assertEqual(len(log.logger.handlers), 1)
        self.assertEqual(log.extra['figure'], 'helium-singlet1')

    def test_tagged_output(self):
        """Formatted records carry both tags"""
        stderr = io.StringIO()
        with patch('sys.stderr', stderr):
            log = get_run_logger(figure='reference-e', run_id='12345678')
            log.info('done')
        self.assertIn('[reference-e] [12345678]: done', stderr.getvalue())


if __name__ == "__main__":
    unittest.main()
