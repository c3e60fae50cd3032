# -*- coding: UTF-8 -*-
"""
Suite(s) of test cases for the ``constants.py`` module
"""
import os
import tempfile
import unittest
from unittest.mock import patch

from atomic_wigner import constants


class TestConstants(unittest.TestCase):
    """A suite of test cases for the constants.py module"""

    def test_defaults(self):
        """The figure defaults are the documented ones"""
        const = constants.const
        self.assertEqual(const.GRID_POINTS, 61)
        self.assertEqual(const.GRID_EXTENT, 4.5)
        self.assertEqual((const.SPHERE_THETA, const.SPHERE_PHI), (24, 12))
        self.assertEqual(const.THRESHOLD, 0.1)
        self.assertEqual(const.MAX_FOCK, 200)
        self.assertEqual(const.BACKGROUND, (170, 170, 170))

    def test_frozen(self):
        """``const`` cannot be changed at run time"""
        with self.assertRaises(AttributeError):
            constants.const.GRID_POINTS = 5

    def test_get_output_dir(self):
        """``get_output_dir`` honors ATOMIC_WIGNER_OUTPUT_DIR"""
        with tempfile.TemporaryDirectory() as tmp:
            with patch.dict(os.environ, {'ATOMIC_WIGNER_OUTPUT_DIR': tmp}):
                output = constants.get_output_dir()
        self.assertEqual(output, tmp)

    def test_get_output_dir_missing(self):
        """A directory that does not exist yet is accepted; the cli creates it"""
        with tempfile.TemporaryDirectory() as tmp:
            target = os.path.join(tmp, 'not', 'yet')
            with patch.dict(os.environ, {'ATOMIC_WIGNER_OUTPUT_DIR': target}):
                output = constants.get_output_dir()
        self.assertEqual(output, target)

    def test_get_output_dir_file(self):
        """``get_output_dir`` raises RuntimeError when the location is a regular file"""
        with tempfile.NamedTemporaryFile() as handle:
            with patch.dict(os.environ, {'ATOMIC_WIGNER_OUTPUT_DIR': handle.name}):
                with self.assertRaises(RuntimeError):
                    constants.get_output_dir()

    @patch.object(constants.os, 'access')
    def test_get_output_dir_read_only(self, fake_access):
        """``get_output_dir`` raises RuntimeError when the directory is not writable"""
        fake_access.return_value = False
        with tempfile.TemporaryDirectory() as tmp:
            with patch.dict(os.environ, {'ATOMIC_WIGNER_OUTPUT_DIR': tmp}):
                with self.assertRaises(RuntimeError):
                    constants.get_output_dir()

    def test_spin_nodes(self):
        """ATOMIC_WIGNER_SPIN_NODES takes one count or THETAxPHI"""
        with patch.dict(os.environ, {'ATOMIC_WIGNER_SPIN_NODES': '20'}):
            self.assertEqual(constants._spin_nodes(), (20, 20))
        with patch.dict(os.environ, {'ATOMIC_WIGNER_SPIN_NODES': '48x24'}):
            self.assertEqual(constants._spin_nodes(), (48, 24))


if __name__ == '__main__':
    unittest.main()
