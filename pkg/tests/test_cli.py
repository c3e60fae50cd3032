# -*- coding: UTF-8 -*-
"""
Suite(s) of test cases for the ``cli.py`` module
"""
import io
import os
import tempfile
import unittest
from unittest.mock import patch

import numpy as np
import ujson

from atomic_wigner import cli, scene, states

SMALL = ['--grid', '9', '--size', '64']


class CliTestCase(unittest.TestCase):
    """Runs the command line with captured output inside a scratch directory"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def invoke(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with patch('sys.stdout', stdout), patch('sys.stderr', stderr):
            code = cli.run(list(argv))
        return code, stdout.getvalue(), stderr.getvalue()


class TestRun(CliTestCase):
    """A suite of test cases for ``run``"""

    def test_singlet(self):
        """The singlet panel reports one bit and writes a PPM"""
        output = self.path('singlet.ppm')
        code, out, _ = self.invoke('reference', '--panel', 'e', '--output', output, *SMALL)
        self.assertEqual(code, 0)
        self.assertIn('norm: 1.000000', out)
        self.assertIn('entanglement entropy: 1.000 bits', out)
        self.assertIn('glyphs: 1', out)
        with open(output, 'rb') as handle:
            self.assertTrue(handle.read().startswith(b'P6\n64 64\n255\n'))

    def test_jm_entropy(self):
        """|5/2, 1/2> has 0.971 bits between spin and space"""
        code, out, _ = self.invoke('hydrogen', '--jm', '5/2', '1/2', '--output', self.path('jm.png'), *SMALL)
        self.assertEqual(code, 0)
        self.assertIn('entanglement entropy: 0.971 bits', out)

    def test_jm_negative_m(self):
        """A negative m may be given as a fraction or a decimal"""
        for m in ('-1/2', '-0.5'):
            code, out, _ = self.invoke('hydrogen', '--jm', '5/2', m, '--output', self.path('jm.ppm'), *SMALL)
            self.assertEqual(code, 0, m)
            self.assertIn('entanglement entropy: 0.971 bits', out)

    def test_helium_scene(self):
        """The helium ground scene holds only -1/2 textures"""
        scene_path = self.path('helium.json')
        code, out, _ = self.invoke('helium', '--state', 'ground', '--output', self.path('helium.ppm'),
                                   '--scene-out', scene_path, *SMALL)
        self.assertEqual(code, 0)
        self.assertIn('scene: {}'.format(scene_path), out)
        lattice = scene.load_scene(scene_path)
        self.assertGreater(len(lattice), 0)
        for glyph in lattice.glyphs:
            np.testing.assert_allclose(glyph.texture, -0.5, atol=1e-12)

    def test_default_output(self):
        """Without --output the image lands in the output directory under the figure name"""
        with patch('atomic_wigner.cli.const', cli.const._replace(OUTPUT_DIR=self.path('figures'))):
            code, out, _ = self.invoke('molecule', '--bond', 'single', *SMALL)
        self.assertEqual(code, 0)
        self.assertTrue(os.path.isfile(self.path(os.path.join('figures', 'molecule-single.ppm'))))

    def test_custom(self):
        """State files are read and drawn with the given plan"""
        state_file = self.path('pair.json')
        with open(state_file, 'w', encoding='utf-8') as handle:
            handle.write(ujson.dumps(states.state_to_document(states.build_reference_spin_state('e'))))
        code, out, _ = self.invoke('custom', '--state-file', state_file, '--plan', 'electron=none;spins=1,2',
                                   '--output', self.path('custom.ppm'), *SMALL)
        self.assertEqual(code, 0)
        self.assertIn('entanglement entropy: 1.000 bits', out)

    def test_deterministic(self):
        """Repeated runs and any thread count give the same bytes"""
        outputs = []
        for index, threads in enumerate(['1', '1', '3']):
            output = self.path('run{}.ppm'.format(index))
            code, _, _ = self.invoke('lithium', '--slice', 'b', '--grid', '7', '--size', '64',
                                     '--threads', threads, '--output', output)
            self.assertEqual(code, 0)
            with open(output, 'rb') as handle:
                outputs.append(handle.read())
        self.assertEqual(outputs[0], outputs[1])
        self.assertEqual(outputs[0], outputs[2])


class TestErrors(CliTestCase):
    """A suite of test cases for exit codes"""

    def test_help(self):
        """Help exits cleanly and shows the defaults"""
        code, out, _ = self.invoke('lithium', '--help')
        self.assertEqual(code, 0)
        for default in ('61', '4.5', '24x12', '0.1', '512'):
            self.assertIn(default, out)

    def test_flag_errors(self):
        """Bad flags exit with 2 before any work"""
        for argv in [['lithium', '--slice', 'z'],
                     ['reference', '--panel', 'a', '--grid', '1'],
                     ['reference', '--panel', 'a', '--threads', '0'],
                     ['reference', '--panel', 'a', '--sphere-samples', '24'],
                     ['reference', '--panel', 'a', '--size', '32'],
                     ['hydrogen', '--jm', '5/3', '1/2'],
                     ['custom', '--state-file', 'x.json', '--plan', 'grid=1']]:
            code, _, err = self.invoke(*argv)
            self.assertEqual(code, 2, argv)
            self.assertTrue(err)

    def test_missing_state_file(self):
        """Unreadable state files exit with 1"""
        code, _, err = self.invoke('custom', '--state-file', self.path('missing.json'), *SMALL)
        self.assertEqual(code, 1)
        self.assertIn('error: ', err)

    def test_bad_quantum_numbers(self):
        """Valid flags with impossible quantum numbers exit with 1"""
        code, _, err = self.invoke('hydrogen', '--jm', '7/2', '1/2', '--output', self.path('x.ppm'), *SMALL)
        self.assertEqual(code, 1)
        self.assertIn('error: ', err)

    def singlet_file(self):
        state_file = self.path('pair.json')
        with open(state_file, 'w', encoding='utf-8') as handle:
            handle.write(ujson.dumps(states.state_to_document(states.build_reference_spin_state('e'))))
        return state_file

    def test_plan_unknown_electron(self):
        """A plan naming electrons the state lacks exits with 2 before any sampling"""
        state_file = self.singlet_file()
        for plan in ('electron=3;spins=1', 'electron=1;spins=1,2', 'electron=none;spins=4'):
            with patch('atomic_wigner.cli.build_scene') as fake_build:
                code, out, err = self.invoke('custom', '--state-file', state_file, '--plan', plan,
                                             '--output', self.path('x.ppm'), *SMALL)
            self.assertEqual(code, 2, plan)
            self.assertIn('--plan', err)
            self.assertEqual(out, '')
            fake_build.assert_not_called()

    def test_output_checked_first(self):
        """An output path that cannot be created exits with 1 before any sampling"""
        blocker = self.path('blocker')
        with open(blocker, 'w', encoding='utf-8') as handle:
            handle.write('not a directory')
        for flags in (['--output', os.path.join(blocker, 'x.ppm')],
                      ['--output', self.path('ok.ppm'), '--scene-out', os.path.join(blocker, 'x.json')],
                      ['--output', self.tmp.name]):
            with patch('atomic_wigner.cli.build_scene') as fake_build:
                code, _, err = self.invoke('reference', '--panel', 'a', *(flags + SMALL))
            self.assertEqual(code, 1, flags)
            self.assertIn('error: ', err)
            fake_build.assert_not_called()


class TestParsers(unittest.TestCase):
    """A suite of test cases for the argument helpers"""

    def test_plan_spec(self):
        """Plan specs give the grid electron and displayed spins"""
        self.assertEqual(cli._plan_spec('electron=2;spins=1,3'), {'electron': 2, 'spins': (1, 3)})
        self.assertEqual(cli._plan_spec('electron=none'), {'electron': None, 'spins': ()})

    def test_sphere_samples(self):
        """THETAxPHI is split into two counts"""
        self.assertEqual(cli._sphere_samples('32x16'), (32, 16))

    def test_negative_fractions(self):
        """Only the two values after --jm are rewritten"""
        self.assertEqual(cli._negative_fractions(['hydrogen', '--jm', '5/2', '-3/2', '--extent', '-1/2']),
                         ['hydrogen', '--jm', '5/2', '-1.5', '--extent', '-1/2'])

    def test_state_scalars(self):
        """A single spin has no cut to report"""
        scalars = cli.state_scalars(states.build_reference_spin_state('a'))
        self.assertEqual(scalars, [('norm', '1.000000')])


if __name__ == '__main__':
    unittest.main()
