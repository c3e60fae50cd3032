# -*- coding: UTF-8 -*-
"""
Command line front end.

Every subcommand builds one state, samples it into a glyph scene, writes the
rendered image (and optionally the scene document) and prints the state's key
scalars. Flag problems exit with 2 before any computation starts; failures
while computing or writing exit with 1.
"""
import argparse
import hashlib
import os
import re
import sys
from fractions import Fraction

import ujson

from .constants import const
from .engine import entanglement_entropy
from .render import render, MIN_CANVAS
from .scene import FigureRecipe, build_scene, export_scene
from .states import (REFERENCE_PANELS, ORBITALS, HELIUM_STATES, UP, DOWN, build_reference_spin_state,
                     build_orbital, with_spin, build_jm_state, build_helium, build_lithium, build_pi_bond,
                     state_from_document)
from .std_logger import get_run_logger

# (displayed spins, default opacity mode) of each lithium slice; electron 1 is always on the grid
LITHIUM_SLICES = {'a': ((1, 2, 3), 'marginal'),
                  'b': ((1,), 'marginal'),
                  'c': ((1, 2), 'constant'),
                  'd': ((2, 3), 'constant')}

DEFAULT_SEPARATION = 1.5


def _count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError('expected an integer, got {!r}'.format(text))
    if value < 2:
        raise argparse.ArgumentTypeError('must be at least 2, got {}'.format(value))
    return value


def _workers(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError('expected an integer, got {!r}'.format(text))
    if value < 1:
        raise argparse.ArgumentTypeError('must be at least 1, got {}'.format(value))
    return value


def _positive(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError('expected a number, got {!r}'.format(text))
    if not 0 < value < float('inf'):
        raise argparse.ArgumentTypeError('must be positive and finite, got {}'.format(text))
    return value


def _threshold(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError('expected a number, got {!r}'.format(text))
    if not 0 <= value < 1:
        raise argparse.ArgumentTypeError('must lie in [0, 1), got {}'.format(text))
    return value


def _sphere_samples(text):
    parts = text.lower().split('x')
    if len(parts) != 2:
        raise argparse.ArgumentTypeError('expected THETAxPHI such as 24x12, got {!r}'.format(text))
    return _count(parts[0]), _count(parts[1])


def _canvas(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError('expected an integer, got {!r}'.format(text))
    if value < MIN_CANVAS:
        raise argparse.ArgumentTypeError('must be at least {}, got {}'.format(MIN_CANVAS, value))
    return value


def _half_integer(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError('expected an integer or half-integer like 5/2, got {!r}'.format(text))
    if (2 * value).denominator != 1:
        raise argparse.ArgumentTypeError('expected an integer or half-integer, got {!r}'.format(text))
    return value


def _plan_spec(text):
    """``electron=1;spins=1,2`` to a dict; ``electron=none`` traces every mode"""
    spec = {'electron': 1, 'spins': ()}
    for token in filter(None, (t.strip() for t in text.split(';'))):
        key, sep, value = token.partition('=')
        key, value = key.strip(), value.strip()
        if not sep or key not in spec:
            raise argparse.ArgumentTypeError('expected electron=N and/or spins=I,J,..., got {!r}'.format(token))
        try:
            if key == 'electron':
                spec['electron'] = None if value.lower() == 'none' else int(value)
            else:
                spec['spins'] = tuple(int(v) for v in value.split(',') if v.strip())
        except ValueError:
            raise argparse.ArgumentTypeError('bad value for {}: {!r}'.format(key, value))
    return spec


def build_parser():
    """The argument parser of every subcommand

    :Returns: argparse.ArgumentParser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--grid', type=_count, default=const.GRID_POINTS,
                        help='grid points per axis (default: %(default)s)')
    common.add_argument('--extent', type=_positive, default=const.GRID_EXTENT,
                        help='grid covers [-extent, extent] on both axes (default: %(default)s)')
    common.add_argument('--sphere-samples', type=_sphere_samples,
                        default='{}x{}'.format(const.SPHERE_THETA, const.SPHERE_PHI),
                        help='texture samples per sphere, THETAxPHI (default: %(default)s)')
    common.add_argument('--opacity-mode', choices=('marginal', 'constant'), default=None,
                        help='glyph opacity from the marginal or fixed at 1 '
                             '(default: marginal; constant for lithium slices c and d)')
    common.add_argument('--threshold', type=_threshold, default=const.THRESHOLD,
                        help='drop glyphs with opacity below this (default: %(default)s)')
    common.add_argument('--output', default=None,
                        help='image path; a .png suffix writes PNG, anything else binary PPM '
                             '(default: <ATOMIC_WIGNER_OUTPUT_DIR>/<figure>.ppm)')
    common.add_argument('--scene-out', default=None, help='also write the scene as JSON to this path')
    common.add_argument('--arrows', action='store_true', help='draw conditional Bloch vectors (default: off)')
    common.add_argument('--threads', type=_workers, default=1,
                        help='worker threads for the grid sweep (default: %(default)s)')
    common.add_argument('--representation', choices=('position', 'momentum'), default='position',
                        help='lay the grid out in position or momentum space (default: %(default)s)')
    common.add_argument('--size', type=_canvas, default=const.CANVAS,
                        help='square canvas edge in pixels (default: %(default)s)')

    parser = argparse.ArgumentParser(prog='atomic-wigner',
                                     description='Sphere-glyph pictures of Wigner functions of model atoms')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    reference = subparsers.add_parser('reference', parents=[common], help='single sphere of a reference spin state')
    reference.add_argument('--panel', choices=list(REFERENCE_PANELS), required=True, help='reference state a..h')

    hydrogen = subparsers.add_parser('hydrogen', parents=[common], help='one electron orbital or |j, m> state')
    which = hydrogen.add_mutually_exclusive_group(required=True)
    which.add_argument('--orbital', choices=list(ORBITALS), help='orbital label')
    which.add_argument('--jm', nargs=2, type=_half_integer, metavar=('J', 'M'),
                       help='spin-orbit coupled state of the l = 2 shell, i.e. 5/2 1/2; '
                            'a negative m may be written 5/2 -1/2 or 5/2 -0.5')
    hydrogen.add_argument('--spin', choices=('up', 'down'), default='up',
                          help='spin attached to --orbital (default: %(default)s)')

    helium = subparsers.add_parser('helium', parents=[common], help='two electron helium states')
    helium.add_argument('--state', choices=HELIUM_STATES, default='ground', help='(default: %(default)s)')

    lithium = subparsers.add_parser('lithium', parents=[common], help='slices of the lithium determinant')
    lithium.add_argument('--slice', choices=sorted(LITHIUM_SLICES), required=True, help='which reduced slice')

    molecule = subparsers.add_parser('molecule', parents=[common], help='single or double pi bond')
    molecule.add_argument('--bond', choices=('single', 'double'), default='single', help='(default: %(default)s)')
    molecule.add_argument('--separation', type=_positive, default=DEFAULT_SEPARATION,
                          help='lobe centers at x = +-separation (default: %(default)s)')

    custom = subparsers.add_parser('custom', parents=[common], help='any state from a JSON state file')
    custom.add_argument('--state-file', required=True, help='JSON state document')
    custom.add_argument('--plan', type=_plan_spec, default='electron=1',
                        help='grid electron and displayed spins, i.e. "electron=1;spins=1,2" (default: %(default)s)')
    return parser


def _all_spins(psi):
    return tuple(f.electron for f in psi.signature if f.is_spin)


NEGATIVE_FRACTION = re.compile(r'^-\d+/[1-9]\d*$')


def _negative_fractions(argv):
    """Rewrite ``-1/2`` style values after ``--jm`` as decimals, which argparse does not take for flags"""
    argv = list(argv)
    for i, token in enumerate(argv):
        if token == '--jm':
            for j in range(i + 1, min(i + 3, len(argv))):
                if NEGATIVE_FRACTION.match(argv[j]):
                    argv[j] = str(float(Fraction(argv[j])))
    return argv


def _plan_problem(plan, psi):
    """Why ``plan`` cannot apply to ``psi``, or None when it can"""
    electron = plan['electron']
    if electron is not None and not any(not f.is_spin and f.electron == electron for f in psi.signature):
        return 'electron {} has no position modes in this state (electrons: {})'.format(
            electron, ', '.join(str(e) for e in psi.signature.electrons))
    missing = [s for s in plan['spins'] if s not in _all_spins(psi)]
    if missing:
        return 'spin(s) {} not in this state (spins: {})'.format(
            ', '.join(str(s) for s in missing), ', '.join(str(s) for s in _all_spins(psi)) or 'none')
    return None


def _usage_error(parser, message):
    try:
        parser.error(message)
    except SystemExit as doh:
        return doh.code


def _prepare_output(path):
    """Create the parent directory of ``path`` and make sure a file can be written there

    :Raises: OSError
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    if not os.access(directory, os.W_OK):
        raise OSError('Cannot write to {}'.format(directory))
    if os.path.isdir(path):
        raise OSError('{} is a directory'.format(path))


def select_figure(args):
    """Resolve parsed arguments into the figure to draw

    :Returns: Tuple of (figure name, StateVector, grid electron, displayed spins, opacity mode)

    :Raises: ValueError, OSError
    """
    if args.command == 'reference':
        psi = build_reference_spin_state(args.panel)
        return 'reference-{}'.format(args.panel), psi, None, _all_spins(psi), 'marginal'
    elif args.command == 'hydrogen':
        if args.jm:
            j, m = args.jm
            psi = build_jm_state(j, m)
            name = 'hydrogen-j{}-m{}'.format(j, m).replace('/', '_')
        else:
            psi = with_spin(build_orbital(args.orbital), UP if args.spin == 'up' else DOWN)
            name = 'hydrogen-{}-{}'.format(args.orbital, args.spin)
        return name, psi, 1, (1,), 'marginal'
    elif args.command == 'helium':
        return 'helium-{}'.format(args.state), build_helium(args.state), 1, (1, 2), 'marginal'
    elif args.command == 'lithium':
        spins, opacity = LITHIUM_SLICES[args.slice]
        return 'lithium-{}'.format(args.slice), build_lithium(), 1, spins, opacity
    elif args.command == 'molecule':
        psi = build_pi_bond(args.bond, args.separation)
        return 'molecule-{}'.format(args.bond), psi, 1, _all_spins(psi), 'marginal'
    with open(args.state_file, encoding='utf-8') as handle:
        psi = state_from_document(ujson.loads(handle.read()))
    name = os.path.splitext(os.path.basename(args.state_file))[0]
    return 'custom-{}'.format(name), psi, args.plan['electron'], args.plan['spins'], 'marginal'


def state_scalars(psi):
    """The norm, and the entanglement entropy across spin|space (or first spin|other
    spins for spin-only states) where that cut exists

    :Returns: List of (label, value) pairs
    """
    scalars = [('norm', '{:.6f}'.format(psi.norm()))]
    spins = [i for i, f in enumerate(psi.signature) if f.is_spin]
    modes = [i for i, f in enumerate(psi.signature) if not f.is_spin]
    cut = spins if spins and modes else spins[:1] if len(spins) > 1 else None
    if cut:
        scalars.append(('entanglement entropy', '{:.3f} bits'.format(entanglement_entropy(psi, cut))))
    return scalars


def run(argv=None):
    """Parse ``argv``, draw the figure, report; returns the process exit code

    :Returns: Integer
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_negative_fractions(argv))
    except SystemExit as doh:
        return doh.code
    run_id = hashlib.sha1(' '.join(argv).encode('utf-8')).hexdigest()[:8]
    log = get_run_logger(args.command, run_id, loglevel=const.LOG_LEVEL)
    try:
        figure, psi, electron, spins, opacity = select_figure(args)
        if args.command == 'custom':
            problem = _plan_problem(args.plan, psi)
            if problem:
                return _usage_error(parser, 'argument --plan: {}'.format(problem))
        log = get_run_logger(figure, run_id, loglevel=const.LOG_LEVEL)
        n_theta, n_phi = args.sphere_samples
        recipe = FigureRecipe.for_slice(psi.signature, electron, spins=spins, representation=args.representation,
                                        grid_points=args.grid, extent=args.extent, n_theta=n_theta, n_phi=n_phi,
                                        opacity_mode=args.opacity_mode or opacity, threshold=args.threshold,
                                        arrows=args.arrows)
        output = args.output or os.path.join(const.OUTPUT_DIR, '{}.ppm'.format(figure))
        for path in filter(None, (output, args.scene_out)):
            _prepare_output(path)
        for label, value in state_scalars(psi):
            print('{}: {}'.format(label, value))
        log.info('Sampling {} on {} thread(s)'.format(figure, args.threads))
        scene = build_scene(psi, recipe, threads=args.threads)
        render(scene, size=(args.size, args.size)).save(output)
        print('glyphs: {}'.format(len(scene)))
        print('image: {}'.format(output))
        if args.scene_out:
            export_scene(scene, args.scene_out)
            print('scene: {}'.format(args.scene_out))
    except (ValueError, RuntimeError, OSError) as doh:
        log.debug(doh)
        print('error: {}'.format(doh), file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())
