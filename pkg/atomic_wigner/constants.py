# -*- coding: UTF-8 -*-
"""
This module contains variables that do not change during run time. Numerical
defaults live here so that the library, the figure recipes and the command line
all agree on one source of truth, and the few knobs that make sense to tune per
machine are read from the environment once, at import.
"""
import os
from os import environ
from collections import namedtuple, OrderedDict


def get_output_dir():
    """Resolve the directory that images and scene files are written to.

    The directory comes from ``ATOMIC_WIGNER_OUTPUT_DIR`` and falls back to the
    current working directory. A path that does not exist yet is fine (the cli
    creates it), but an existing path must be a writable directory.

    :Returns: String

    :Raises: RuntimeError
    """
    output_dir = environ.get('ATOMIC_WIGNER_OUTPUT_DIR', os.getcwd())
    if os.path.exists(output_dir):
        if not os.path.isdir(output_dir):
            error = "Output location {} is not a directory".format(output_dir)
            raise RuntimeError(error)
        elif not os.access(output_dir, os.W_OK):
            error = "Output directory {} is not writable".format(output_dir)
            raise RuntimeError(error)
    return output_dir


def _spin_nodes():
    """Parse ``ATOMIC_WIGNER_SPIN_NODES`` ("32" or "32x32") into (theta, phi) counts

    :Returns: Tuple
    """
    raw = environ.get('ATOMIC_WIGNER_SPIN_NODES', '32x32')
    parts = raw.lower().split('x')
    if len(parts) == 1:
        parts = parts * 2
    return int(parts[0]), int(parts[1])


SPIN_THETA_NODES, SPIN_PHI_NODES = _spin_nodes()

DEFINED = OrderedDict([
            ('OUTPUT_DIR', get_output_dir()),
            ('LOG_LEVEL', environ.get('ATOMIC_WIGNER_LOG_LEVEL', 'INFO')),
            ('MAX_FOCK', 200),
            ('GAUSS_HERMITE_NODES', int(environ.get('ATOMIC_WIGNER_GH_NODES', 40))),
            ('SPIN_THETA_NODES', SPIN_THETA_NODES),
            ('SPIN_PHI_NODES', SPIN_PHI_NODES),
            ('GRID_POINTS', 61),
            ('GRID_EXTENT', 4.5),
            ('SPHERE_THETA', 24),
            ('SPHERE_PHI', 12),
            ('THRESHOLD', 0.1),
            ('UNDERFLOW', 1e-12),
            ('CANVAS', 512),
            ('BACKGROUND', (170, 170, 170)),
            ('SCENE_VERSION', 1),
          ])

Constants = namedtuple('Constants', list(DEFINED.keys()))

# The '*' expands the list, just liked passing a function *args
const = Constants(*list(DEFINED.values()))
