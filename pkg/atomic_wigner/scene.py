# -*- coding: UTF-8 -*-
"""
Sphere-glyph lattices.

A scene samples one electron's position (or momentum) marginal on a plane grid.
Each grid point gets a sphere whose opacity is the marginal relative to its
maximum over the grid and whose surface shows the conditional equal-angle spin
Wigner function of the displayed spins at that point. Spin-only states give a
single sphere at the origin.
"""
from concurrent.futures import ThreadPoolExecutor
from collections import namedtuple

import numpy as np
import ujson

from .constants import const
from .engine import (Contraction, ReductionPlan, EqualAngle, SphereAngle,
                     equal_angle_kernel, bloch_from_operator, slice_plan)
from .kernels import PositionMarginal, MomentumMarginal
from .schemas import SCENE_SCHEMA, validate_input
from .states import StateVector, AXES
from .std_logger import get_logger

logger = get_logger(__name__, loglevel=const.LOG_LEVEL)

COLORMAP_NAME = 'mirrored-rdbu'
COLOR_RANGE = (-1.0, 1.0)

# screen (horizontal, vertical) axes of the grid for each plane normal
PLANE_AXES = {'x': ('y', 'z'), 'y': ('x', 'z'), 'z': ('x', 'y')}

SceneGlyph = namedtuple('SceneGlyph', 'center radius opacity texture arrow')


class SceneError(ValueError):
    """A recipe cannot be turned into a scene"""
    pass


class FigureRecipe(namedtuple('FigureRecipe', 'plan grid_points extent n_theta n_phi opacity_mode '
                                              'threshold arrows plane representation')):
    """Everything needed to turn a state into a glyph lattice.

    ``plan`` is a ReductionPlan template: the grid electron's mode directives carry
    ``None`` where the grid coordinate goes, the displayed spins share one
    EqualAngle group, everything else is traced.
    """
    __slots__ = ()

    def __new__(cls, plan, grid_points=None, extent=None, n_theta=None, n_phi=None,
                opacity_mode='marginal', threshold=None, arrows=False, plane=('y', 0.0),
                representation='position'):
        grid_points = const.GRID_POINTS if grid_points is None else int(grid_points)
        extent = const.GRID_EXTENT if extent is None else float(extent)
        n_theta = const.SPHERE_THETA if n_theta is None else int(n_theta)
        n_phi = const.SPHERE_PHI if n_phi is None else int(n_phi)
        threshold = const.THRESHOLD if threshold is None else float(threshold)
        if min(grid_points, n_theta, n_phi) < 2:
            raise SceneError('Grid and sphere sample counts must be at least 2')
        if not 0 <= threshold < 1:
            raise SceneError('Threshold must lie in [0, 1), got {}'.format(threshold))
        if not np.isfinite(extent) or extent <= 0:
            raise SceneError('Grid extent must be positive, got {}'.format(extent))
        if opacity_mode not in ('marginal', 'constant'):
            raise SceneError('Opacity mode must be marginal or constant, got {!r}'.format(opacity_mode))
        if representation not in ('position', 'momentum'):
            raise SceneError('Representation must be position or momentum, got {!r}'.format(representation))
        axis, value = plane
        if axis not in PLANE_AXES:
            raise SceneError('Plane axis must be x, y or z, got {!r}'.format(axis))
        plane = (axis, float(value))
        return super(FigureRecipe, cls).__new__(cls, ReductionPlan(plan), grid_points, extent, n_theta, n_phi,
                                                opacity_mode, threshold, bool(arrows), plane, representation)

    @classmethod
    def for_slice(cls, signature, electron=None, spins=(), representation='position', **kwargs):
        """Recipe whose plan keeps ``electron`` on the grid and shows ``spins``

        :Returns: FigureRecipe
        """
        plan = slice_plan(signature, electron, spins=spins, representation=representation)
        return cls(plan, representation=representation, **kwargs)


class Scene(object):
    """A retained set of glyphs plus the metadata needed to draw them"""

    def __init__(self, glyphs, n_theta, n_phi, plane=('y', 0.0), representation='position',
                 colormap=COLORMAP_NAME, color_range=COLOR_RANGE):
        self.glyphs = list(glyphs)
        self.n_theta = n_theta
        self.n_phi = n_phi
        self.plane = (plane[0], float(plane[1]))
        self.representation = representation
        self.colormap = colormap
        self.color_range = tuple(color_range)

    def __len__(self):
        return len(self.glyphs)

    def to_document(self):
        """The versioned JSON document of this scene

        :Returns: Dictionary
        """
        glyphs = []
        for glyph in self.glyphs:
            glyphs.append({'center': [float(c) for c in glyph.center],
                           'radius': float(glyph.radius),
                           'opacity': float(glyph.opacity),
                           'texture': {'n_theta': self.n_theta,
                                       'n_phi': self.n_phi,
                                       'values': np.asarray(glyph.texture, dtype=float).ravel().tolist()},
                           'arrow': None if glyph.arrow is None else [float(a) for a in glyph.arrow]})
        return {'version': const.SCENE_VERSION,
                'representation': self.representation,
                'colormap': {'name': self.colormap, 'range': list(self.color_range)},
                'plane': {'axis': self.plane[0], 'value': self.plane[1]},
                'glyphs': glyphs}

    @classmethod
    def from_document(cls, document):
        return _scene_from_document(document)


@validate_input(SCENE_SCHEMA)
def _scene_from_document(document):
    if document['version'] > const.SCENE_VERSION:
        raise SceneError('Scene version {} is newer than supported {}'.format(document['version'], const.SCENE_VERSION))
    glyphs = []
    n_theta = n_phi = None
    for item in document['glyphs']:
        texture = item['texture']
        n_theta, n_phi = texture['n_theta'], texture['n_phi']
        values = np.array(texture['values'], dtype=float)
        if values.size != n_theta * n_phi:
            raise SceneError('Texture holds {} values, expected {}'.format(values.size, n_theta * n_phi))
        arrow = None if item['arrow'] is None else np.array(item['arrow'], dtype=float)
        glyphs.append(SceneGlyph(np.array(item['center'], dtype=float), item['radius'], item['opacity'],
                                 values.reshape(n_theta, n_phi), arrow))
    return Scene(glyphs,
                 n_theta if n_theta is not None else const.SPHERE_THETA,
                 n_phi if n_phi is not None else const.SPHERE_PHI,
                 plane=(document['plane']['axis'], document['plane']['value']),
                 representation=document.get('representation', 'position'),
                 colormap=document['colormap']['name'],
                 color_range=document['colormap']['range'])


def sphere_directions(n_theta, n_phi):
    """Surface sample directions (polar Theta from +z, azimuth Phi), poles included

    :Returns: Tuple of (Theta, Phi) arrays of shape ``(n_theta, n_phi)``
    """
    theta = np.pi * np.arange(n_theta) / (n_theta - 1)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    return np.meshgrid(theta, phi, indexing='ij')


def _displayed_spins(plan):
    retained = [d for d in plan if isinstance(d, (EqualAngle, SphereAngle))]
    if any(isinstance(d, SphereAngle) for d in retained):
        raise SceneError('Displayed spins must share an equal-angle group, not fixed angles')
    if len(set(d.group for d in retained)) > 1:
        raise SceneError('A scene shows exactly one equal-angle group')
    return len(retained)


def _placeholders(rho, plan):
    """Index and axis of every mode directive waiting for a grid coordinate"""
    found = []
    for index, (factor, directive) in enumerate(zip(rho.signature, plan)):
        if isinstance(directive, PositionMarginal) and directive.q is None:
            found.append((index, factor.axis, PositionMarginal))
        elif isinstance(directive, MomentumMarginal) and directive.p is None:
            found.append((index, factor.axis, MomentumMarginal))
    return found


def _row_operator(rho, plan, placeholders, coordinates):
    """Conditional spin operators for one grid row; ``coordinates`` maps axis -> array"""
    directives = list(plan)
    for index, axis, kind in placeholders:
        directives[index] = kind(coordinates[axis])
    return Contraction(rho, ReductionPlan(directives)).spin_operator()


def build_scene(state, recipe, threads=1):
    """Sample the recipe's slice of ``state`` into a glyph lattice.

    Rows of the grid are independent; with ``threads > 1`` they run on a thread
    pool, each row always computed in one piece so the result is identical for
    any worker count.

    :Returns: Scene

    :param state: The state to draw
    :type state: StateVector or DensityOperator

    :param recipe: Plan template and sampling parameters
    :type recipe: FigureRecipe

    :param threads: Upper bound on worker threads
    :type threads: Integer

    :Raises: SceneError, PlanError
    """
    rho = state.density() if isinstance(state, StateVector) else state
    recipe.plan.check(rho.signature)
    count = _displayed_spins(recipe.plan)
    placeholders = _placeholders(rho, recipe.plan)
    big_theta, big_phi = sphere_directions(recipe.n_theta, recipe.n_phi)
    kernels = equal_angle_kernel(count, big_theta / 2, big_phi / 2)
    if not placeholders:
        return _single_glyph(rho, recipe, kernels, count)

    horizontal, vertical = PLANE_AXES[recipe.plane[0]]
    grid = np.linspace(-recipe.extent, recipe.extent, recipe.grid_points)
    spacing = grid[1] - grid[0]

    def row(r):
        coordinates = {horizontal: grid,
                       vertical: np.full_like(grid, grid[r]),
                       recipe.plane[0]: np.full_like(grid, recipe.plane[1])}
        return _row_operator(rho, recipe.plan, placeholders, coordinates)

    workers = max(1, int(threads))
    logger.debug('Sweeping {0}x{0} grid on {1} worker(s)'.format(recipe.grid_points, workers))
    if workers == 1:
        operators = [row(r) for r in range(recipe.grid_points)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            operators = list(executor.map(row, range(recipe.grid_points)))
    operators = np.stack(operators)

    marginal = np.real(np.trace(operators, axis1=-2, axis2=-1))
    w_max = marginal.max()
    if not w_max > 0:
        raise SceneError('The marginal vanishes on the whole grid')
    if recipe.opacity_mode == 'marginal':
        opacity = np.clip(marginal / w_max, 0, 1)
    else:
        opacity = np.ones_like(marginal)
    raw = np.real(np.einsum('...kb,tfbk->...tf', operators, kernels))
    alive = marginal > const.UNDERFLOW * w_max
    safe = np.where(alive, marginal, 1.0)
    textures = np.where(alive[..., None, None], raw / safe[..., None, None], 0.0)
    arrows = None
    if recipe.arrows and count == 1:
        arrows, _, _ = bloch_from_operator(operators, underflow=const.UNDERFLOW * w_max)

    glyphs = []
    for r in range(recipe.grid_points):
        for c in range(recipe.grid_points):
            if opacity[r, c] < recipe.threshold:
                continue
            center = np.zeros(3)
            center[AXES.index(horizontal)] = grid[c]
            center[AXES.index(vertical)] = grid[r]
            center[AXES.index(recipe.plane[0])] = recipe.plane[1]
            arrow = None
            if arrows is not None and alive[r, c]:
                arrow = arrows[r, c]
            glyphs.append(SceneGlyph(center, spacing / 2, float(opacity[r, c]), textures[r, c], arrow))
    logger.info('Built scene with {} of {} glyphs retained'.format(len(glyphs), recipe.grid_points ** 2))
    return Scene(glyphs, recipe.n_theta, recipe.n_phi, plane=recipe.plane, representation=recipe.representation)


def _single_glyph(rho, recipe, kernels, count):
    operator = Contraction(rho, recipe.plan).spin_operator()
    trace = np.real(np.trace(operator))
    if not trace > const.UNDERFLOW:
        raise SceneError('The state has no weight under this plan')
    texture = np.real(np.einsum('kb,tfbk->tf', operator, kernels)) / trace
    arrow = None
    if recipe.arrows and count == 1:
        arrow, _, _ = bloch_from_operator(operator)
    glyph = SceneGlyph(np.zeros(3), 1.0, 1.0, texture, arrow)
    return Scene([glyph], recipe.n_theta, recipe.n_phi, plane=recipe.plane, representation=recipe.representation)


def export_scene(scene, path):
    """Write ``scene`` as a UTF-8 JSON document

    :Returns: String (the path written)

    :Raises: OSError
    """
    document = ujson.dumps(scene.to_document(), indent=1, sort_keys=True)
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(document)
    return path


def load_scene(path):
    """Read a scene document written by :func:`export_scene`

    :Returns: Scene

    :Raises: OSError, DocumentError, SceneError
    """
    with open(path, encoding='utf-8') as handle:
        return Scene.from_document(ujson.loads(handle.read()))
