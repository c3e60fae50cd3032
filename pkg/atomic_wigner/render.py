# -*- coding: UTF-8 -*-
"""
Rasterizes a Scene with an orthographic, axis-aligned camera.

Spheres are painted back to front (grid index breaks ties) with their glyph
opacity. Each visible surface pixel looks its color up from the glyph texture
through a fixed diverging colormap over [-1, 1]: blue for positive values,
white at zero, red for negative ones. There is no lighting.
"""
import io
from collections import namedtuple

import numpy as np
import png

from .constants import const
from .std_logger import get_logger

logger = get_logger(__name__, loglevel=const.LOG_LEVEL)

MIN_CANVAS = 64
ARROW_COLOR = (0, 0, 0)

# positive half of the colormap, from 0 to +1; the negative half is its red/blue mirror
POSITIVE_STOPS = '0:ffffff,0.25:d1e5f0,0.5:92c5de,0.75:4393c3,1:2166ac'

# (screen right, screen up) axis indices for each viewing axis
SCREEN_AXES = {'x': (1, 2), 'y': (0, 2), 'z': (0, 1)}
# side of the viewing axis the viewer sits on; screen right x screen up points at the viewer
VIEWER_SIDE = {'x': 1.0, 'y': -1.0, 'z': 1.0}


class CameraError(ValueError):
    """The camera or canvas cannot produce an image"""
    pass


def _parse_stops(desc):
    """``"v1:rrggbb,v2:rrggbb,..."`` to sorted (values, colors in [0, 1])"""
    values, colors = [], []
    for token in desc.split(','):
        value, code = token.split(':')
        values.append(float(value))
        colors.append([int(code[i:i + 2], 16) / 255.0 for i in (0, 2, 4)])
    order = np.argsort(values)
    return np.array(values)[order], np.array(colors)[order]


_STOP_VALUES, _STOP_COLORS = _parse_stops(POSITIVE_STOPS)


def colormap(values):
    """Map Wigner values to 8-bit RGB.

    Values are clamped to [-1, 1]. A value and its negative give colors that are
    exact mirror images: the red and blue channels swap and green is unchanged.

    :Returns: numpy.ndarray of uint8, shape ``values.shape + (3,)``

    :param values: Real values
    :type values: numpy.ndarray
    """
    values = np.clip(np.asarray(values, dtype=float), -1.0, 1.0)
    magnitude = np.abs(values)
    rgb = np.stack([np.interp(magnitude, _STOP_VALUES, _STOP_COLORS[:, c]) for c in range(3)], axis=-1)
    rgb = np.rint(rgb * 255).astype(np.uint8)
    negative = values < 0
    rgb[negative] = rgb[negative][:, ::-1]
    return rgb


class Camera(namedtuple('Camera', 'axis center width height')):
    """Orthographic camera looking along ``axis`` from the side ``VIEWER_SIDE`` names.

    ``center`` is the (screen right, screen up) world position of the canvas
    middle; ``width`` and ``height`` are the world extents the canvas covers.
    For axis ``y`` the viewer stands at -y looking along +y, screen right is +x
    and screen up is +z; the image is never mirrored.
    """
    __slots__ = ()

    def __new__(cls, axis='y', center=(0.0, 0.0), width=2.0, height=2.0):
        if axis not in SCREEN_AXES:
            raise CameraError('Camera axis must be x, y or z, got {!r}'.format(axis))
        center = tuple(float(c) for c in center)
        if len(center) != 2 or not all(np.isfinite(center)):
            raise CameraError('Camera center must be two finite numbers, got {}'.format(center))
        width, height = float(width), float(height)
        if not (np.isfinite(width) and np.isfinite(height) and width > 0 and height > 0):
            raise CameraError('Camera extents must be positive, got {} x {}'.format(width, height))
        return super(Camera, cls).__new__(cls, axis, center, width, height)


def default_camera(scene, axis=None, margin=0.05):
    """Square camera framing every glyph of ``scene``

    :Returns: Camera
    """
    axis = axis or scene.plane[0]
    right, up = SCREEN_AXES[axis]
    if not scene.glyphs:
        return Camera(axis, (0.0, 0.0), 2.0, 2.0)
    centers = np.array([g.center for g in scene.glyphs], dtype=float)
    radii = np.array([g.radius for g in scene.glyphs], dtype=float)
    low = np.min(centers[:, [right, up]] - radii[:, None], axis=0)
    high = np.max(centers[:, [right, up]] + radii[:, None], axis=0)
    span = max(high - low) * (1 + 2 * margin)
    middle = (low + high) / 2
    return Camera(axis, (middle[0], middle[1]), span, span)


class Image(object):
    """An 8-bit RGB raster, row 0 at the top"""

    def __init__(self, pixels):
        pixels = np.asarray(pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3 or pixels.dtype != np.uint8:
            raise ValueError('Pixels must be a (height, width, 3) uint8 array')
        self.pixels = pixels

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    def to_ppm(self):
        """Binary PPM (P6, maxval 255)

        :Returns: bytes
        """
        header = 'P6\n{} {}\n255\n'.format(self.width, self.height).encode('ascii')
        return header + self.pixels.tobytes()

    def to_png(self):
        """8-bit RGB PNG

        :Returns: bytes
        """
        writer = png.Writer(width=self.width, height=self.height, greyscale=False, bitdepth=8)
        buffer = io.BytesIO()
        writer.write(buffer, self.pixels.reshape(self.height, self.width * 3).tolist())
        return buffer.getvalue()

    def save(self, path):
        """Write ``path`` as PNG when it ends in ``.png``, PPM otherwise

        :Returns: String (the path written)

        :Raises: OSError
        """
        data = self.to_png() if str(path).lower().endswith('.png') else self.to_ppm()
        with open(path, 'wb') as handle:
            handle.write(data)
        return path


def _sample_texture(texture, theta, big_phi):
    """Bilinear lookup, clamped in Theta and periodic in Phi"""
    n_theta, n_phi = texture.shape
    t = np.clip(theta / np.pi * (n_theta - 1), 0, n_theta - 1)
    t0 = np.minimum(np.floor(t).astype(int), n_theta - 2)
    ft = t - t0
    f = np.mod(big_phi, 2 * np.pi) / (2 * np.pi) * n_phi
    f0 = np.floor(f).astype(int) % n_phi
    ff = f - np.floor(f)
    f1 = (f0 + 1) % n_phi
    top = texture[t0, f0] * (1 - ff) + texture[t0, f1] * ff
    bottom = texture[t0 + 1, f0] * (1 - ff) + texture[t0 + 1, f1] * ff
    return top * (1 - ft) + bottom * ft


class _Canvas(object):
    """Float RGB accumulator with world <-> pixel mapping"""

    def __init__(self, camera, width, height, background):
        self.camera = camera
        self.width = width
        self.height = height
        self.rgb = np.empty((height, width, 3), dtype=float)
        self.rgb[...] = np.asarray(background, dtype=float) / 255.0
        self.scale_x = width / camera.width
        self.scale_y = height / camera.height

    def to_pixel(self, u, v):
        col = (u - self.camera.center[0]) * self.scale_x + self.width / 2.0
        row = (self.camera.center[1] - v) * self.scale_y + self.height / 2.0
        return col, row

    def to_world(self, col, row):
        u = self.camera.center[0] + (col + 0.5 - self.width / 2.0) / self.scale_x
        v = self.camera.center[1] - (row + 0.5 - self.height / 2.0) / self.scale_y
        return u, v

    def blend(self, rows, cols, colors, alpha):
        self.rgb[rows, cols] = alpha * colors + (1 - alpha) * self.rgb[rows, cols]


def _paint_sphere(canvas, glyph, right, up, axis_index, side):
    if not glyph.radius > 0:
        return
    u0, v0 = glyph.center[right], glyph.center[up]
    radius = glyph.radius
    col_lo, row_lo = canvas.to_pixel(u0 - radius, v0 + radius)
    col_hi, row_hi = canvas.to_pixel(u0 + radius, v0 - radius)
    cols = np.arange(max(int(np.floor(col_lo)), 0), min(int(np.ceil(col_hi)) + 1, canvas.width))
    rows = np.arange(max(int(np.floor(row_lo)), 0), min(int(np.ceil(row_hi)) + 1, canvas.height))
    if not len(cols) or not len(rows):
        return
    grid_rows, grid_cols = np.meshgrid(rows, cols, indexing='ij')
    u, v = canvas.to_world(grid_cols, grid_rows)
    du, dv = (u - u0) / radius, (v - v0) / radius
    inside = du ** 2 + dv ** 2 <= 1.0
    if not np.any(inside):
        return
    du, dv = du[inside], dv[inside]
    normal = np.zeros((du.size, 3))
    normal[:, right] = du
    normal[:, up] = dv
    normal[:, axis_index] = side * np.sqrt(np.clip(1 - du ** 2 - dv ** 2, 0, 1))
    theta = np.arccos(np.clip(normal[:, 2], -1, 1))
    psi = np.arctan2(normal[:, 1], normal[:, 0])
    values = _sample_texture(np.asarray(glyph.texture, dtype=float), theta, np.pi - psi)
    colors = colormap(values).astype(float) / 255.0
    canvas.blend(grid_rows[inside], grid_cols[inside], colors, glyph.opacity)


def _segment_pixels(canvas, start, end):
    length = np.hypot(end[0] - start[0], end[1] - start[1])
    steps = int(np.ceil(2 * length)) + 1
    t = np.linspace(0, 1, steps)
    cols = np.rint(start[0] + t * (end[0] - start[0]) - 0.5).astype(int)
    rows = np.rint(start[1] + t * (end[1] - start[1]) - 0.5).astype(int)
    return rows, cols


def _paint_arrow(canvas, glyph, right, up):
    arrow = np.asarray(glyph.arrow, dtype=float)
    direction = np.array([arrow[right], arrow[up]])
    if not np.any(direction):
        return
    u0, v0 = glyph.center[right], glyph.center[up]
    reach = 0.9 * glyph.radius
    tail = canvas.to_pixel(u0 - reach * direction[0], v0 - reach * direction[1])
    tip = canvas.to_pixel(u0 + reach * direction[0], v0 + reach * direction[1])
    shaft = np.array(tip) - np.array(tail)
    head = 0.3 * shaft
    pieces = [(tail, tip)]
    for angle in (2.6, -2.6):
        rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        pieces.append((tip, tuple(np.array(tip) + rotation @ head)))
    rows, cols = [], []
    for start, end in pieces:
        r, c = _segment_pixels(canvas, start, end)
        rows.append(r)
        cols.append(c)
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    keep = (rows >= 0) & (rows < canvas.height) & (cols >= 0) & (cols < canvas.width)
    flat = np.unique(rows[keep] * canvas.width + cols[keep])
    color = np.asarray(ARROW_COLOR, dtype=float) / 255.0
    canvas.blend(flat // canvas.width, flat % canvas.width, color, glyph.opacity)


def render(scene, camera=None, size=None, background=None):
    """Draw ``scene`` into a new Image.

    :Returns: Image

    :param scene: Glyphs to draw
    :type scene: atomic_wigner.scene.Scene

    :param camera: Defaults to a square camera framing the glyphs, looking along the scene plane's normal
    :type camera: Camera

    :param size: (width, height) of the canvas in pixels, each at least 64
    :type size: Tuple

    :param background: RGB background color
    :type background: Tuple

    :Raises: CameraError
    """
    width, height = size or (const.CANVAS, const.CANVAS)
    if width < MIN_CANVAS or height < MIN_CANVAS:
        raise CameraError('Canvas must be at least {0}x{0}, got {1}x{2}'.format(MIN_CANVAS, width, height))
    camera = camera or default_camera(scene)
    background = const.BACKGROUND if background is None else background
    canvas = _Canvas(camera, int(width), int(height), background)
    right, up = SCREEN_AXES[camera.axis]
    axis_index = 'xyz'.index(camera.axis)
    side = VIEWER_SIDE[camera.axis]
    # farthest from the viewer first; sorted() is stable so grid order breaks ties
    order = sorted(range(len(scene.glyphs)), key=lambda i: side * scene.glyphs[i].center[axis_index])
    for index in order:
        glyph = scene.glyphs[index]
        _paint_sphere(canvas, glyph, right, up, axis_index, side)
        if glyph.arrow is not None:
            _paint_arrow(canvas, glyph, right, up)
    logger.debug('Rendered {} glyphs onto {}x{}'.format(len(scene.glyphs), width, height))
    pixels = np.clip(np.rint(canvas.rgb * 255), 0, 255).astype(np.uint8)
    return Image(pixels)
