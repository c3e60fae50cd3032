# -*- coding: UTF-8 -*-
"""
Suite(s) of test cases for the ``render.py`` module
"""
import os
import tempfile
import unittest

import numpy as np

from atomic_wigner import render, scene, states


def spin_up_scene():
    psi = states.build_reference_spin_state('a')
    recipe = scene.FigureRecipe.for_slice(psi.signature, None, spins=(1,))
    return scene.build_scene(psi, recipe)


class TestExports(unittest.TestCase):
    """A suite of test cases for the package level names"""

    def test_module_not_shadowed(self):
        """atomic_wigner.render is the module and the function is render_scene"""
        import atomic_wigner
        self.assertTrue(hasattr(atomic_wigner.render, 'colormap'))
        self.assertIs(atomic_wigner.render_scene, render.render)


class TestColormap(unittest.TestCase):
    """A suite of test cases for ``colormap``"""

    def test_zero_is_white(self):
        """Zero maps to white"""
        np.testing.assert_array_equal(render.colormap(np.array(0.0)), [255, 255, 255])

    def test_ends(self):
        """+1 is dark blue and -1 its red mirror"""
        np.testing.assert_array_equal(render.colormap(np.array(1.0)), [0x21, 0x66, 0xac])
        np.testing.assert_array_equal(render.colormap(np.array(-1.0)), [0xac, 0x66, 0x21])

    def test_mirror(self):
        """A value and its negative swap red and blue"""
        values = np.linspace(0, 1, 37)
        np.testing.assert_array_equal(render.colormap(-values), render.colormap(values)[:, ::-1])

    def test_clamp(self):
        """Values beyond [-1, 1] are clamped"""
        np.testing.assert_array_equal(render.colormap(np.array([1.366, -3.0])),
                                      render.colormap(np.array([1.0, -1.0])))


class TestCamera(unittest.TestCase):
    """A suite of test cases for ``Camera``"""

    def test_bad_axis(self):
        """Only x, y and z are viewing axes"""
        with self.assertRaises(render.CameraError):
            render.Camera(axis='w')

    def test_zero_extent(self):
        """The camera must cover a positive area"""
        with self.assertRaises(render.CameraError):
            render.Camera(width=0)

    def test_default_camera(self):
        """The default camera frames the glyphs with a margin"""
        camera = render.default_camera(spin_up_scene())
        self.assertEqual(camera.axis, 'y')
        self.assertAlmostEqual(camera.width, 2.2)
        self.assertEqual(camera.center, (0.0, 0.0))


class TestRender(unittest.TestCase):
    """A suite of test cases for ``render``"""

    def test_empty_scene(self):
        """An empty scene is all background"""
        image = render.render(scene.Scene([], 24, 12), size=(64, 64))
        self.assertEqual((image.width, image.height), (64, 64))
        self.assertTrue(np.all(image.pixels == np.array([170, 170, 170], dtype=np.uint8)))

    def test_small_canvas(self):
        """Canvases below 64 pixels are refused"""
        with self.assertRaises(render.CameraError):
            render.render(scene.Scene([], 24, 12), size=(32, 32))

    def test_spin_up_poles(self):
        """The north of a spin-up sphere is blue and the south red"""
        image = render.render(spin_up_scene(), size=(101, 101))
        top, bottom = image.pixels[6, 50].astype(int), image.pixels[94, 50].astype(int)
        self.assertGreater(top[2], top[0])
        self.assertGreater(bottom[0], bottom[2])
        np.testing.assert_array_equal(image.pixels[0, 0], [170, 170, 170])

    def test_facing_hemisphere(self):
        """Looking along +y the viewer sees the -y face of a sphere"""
        big_theta, big_phi = scene.sphere_directions(24, 12)
        # texture azimuth Phi draws at physical azimuth pi - Phi, so this is -n_y
        facing = -np.sin(big_theta) * np.sin(big_phi)
        glyph = scene.SceneGlyph(np.zeros(3), 1.0, 1.0, facing, None)
        image = render.render(scene.Scene([glyph], 24, 12), size=(101, 101))
        middle = image.pixels[50, 50].astype(int)
        self.assertGreater(middle[2], middle[0] + 100)

    def test_right_handed(self):
        """+x is on the right of the y view and +z on top"""
        big_theta, big_phi = scene.sphere_directions(24, 12)
        east = -np.sin(big_theta) * np.cos(big_phi)
        glyph = scene.SceneGlyph(np.zeros(3), 1.0, 1.0, east, None)
        image = render.render(scene.Scene([glyph], 24, 12), size=(101, 101))
        left, right = image.pixels[50, 10].astype(int), image.pixels[50, 90].astype(int)
        self.assertGreater(right[2], right[0])
        self.assertGreater(left[0], left[2])

    def test_nearest_on_top(self):
        """Of two overlapping spheres the one nearer the viewer is drawn last"""
        near = np.ones((24, 12))
        glyphs = [scene.SceneGlyph(np.array([0.0, -0.5, 0.0]), 1.0, 1.0, near, None),
                  scene.SceneGlyph(np.array([0.0, 0.5, 0.0]), 1.0, 1.0, -near, None)]
        camera = render.Camera('y', (0.0, 0.0), 2.2, 2.2)
        for lattice in (glyphs, glyphs[::-1]):
            image = render.render(scene.Scene(lattice, 24, 12), camera=camera, size=(64, 64))
            np.testing.assert_array_equal(image.pixels[32, 32], render.colormap(np.array(1.0)))

    def test_deterministic(self):
        """Rendering twice gives identical bytes"""
        lattice = spin_up_scene()
        self.assertEqual(render.render(lattice, size=(80, 64)).to_ppm(),
                         render.render(lattice, size=(80, 64)).to_ppm())

    def test_ppm(self):
        """PPM output is a P6 header followed by raw RGB"""
        data = render.render(scene.Scene([], 24, 12), size=(70, 64)).to_ppm()
        header = b'P6\n70 64\n255\n'
        self.assertTrue(data.startswith(header))
        self.assertEqual(len(data), len(header) + 70 * 64 * 3)

    def test_png(self):
        """PNG output carries the PNG signature"""
        data = render.render(spin_up_scene(), size=(64, 64)).to_png()
        self.assertTrue(data.startswith(b'\x89PNG\r\n\x1a\n'))

    def test_save(self):
        """The file suffix picks the format"""
        image = render.render(scene.Scene([], 24, 12), size=(64, 64))
        with tempfile.TemporaryDirectory() as tmp:
            for name, magic in [('a.png', b'\x89PNG'), ('a.ppm', b'P6')]:
                path = os.path.join(tmp, name)
                image.save(path)
                with open(path, 'rb') as handle:
                    self.assertTrue(handle.read().startswith(magic))


if __name__ == '__main__':
    unittest.main()
