# -*- coding: UTF-8 -*-
"""
Suite(s) of test cases for the ``oracles.py`` module
"""
import unittest
from unittest.mock import patch
from fractions import Fraction

import numpy as np

from atomic_wigner import engine, oracles, states
from atomic_wigner.engine import ReductionPlan, EqualAngle, SphereAngle, slice_plan
from atomic_wigner.kernels import Trace, Fixed, PositionMarginal, MomentumMarginal
from atomic_wigner.states import UP, DOWN

SQRT3 = np.sqrt(3)


class TestQuadratureSpec(unittest.TestCase):
    """A suite of test cases for ``QuadratureSpec``"""

    def test_defaults(self):
        """Defaults come from the environment driven constants"""
        spec = oracles.QuadratureSpec()
        self.assertGreaterEqual(spec.nodes, 16)
        self.assertEqual(spec.extent, 12.0)

    def test_too_few_nodes(self):
        """Fewer than 16 nodes are refused"""
        with self.assertRaises(ValueError):
            oracles.QuadratureSpec(nodes=8)


class TestRules(unittest.TestCase):
    """A suite of test cases for the quadrature rules"""

    def test_gauss_hermite_gaussian(self):
        """The folded rule integrates a plain Gaussian"""
        x, w = oracles.gauss_hermite_rule(40)
        self.assertAlmostEqual(np.sum(w * np.exp(-x * x)), np.sqrt(np.pi), places=12)

    def test_sphere_mass(self):
        """The spin measure has total mass 2 and second moments 2/3"""
        theta, phi, weight = oracles.sphere_rule(32, 32)
        self.assertAlmostEqual(np.sum(weight), 2.0, places=13)
        n_z = np.cos(2 * theta)
        n_x = -np.sin(2 * theta) * np.cos(2 * phi)
        self.assertAlmostEqual(np.sum(weight * n_z ** 2), 2 / 3, places=13)
        self.assertAlmostEqual(np.sum(weight * n_x ** 2), 2 / 3, places=13)
        self.assertAlmostEqual(np.sum(weight * n_x * n_z), 0.0, places=13)


class TestWignerQuadrature(unittest.TestCase):
    """A suite of test cases for ``wigner_quadrature``"""

    def test_vacuum(self):
        """W_00(0, 0) = 1/pi"""
        self.assertAlmostEqual(oracles.wigner_quadrature(0, 0, 0.0, 0.0), 1 / np.pi, places=10)

    def test_parity(self):
        """W_11(0, 0) = -1/pi"""
        self.assertAlmostEqual(oracles.wigner_quadrature(1, 1, 0.0, 0.0), -1 / np.pi, places=10)

    def test_hermitian(self):
        """W of |m><n| is the conjugate of W of |n><m|"""
        a = oracles.wigner_quadrature(2, 0, 0.5, -0.3)
        b = oracles.wigner_quadrature(0, 2, 0.5, -0.3)
        self.assertAlmostEqual(a, np.conj(b), places=10)

    def test_limit(self):
        """Indices above 12 are refused"""
        with self.assertRaises(ValueError):
            oracles.wigner_quadrature(13, 0, 0.0, 0.0)


class TestDisplacedSeries(unittest.TestCase):
    """A suite of test cases for ``displaced_series``"""

    def test_vacuum(self):
        """<0|D(xi)|0> = exp(-|xi|^2/2) within the reported bound"""
        xi = 0.9 + 0.4j
        result = oracles.displaced_series(0, xi, 0)
        self.assertFalse(result.flagged)
        self.assertLessEqual(abs(result.value - np.exp(-abs(xi) ** 2 / 2)), max(result.tail_bound, 1e-14))

    def test_identity(self):
        """D(0) is the identity"""
        for n in range(3):
            for m in range(3):
                result = oracles.displaced_series(n, 0, m)
                self.assertEqual(result.value, float(n == m))
                self.assertEqual(result.tail_bound, 0.0)

    def test_flagged(self):
        """Large displacements with few terms are flagged"""
        self.assertTrue(oracles.displaced_series(0, 6.0, 0, terms=32).flagged)

    def test_minimum_terms(self):
        """At least 32 terms are required"""
        with self.assertRaises(ValueError):
            oracles.displaced_series(0, 0.1, 0, terms=16)


class TestDenseContract(unittest.TestCase):
    """A suite of test cases for ``dense_contract``"""

    def equal_angle(self, panel, angle):
        psi = states.build_reference_spin_state(panel)
        plan = ReductionPlan([EqualAngle(0)] * len(psi.signature))
        return oracles.dense_contract(psi, plan, {0: angle})

    def test_singlet(self):
        """The singlet is -1/2"""
        self.assertAlmostEqual(self.equal_angle('e', (0.6, 1.9)), -0.5, places=13)

    def test_triplet(self):
        """The m = 0 triplet is -1/2 at the pole and 1 at (pi/4, 0)"""
        self.assertAlmostEqual(self.equal_angle('f', (0.0, 0.0)), -0.5, places=13)
        self.assertAlmostEqual(self.equal_angle('f', (np.pi / 4, 0.0)), 1.0, places=13)

    def test_product(self):
        """|up up> at the pole is the squared largest parity eigenvalue"""
        self.assertAlmostEqual(self.equal_angle('c', (0.0, 0.0)), ((1 + SQRT3) / 2) ** 2, places=13)

    def test_dimension(self):
        """The lithium determinant is too large for a dense matrix"""
        psi = states.build_lithium()
        plan = slice_plan(psi.signature, None)
        with self.assertRaises(oracles.DimensionError):
            oracles.dense_contract(psi, plan)


class TestDenseExpectation(unittest.TestCase):
    """A suite of test cases for ``dense_expectation``"""

    def test_matches_dense_contract(self):
        """Vector and matrix routes give the same number"""
        psi = states.build_jm_state(Fraction(5, 2), Fraction(1, 2))
        plan = ReductionPlan([Fixed(0.3, -0.4), PositionMarginal(0.8), MomentumMarginal(-0.2), EqualAngle(0)])
        angles = {0: (0.7, 2.0)}
        self.assertAlmostEqual(oracles.dense_expectation(psi, plan, angles),
                               oracles.dense_contract(psi, plan, angles), places=12)

    def test_lithium_trace(self):
        """Tracing everything leaves the norm of the lithium determinant"""
        psi = states.build_lithium()
        self.assertAlmostEqual(oracles.dense_expectation(psi, slice_plan(psi.signature, None)), 1.0, places=12)

    def test_dimension(self):
        """Vectors longer than the limit are refused"""
        psi = states.build_lithium()
        with patch('atomic_wigner.oracles.MAX_DENSE_VECTOR', 1000):
            with self.assertRaises(oracles.DimensionError):
                oracles.dense_expectation(psi, slice_plan(psi.signature, None))


class TestEngineAgreement(unittest.TestCase):
    """The engine agrees with the dense oracles on seeded random plans"""

    @classmethod
    def setUpClass(cls):
        helium = [states.build_helium(name) for name in states.HELIUM_STATES]
        mixed = states.DensityOperator.mixture([(0.25, helium[0]), (0.75, helium[3])])
        cls.candidates = [states.build_jm_state(Fraction(5, 2), Fraction(1, 2)),
                          states.build_jm_state(Fraction(3, 2), Fraction(-3, 2)),
                          states.with_spin(states.build_orbital('2Pz'), DOWN),
                          states.build_pi_bond('single', 1.0),
                          mixed,
                          states.build_lithium()] + helium

    def random_plan(self, rng, signature):
        directives = []
        for factor in signature:
            choice = rng.randint(4)
            if factor.is_spin:
                angle = SphereAngle(rng.uniform(0, np.pi / 2), rng.uniform(0, np.pi))
                directives.append([Trace(), EqualAngle(0), EqualAngle(1), angle][choice])
            else:
                q, p = rng.uniform(-2, 2, 2)
                directives.append([Trace(), Fixed(q, p), PositionMarginal(q), MomentumMarginal(p)][choice])
        return ReductionPlan(directives)

    def test_random_cases(self):
        """1000 random plans over hydrogen, helium, lithium and bond states"""
        rng = np.random.RandomState(20)
        for case in range(1000):
            rho = self.candidates[case % len(self.candidates)]
            plan = self.random_plan(rng, rho.signature)
            angles = {g: (rng.uniform(0, np.pi / 2), rng.uniform(0, np.pi)) for g in (0, 1)}
            value = engine.evaluate(rho, plan, angles)
            reference = oracles.dense_expectation(rho, plan, angles)
            self.assertLess(abs(value.value - reference.real), 1e-8, (case, plan))
            self.assertLess(abs(reference.imag), 1e-8, (case, plan))
            self.assertLess(value.residual, 1e-8, (case, plan))


class TestPhaseSpace(unittest.TestCase):
    """A suite of test cases for the phase-space integrals"""

    def test_normalization(self):
        """|5/2, 1/2> integrates to one over all eight dimensions"""
        psi = states.build_jm_state(Fraction(5, 2), Fraction(1, 2))
        total = oracles.phase_space_integral(psi)
        self.assertLess(abs(total - 1), 1e-3)

    def test_displaced_normalization(self):
        """A displaced single bond integrates to one"""
        total = oracles.phase_space_integral(states.build_pi_bond('single', 1.0))
        self.assertLess(abs(total - 1), 1e-6)

    def test_traciality(self):
        """int W W' with 2 pi per mode gives Tr[rho rho']"""
        a = states.with_spin(states.build_orbital('2Pz'), UP)
        b = states.with_spin(states.build_orbital('1S'), UP)
        self.assertLess(abs(oracles.phase_space_overlap(a, a) - 1), 1e-6)
        self.assertLess(abs(oracles.phase_space_overlap(a, b)), 1e-6)

    def test_spin_traciality(self):
        """On a single spin int W W' dmu is Tr[rho rho']"""
        up = states.build_reference_spin_state('a')
        plus = states.build_reference_spin_state('b')
        self.assertAlmostEqual(oracles.phase_space_overlap(up, plus), 0.5, places=12)


if __name__ == '__main__':
    unittest.main()
