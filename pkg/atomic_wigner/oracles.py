# -*- coding: UTF-8 -*-
"""
Brute-force reference computations.

Everything here recomputes something the engine does, by a route that shares
as little as possible with it: numerical integral transforms instead of
Laguerre closed forms, power series instead of displaced Fock elements, and
explicit dense matrices instead of sparse term contraction. They are slow on
purpose and are what the tests (and anyone re-checking the phase conventions
of :func:`atomic_wigner.kernels.mode_kernel`) measure the engine against.
"""
from functools import reduce
from collections import namedtuple, OrderedDict

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.linalg import expm
from scipy.special import eval_hermite, gammaln

from .constants import const
from .kernels import (Trace, Fixed, PositionMarginal, MomentumMarginal, SpinAngle,
                      SIGMA_Y, SIGMA_Z, IDENTITY2, SQRT3, mode_kernel, spin_kernel)
from .engine import SphereAngle, ReductionPlan, PlanError
from .states import StateVector
from .std_logger import get_logger

logger = get_logger(__name__, loglevel=const.LOG_LEVEL)

SeriesResult = namedtuple('SeriesResult', 'value tail_bound flagged')


class QuadratureSpec(namedtuple('QuadratureSpec', 'nodes theta_nodes phi_nodes extent')):
    """Node counts for phase-space (Gauss-Hermite) and sphere (Gauss-Legendre) rules,
    and the half-width of finite integral transforms
    """
    __slots__ = ()

    def __new__(cls, nodes=None, theta_nodes=None, phi_nodes=None, extent=12.0):
        nodes = const.GAUSS_HERMITE_NODES if nodes is None else nodes
        theta_nodes = const.SPIN_THETA_NODES if theta_nodes is None else theta_nodes
        phi_nodes = const.SPIN_PHI_NODES if phi_nodes is None else phi_nodes
        if min(nodes, theta_nodes, phi_nodes) < 16:
            raise ValueError('Quadrature rules need at least 16 nodes')
        if extent <= 0:
            raise ValueError('Integration extent must be positive')
        return super(QuadratureSpec, cls).__new__(cls, nodes, theta_nodes, phi_nodes, extent)


class DimensionError(ValueError):
    """The dense representation would exceed the supported size"""
    pass


MAX_DENSE_DIMENSION = 4096
MAX_DENSE_VECTOR = 2 ** 20


def gauss_hermite_rule(nodes):
    """Nodes and weights for plain ``int f(x) dx`` over the real line

    The Gauss-Hermite weight ``e^{-x^2}`` is folded back into the weights, so the
    rule is exact for ``e^{-x^2}`` times a polynomial of degree < 2 * nodes.

    :Returns: Tuple of numpy.ndarray
    """
    x, w = hermgauss(nodes)
    return x, w * np.exp(x * x)


def sphere_rule(theta_nodes, phi_nodes):
    """Product Gauss-Legendre rule for ``dmu = (2/pi) sin(2 theta) dtheta dphi`` on
    ``[0, pi/2] x [0, pi)``

    :Returns: Tuple of flat (theta, phi, weight) arrays
    """
    t, wt = leggauss(theta_nodes)
    f, wf = leggauss(phi_nodes)
    theta = 0.25 * np.pi * (t + 1)
    phi = 0.5 * np.pi * (f + 1)
    wt = 0.25 * np.pi * wt
    wf = 0.5 * np.pi * wf
    weight = (2 / np.pi) * np.outer(np.sin(2 * theta) * wt, wf)
    theta, phi = np.meshgrid(theta, phi, indexing='ij')
    return theta.ravel(), phi.ravel(), weight.ravel()


def _psi(n, x):
    """Oscillator eigenfunction straight from the Hermite polynomial"""
    log_norm = -0.5 * (n * np.log(2) + gammaln(n + 1) + 0.5 * np.log(np.pi))
    return np.exp(log_norm - 0.5 * x * x) * eval_hermite(n, x)


def wigner_quadrature(m, n, q, p, spec=None):
    """Wigner function of ``|m><n|`` at ``(q, p)`` by direct integration of
    ``(1/pi) int psi_m(q + y) psi_n(q - y) e^{-2ipy} dy``

    :Returns: complex
    """
    if not (0 <= m <= 12 and 0 <= n <= 12):
        raise ValueError('wigner_quadrature supports Fock indices up to 12')
    extent = (spec or QuadratureSpec()).extent

    def integrand(y, trig):
        return _psi(m, q + y) * _psi(n, q - y) * trig(2 * p * y)

    options = dict(epsabs=1e-14, epsrel=1e-12, limit=400)
    real = quad(integrand, -extent, extent, args=(np.cos,), **options)[0]
    imag = -quad(integrand, -extent, extent, args=(np.sin,), **options)[0]
    return complex(real, imag) / np.pi


def _displaced_psi(entry, x):
    q0 = np.sqrt(2) * entry.displacement.real
    p0 = np.sqrt(2) * entry.displacement.imag
    return np.exp(1j * (p0 * x - 0.5 * q0 * p0)) * _psi(entry.fock, x - q0)


def displaced_wigner_quadrature(ket, bra, q, p, spec=None):
    """Wigner function of ``D(beta)|m><n|D(gamma)^dagger`` at ``(q, p)`` by direct
    integration of ``(1/pi) int phi_ket(q + y) phi_bra(q - y)^* e^{-2ipy} dy``

    :Returns: complex
    """
    if not (0 <= ket.fock <= 12 and 0 <= bra.fock <= 12):
        raise ValueError('displaced_wigner_quadrature supports Fock indices up to 12')
    shift = 2 * max(abs(ket.displacement), abs(bra.displacement))
    extent = (spec or QuadratureSpec()).extent + shift

    def integrand(y, part):
        value = _displaced_psi(ket, q + y) * np.conj(_displaced_psi(bra, q - y)) * np.exp(-2j * p * y)
        return part(value)

    options = dict(epsabs=1e-14, epsrel=1e-12, limit=400)
    real = quad(integrand, -extent, extent, args=(np.real,), **options)[0]
    imag = quad(integrand, -extent, extent, args=(np.imag,), **options)[0]
    return complex(real, imag) / np.pi


def displaced_series(n, xi, m, terms=64):
    """``<n|exp(xi a^dagger - xi^* a)|m>`` from the truncated exponential series

    The tail bound uses ``||A^k |m>|| <= prod_j 2|xi| sqrt(m + j)``; results whose
    bound exceeds 1e-10 are flagged.

    :Returns: SeriesResult
    """
    if terms < 32:
        raise ValueError('Series needs at least 32 terms, got {}'.format(terms))
    xi = complex(xi)
    size = max(n, m) + terms + 2
    roots = np.sqrt(np.arange(size))
    term = np.zeros(size, dtype=complex)
    term[m] = 1
    value = term[n]
    for k in range(1, terms):
        raised = np.zeros(size, dtype=complex)
        raised[1:] = xi * roots[1:] * term[:-1]
        lowered = np.zeros(size, dtype=complex)
        lowered[:-1] = np.conj(xi) * roots[1:] * term[1:]
        term = (raised - lowered) / k
        value += term[n]
    if xi == 0:
        bound = 0.0
    else:
        log_bound = sum(np.log(2 * abs(xi) * np.sqrt(m + j)) for j in range(1, terms + 1)) - gammaln(terms + 1)
        ratio = 2 * abs(xi) * np.sqrt(m + terms + 1) / (terms + 1)
        bound = float(np.exp(log_bound) / (1 - ratio)) if ratio < 1 else float('inf')
    return SeriesResult(value, bound, bound > 1e-10)


def euler_spin_kernel(theta, phi, third=0.0):
    """``U pi U^dagger`` with ``U = exp(i sz phi) exp(i sy theta) exp(i sz Phi)``, by matrix exponentials

    :Returns: numpy.ndarray, shape ``(2, 2)``
    """
    parity = 0.5 * (IDENTITY2 + SQRT3 * SIGMA_Z)
    rotation = expm(1j * SIGMA_Z * phi) @ expm(1j * SIGMA_Y * theta) @ expm(1j * SIGMA_Z * third)
    return rotation @ parity @ rotation.conj().T


def _mode_basis(rho, index, cutoff):
    entries = set()
    for _, ket, bra in rho.terms:
        entries.update((ket[index], bra[index]))
    size = max(e.fock for e in entries) + 1
    if any(e.displaced for e in entries):
        size = max(size, cutoff)
    return size


def _entry_vector(entry, size):
    vector = np.zeros(size, dtype=complex)
    if entry in (0, 1):
        vector[entry] = 1
    elif not entry.displaced:
        vector[entry.fock] = 1
    else:
        for k in range(size):
            vector[k] = displaced_series(k, entry.displacement, entry.fock).value
    return vector


def _wigner_matrix(size, q, p, nodes=120):
    """``M[a, b]``, the Wigner function of ``|b><a|`` at ``(q, p)``, from one
    Gauss-Hermite sum per entry"""
    y, w = gauss_hermite_rule(nodes)
    plus = np.array([_psi(n, q + y) for n in range(size)])
    minus = np.array([_psi(n, q - y) for n in range(size)])
    return (minus * (w * np.exp(-2j * p * y))) @ plus.T / np.pi


def _mode_matrix(directive, size):
    if isinstance(directive, Trace):
        return np.eye(size, dtype=complex)
    elif isinstance(directive, Fixed):
        return _wigner_matrix(size, directive.q, directive.p)
    elif isinstance(directive, PositionMarginal):
        psi = np.array([_psi(a, directive.q) for a in range(size)], dtype=complex)
        return np.outer(psi.conj(), psi)
    elif isinstance(directive, MomentumMarginal):
        psi = np.array([(-1j) ** a * _psi(a, directive.p) for a in range(size)])
        return np.outer(psi.conj(), psi)
    raise PlanError('Not a mode directive: {!r}'.format(directive))


def _spin_matrix(directive, angles):
    if isinstance(directive, Trace):
        return IDENTITY2.copy()
    elif isinstance(directive, SphereAngle):
        return euler_spin_kernel(directive.theta, directive.phi, third=0.37)
    try:
        theta, phi = angles[directive.group]
    except (KeyError, TypeError):
        raise PlanError('No angles supplied for equal-angle group {!r}'.format(directive.group))
    return euler_spin_kernel(theta, phi, third=0.37)


def _dense_factors(rho, plan, angles, cutoff):
    """Basis size and explicit kernel matrix of every factor"""
    plan = ReductionPlan(plan)
    plan.check(rho.signature)
    sizes = [2 if f.is_spin else _mode_basis(rho, i, cutoff) for i, f in enumerate(rho.signature)]
    matrices = []
    for factor, directive, size in zip(rho.signature, plan, sizes):
        if factor.is_spin:
            matrices.append(_spin_matrix(directive, angles))
        else:
            matrices.append(_mode_matrix(directive, size))
    return sizes, matrices


def _ket_vector(ket, sizes):
    return reduce(np.kron, [_entry_vector(e, s) for e, s in zip(ket, sizes)])


def dense_contract(rho, plan, angles=None, cutoff=24):
    """``Tr[rho K]`` with ``rho`` and every factor of ``K`` as explicit matrices

    :Returns: complex

    :Raises: DimensionError, PlanError
    """
    rho = rho.density() if isinstance(rho, StateVector) else rho
    sizes, matrices = _dense_factors(rho, plan, angles, cutoff)
    dimension = int(np.prod(sizes))
    if dimension > MAX_DENSE_DIMENSION:
        raise DimensionError('Dense dimension {} exceeds {}'.format(dimension, MAX_DENSE_DIMENSION))
    dense = np.zeros((dimension, dimension), dtype=complex)
    for coeff, ket, bra in rho.terms:
        dense += coeff * np.outer(_ket_vector(ket, sizes), _ket_vector(bra, sizes).conj())
    count = len(sizes)
    tensor = dense.reshape(tuple(sizes) + tuple(sizes))
    for f, matrix in enumerate(matrices):
        tensor = np.moveaxis(np.tensordot(tensor, matrix, axes=([count + f], [0])), -1, count + f)
    return complex(np.trace(tensor.reshape(dimension, dimension)))


def dense_expectation(rho, plan, angles=None, cutoff=24):
    """``Tr[rho K]`` from explicit dense vectors.

    Every ket is expanded in the truncated product basis and ``K`` is applied to
    it one factor at a time, so only vectors of the full dimension are ever
    stored; states too large for :func:`dense_contract` (lithium) still get a
    dense reference. A StateVector becomes a single vector ``psi`` and the
    result is ``<psi|K|psi>``.

    :Returns: complex

    :Raises: DimensionError, PlanError
    """
    psi = rho if isinstance(rho, StateVector) else None
    rho = rho.density() if psi is not None else rho
    sizes, matrices = _dense_factors(rho, plan, angles, cutoff)
    dimension = int(np.prod(sizes))
    if dimension > MAX_DENSE_VECTOR:
        raise DimensionError('Dense vector length {} exceeds {}'.format(dimension, MAX_DENSE_VECTOR))
    vectors = {}

    def expand(ket):
        if ket not in vectors:
            vectors[ket] = _ket_vector(ket, sizes)
        return vectors[ket]

    if psi is not None:
        vector = sum(amp * expand(ket) for amp, ket in psi.terms)
        pairs = [(vector, vector)]
    else:
        # sum_bra coeff <bra| grouped per ket
        bra_sides = OrderedDict()
        for coeff, ket, bra in rho.terms:
            bra_sides[ket] = bra_sides.get(ket, 0) + np.conj(coeff) * expand(bra)
        pairs = [(bra_side, expand(ket)) for ket, bra_side in bra_sides.items()]
    total = 0j
    for bra_side, ket_side in pairs:
        tensor = ket_side.reshape(sizes)
        for f, matrix in enumerate(matrices):
            tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [f])), 0, f)
        total += np.vdot(bra_side, tensor.ravel())
    return complex(total)


def _factor_tables(rho, spec):
    """Per factor: the kernel of every distinct (ket, bra) entry pair on the quadrature grid"""
    x, wx = gauss_hermite_rule(spec.nodes)
    q, p = np.meshgrid(x, x, indexing='ij')
    phase_weight = np.outer(wx, wx)
    theta, phi, sphere_weight = sphere_rule(spec.theta_nodes, spec.phi_nodes)
    deltas = spin_kernel(SpinAngle(theta, phi))
    tables = []
    for index, factor in enumerate(rho.signature):
        table = OrderedDict()
        for _, ket, bra in rho.terms:
            key = (ket[index], bra[index])
            if key in table:
                continue
            if factor.is_spin:
                table[key] = deltas[:, bra[index], ket[index]]
            else:
                table[key] = mode_kernel(ket[index], bra[index], Fixed(q, p))
        tables.append(table)
    return tables, phase_weight, sphere_weight


def phase_space_integral(rho, spec=None):
    """Integral of the full Wigner function over every position, momentum and spin angle

    Each term of ``rho`` factors over the signature, so the integral is the sum
    over terms of products of one- and two-dimensional rules.

    :Returns: complex
    """
    spec = spec or QuadratureSpec()
    rho = rho.density() if isinstance(rho, StateVector) else rho
    tables, phase_weight, sphere_weight = _factor_tables(rho, spec)
    total = 0j
    for coeff, ket, bra in rho.terms:
        value = coeff
        for index, factor in enumerate(rho.signature):
            values = tables[index][(ket[index], bra[index])]
            value *= np.sum(values * (sphere_weight if factor.is_spin else phase_weight))
        total += value
    return total


def phase_space_overlap(rho1, rho2, spec=None):
    """``int W1 W2`` with measure ``prod_modes 2 pi dq dp  prod_spins dmu``

    With that measure the integral equals ``Tr[rho1 rho2]``.

    :Returns: complex
    """
    spec = spec or QuadratureSpec()
    rho1 = rho1.density() if isinstance(rho1, StateVector) else rho1
    rho2 = rho2.density() if isinstance(rho2, StateVector) else rho2
    if rho1.signature != rho2.signature:
        raise PlanError('Signatures differ')
    tables1, phase_weight, sphere_weight = _factor_tables(rho1, spec)
    tables2, _, _ = _factor_tables(rho2, spec)
    cache = {}
    total = 0j
    for c1, k1, b1 in rho1.terms:
        for c2, k2, b2 in rho2.terms:
            value = c1 * c2
            for index, factor in enumerate(rho1.signature):
                key = (index, k1[index], b1[index], k2[index], b2[index])
                if key not in cache:
                    first = tables1[index][(k1[index], b1[index])]
                    second = tables2[index][(k2[index], b2[index])]
                    if factor.is_spin:
                        cache[key] = np.sum(first * second * sphere_weight)
                    else:
                        cache[key] = 2 * np.pi * np.sum(first * second * phase_weight)
                value *= cache[key]
                if value == 0:
                    break
            total += value
    return total
