# -*- coding: UTF-8 -*-
"""
Per-factor displaced parity kernels.

Every factor of the composite system contributes one of the functions in this
module to a Wigner function evaluation: spin-1/2 factors contribute the
generalized spin parity ``U pi U^dagger`` with ``pi = (1 + sqrt(3) sigma_z) / 2``,
and oscillator modes contribute displaced Fock matrix elements, Hermite
functions, or the position/momentum marginals built from them.

Units are hbar = m = omega = 1 and ``alpha = (q + i p) / sqrt(2)``. All phase
space coordinates may be numpy arrays; results broadcast over them.
"""
from collections import namedtuple

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from .constants import const

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

# theta in [0, pi/2], phi in [0, pi); Phi cancels so it has no field
SpinAngle = namedtuple('SpinAngle', 'theta phi')
PhasePoint = namedtuple('PhasePoint', 'q p')


class ModeEntry(namedtuple('ModeEntry', 'displacement fock')):
    """One oscillator factor of a product ket: the displaced Fock state
    ``D(displacement)|fock>``.
    """
    __slots__ = ()

    def __new__(cls, displacement=0j, fock=0):
        fock = int(fock)
        if fock < 0:
            raise ValueError('Fock index must be non-negative, got {}'.format(fock))
        return super(ModeEntry, cls).__new__(cls, complex(displacement), fock)

    @property
    def displaced(self):
        return self.displacement != 0


# Mode directives of a reduction plan
Trace = namedtuple('Trace', '')
Fixed = namedtuple('Fixed', 'q p')
PositionMarginal = namedtuple('PositionMarginal', 'q')
MomentumMarginal = namedtuple('MomentumMarginal', 'p')

MODE_DIRECTIVES = (Trace, Fixed, PositionMarginal, MomentumMarginal)


def _finite(value, name):
    value = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(value)):
        raise ValueError('{} must be finite, got {}'.format(name, value))
    return value


def _check_index(n):
    if int(n) != n or n < 0:
        raise ValueError('Fock index must be a non-negative integer, got {}'.format(n))
    if n > const.MAX_FOCK:
        raise ValueError('Fock index {} exceeds the supported maximum of {}'.format(n, const.MAX_FOCK))
    return int(n)


def bloch_direction(theta, phi):
    """Unit vector the spin kernel at (theta, phi) is polarized along.

    :Returns: numpy.ndarray, shape ``(..., 3)``
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack([-np.sin(2 * theta) * np.cos(2 * phi),
                     np.sin(2 * theta) * np.sin(2 * phi),
                     np.cos(2 * theta)], axis=-1)


def spin_kernel(angle):
    """Generalized displaced spin parity ``U(theta, phi) pi U(theta, phi)^dagger``.

    Equal to ``(I + sqrt(3) n.sigma) / 2`` where ``n`` is :func:`bloch_direction`;
    at theta = 0 the kernel is ``pi`` itself, so spin up points up.

    :Returns: numpy.ndarray, shape ``(..., 2, 2)``

    :param angle: Kernel angles; either may be an array
    :type angle: SpinAngle
    """
    theta = _finite(angle[0], 'theta')
    phi = _finite(angle[1], 'phi')
    tol = 1e-12
    if np.any(theta < -tol) or np.any(theta > np.pi / 2 + tol):
        raise ValueError('theta must lie in [0, pi/2]')
    if np.any(phi < -tol) or np.any(phi >= np.pi - tol):
        raise ValueError('phi must lie in [0, pi)')
    n = bloch_direction(theta, phi)
    nx, ny, nz = n[..., 0], n[..., 1], n[..., 2]
    kernel = np.empty(theta.shape + (2, 2), dtype=complex)
    kernel[..., 0, 0] = 0.5 * (1 + SQRT3 * nz)
    kernel[..., 1, 1] = 0.5 * (1 - SQRT3 * nz)
    kernel[..., 0, 1] = 0.5 * SQRT3 * (nx - 1j * ny)
    kernel[..., 1, 0] = 0.5 * SQRT3 * (nx + 1j * ny)
    return kernel


def hermite_functions(nmax, q):
    """Normalized oscillator eigenfunctions ``psi_0 .. psi_nmax`` at ``q``.

    Uses the upward recurrence on the normalized functions
    ``psi_{k+1} = sqrt(2/(k+1)) q psi_k - sqrt(k/(k+1)) psi_{k-1}``, which never
    forms ``H_n`` or ``n!`` and so stays finite for every supported order.

    :Returns: numpy.ndarray, shape ``(nmax + 1,) + q.shape``
    """
    nmax = _check_index(nmax)
    q = np.asarray(q, dtype=float)
    table = np.empty((nmax + 1,) + q.shape)
    table[0] = np.pi ** -0.25 * np.exp(-0.5 * q * q)
    if nmax >= 1:
        table[1] = SQRT2 * q * table[0]
    for k in range(1, nmax):
        table[k + 1] = np.sqrt(2.0 / (k + 1)) * q * table[k] - np.sqrt(k / (k + 1.0)) * table[k - 1]
    return table


def hermite_wavefunction(n, q, representation='position'):
    """Oscillator eigenfunction ``psi_n`` in the position or momentum representation.

    The momentum representation follows ``psi(p) = (2 pi)^-1/2 int psi(q) e^{-iqp} dq``
    which gives ``(-i)^n psi_n(p)``.

    :Returns: numpy.ndarray (complex)

    :param n: Fock index, at most ``const.MAX_FOCK``
    :type n: Integer

    :param q: Position (or momentum) at which to evaluate
    :type q: Float or numpy.ndarray

    :param representation: ``position`` or ``momentum``
    :type representation: String
    """
    n = _check_index(n)
    value = hermite_functions(n, _finite(q, 'q'))[n]
    if representation == 'position':
        return value.astype(complex)
    elif representation == 'momentum':
        return (-1j) ** n * value
    raise ValueError('Unknown representation {}'.format(representation))


def displaced_fock_element(n, xi, m):
    """Matrix element ``<n|D(xi)|m>`` of ``D(xi) = exp(xi a^dagger - xi^* a)``.

    Closed form in associated Laguerre polynomials; the factorial ratio and the
    power of ``|xi|`` are combined in log space so large orders do not overflow.

    :Returns: complex or numpy.ndarray
    """
    n = _check_index(n)
    m = _check_index(m)
    xi = np.asarray(xi, dtype=complex)
    x = np.abs(xi) ** 2
    if n >= m:
        k, low, base = n - m, m, xi
    else:
        k, low, base = m - n, n, -np.conj(xi)
    log_scale = 0.5 * (gammaln(low + 1) - gammaln(low + k + 1)) - 0.5 * x
    if k == 0:
        power = 1.0
    else:
        with np.errstate(divide='ignore'):
            log_scale = log_scale + k * np.log(np.abs(base))
        power = np.exp(1j * k * np.angle(base))
    value = np.exp(log_scale) * power * eval_genlaguerre(low, k, x)
    return value[()] if value.ndim == 0 else value


def mode_overlap(ket, bra):
    """Inner product ``<bra|ket>`` of two displaced Fock states.

    ``<n|D(gamma)^dagger D(beta)|m> = e^{i Im(gamma^* beta)} <n|D(beta - gamma)|m>``

    :Returns: complex
    """
    beta, gamma = ket.displacement, bra.displacement
    phase = np.exp(1j * np.imag(np.conj(gamma) * beta))
    return phase * displaced_fock_element(bra.fock, beta - gamma, ket.fock)


def displaced_wavefunction(entry, x, representation='position'):
    """Wavefunction of ``D(xi)|n>`` in position or momentum representation.

    With ``q0 = sqrt(2) Re xi`` and ``p0 = sqrt(2) Im xi`` the state is
    ``e^{-i q0 p0/2} e^{i p0 x} psi_n(x - q0)`` in position and
    ``e^{i q0 p0/2} e^{-i k q0} psi_n(k - p0)`` in momentum.

    :Returns: numpy.ndarray (complex)
    """
    x = _finite(x, 'coordinate')
    q0 = SQRT2 * entry.displacement.real
    p0 = SQRT2 * entry.displacement.imag
    if representation == 'position':
        envelope = np.exp(-0.5j * q0 * p0 + 1j * p0 * x)
        return envelope * hermite_wavefunction(entry.fock, x - q0, 'position')
    elif representation == 'momentum':
        envelope = np.exp(0.5j * q0 * p0 - 1j * x * q0)
        return envelope * hermite_wavefunction(entry.fock, x - p0, 'momentum')
    raise ValueError('Unknown representation {}'.format(representation))


def mode_kernel(ket, bra, directive):
    """Contribution of one oscillator factor of ``|ket><bra|`` to a Wigner functional.

    * ``Trace``: ``<bra|ket>``
    * ``Fixed(q, p)``: the Wigner kernel, normalized so a density operator integrates
      to one over ``dq dp``. For ``ket = D(beta)|m>``, ``bra = D(gamma)|n>``:
      ``(1/pi) (-1)^m e^{i[Im(a^* beta) + Im(gamma^* a) + Im((a - gamma)(a - beta)^*)]}
      <n|D(2a - beta - gamma)|m>``
    * ``PositionMarginal(q)`` / ``MomentumMarginal(p)``: ``phi_ket conj(phi_bra)``

    :Returns: complex or numpy.ndarray

    :param ket: Mode entry of the ket
    :type ket: ModeEntry

    :param bra: Mode entry of the bra
    :type bra: ModeEntry

    :param directive: One of Trace, Fixed, PositionMarginal, MomentumMarginal
    :type directive: namedtuple
    """
    if isinstance(directive, Trace):
        return mode_overlap(ket, bra)
    elif isinstance(directive, Fixed):
        q = _finite(directive.q, 'q')
        p = _finite(directive.p, 'p')
        alpha = (q + 1j * p) / SQRT2
        beta, gamma = ket.displacement, bra.displacement
        phase = (np.imag(np.conj(alpha) * beta)
                 + np.imag(np.conj(gamma) * alpha)
                 + np.imag((alpha - gamma) * np.conj(alpha - beta)))
        sign = -1.0 if ket.fock % 2 else 1.0
        element = displaced_fock_element(bra.fock, 2 * alpha - beta - gamma, ket.fock)
        return sign / np.pi * np.exp(1j * phase) * element
    elif isinstance(directive, PositionMarginal):
        return (displaced_wavefunction(ket, directive.q, 'position')
                * np.conj(displaced_wavefunction(bra, directive.q, 'position')))
    elif isinstance(directive, MomentumMarginal):
        return (displaced_wavefunction(ket, directive.p, 'momentum')
                * np.conj(displaced_wavefunction(bra, directive.p, 'momentum')))
    raise ValueError('Not a mode directive: {!r}'.format(directive))
