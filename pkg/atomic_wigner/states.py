# -*- coding: UTF-8 -*-
"""
Quantum states of model atoms and pseudo-molecules.

A state lives on a :class:`SystemSignature`, an ordered list of factors: three
oscillator modes (x, y, z) and one spin-1/2 per electron, electron-major. Kets
are tuples with one entry per factor, a :class:`~atomic_wigner.kernels.ModeEntry`
for a mode and ``UP``/``DOWN`` for a spin. States are sparse sums of such kets;
nothing here ever builds a dense vector.

Orbitals are eigenstates of the three dimensional harmonic oscillator written
as Fock kets ``|n_x n_y n_z>``.
"""
import itertools
from math import factorial
from fractions import Fraction
from collections import namedtuple, OrderedDict

import numpy as np

from .constants import const
from .kernels import ModeEntry, mode_overlap
from .schemas import STATE_SCHEMA, validate_input
from .std_logger import get_logger

logger = get_logger(__name__, loglevel=const.LOG_LEVEL)

UP = 0
DOWN = 1
AXES = ('x', 'y', 'z')
SPIN_NAMES = {UP: 'up', DOWN: 'down'}


class StateError(ValueError):
    """Raised for unknown labels or quantum numbers"""
    pass


class ZeroNormError(StateError):
    """Raised when a construction yields the zero vector"""
    pass


class Factor(namedtuple('Factor', 'kind electron axis')):
    """One tensor factor: ``mode`` (with an axis label) or ``spin`` (axis is None)"""
    __slots__ = ()

    @property
    def is_spin(self):
        return self.kind == 'spin'

    def __str__(self):
        if self.is_spin:
            return 's{}'.format(self.electron)
        return '{}{}'.format(self.axis, self.electron)


def mode_factor(axis, electron):
    return Factor('mode', electron, axis)


def spin_factor(electron):
    return Factor('spin', electron, None)


class SystemSignature(tuple):
    """Ordered, duplicate free tuple of :class:`Factor` entries"""

    def __new__(cls, factors):
        factors = tuple(factors)
        for factor in factors:
            if not isinstance(factor, Factor) or factor.kind not in ('mode', 'spin'):
                raise StateError('Not a signature factor: {!r}'.format(factor))
        if len(set(factors)) != len(factors):
            raise StateError('Signature factors must be unique: {}'.format([str(f) for f in factors]))
        return super(SystemSignature, cls).__new__(cls, factors)

    @property
    def electrons(self):
        seen = OrderedDict()
        for factor in self:
            seen[factor.electron] = True
        return tuple(seen)

    def mode_indices(self, electron):
        """Indices of the x, y and z modes of ``electron``, in axis order

        :Returns: Tuple
        """
        found = {f.axis: i for i, f in enumerate(self) if not f.is_spin and f.electron == electron}
        if not found:
            raise StateError('Electron {} has no modes in this signature'.format(electron))
        return tuple(found[axis] for axis in AXES if axis in found)

    def spin_index(self, electron):
        for i, factor in enumerate(self):
            if factor.is_spin and factor.electron == electron:
                return i
        raise StateError('Electron {} has no spin in this signature'.format(electron))

    def relabel(self, electron):
        """Copy of a single-electron signature with every factor moved to ``electron``"""
        return SystemSignature(f._replace(electron=electron) for f in self)

    def __add__(self, other):
        return SystemSignature(tuple(self) + tuple(other))

    def __repr__(self):
        return 'SystemSignature({})'.format(', '.join(str(f) for f in self))


def electron_signature(electron=1, spin=True, modes=True):
    factors = []
    if modes:
        factors.extend(mode_factor(axis, electron) for axis in AXES)
    if spin:
        factors.append(spin_factor(electron))
    return SystemSignature(factors)


class ProductKet(tuple):
    """One basis ket of the composite system, one entry per signature factor"""
    __slots__ = ()


def _check_ket(signature, ket):
    if len(ket) != len(signature):
        raise StateError('Ket has {} entries but the signature has {}'.format(len(ket), len(signature)))
    for factor, entry in zip(signature, ket):
        if factor.is_spin:
            if entry not in (UP, DOWN):
                raise StateError('Spin factor {} needs UP or DOWN, got {!r}'.format(factor, entry))
        elif not isinstance(entry, ModeEntry):
            raise StateError('Mode factor {} needs a ModeEntry, got {!r}'.format(factor, entry))
    return ProductKet(ket)


def ket_overlap(signature, bra, ket):
    """``<bra|ket>`` for two product kets over ``signature``

    :Returns: complex
    """
    value = 1.0 + 0j
    for factor, b, k in zip(signature, bra, ket):
        if factor.is_spin or not (b.displaced or k.displaced):
            if b != k:
                return 0j
        else:
            value *= mode_overlap(k, b)
            if value == 0:
                return 0j
    return value


class StateVector(object):
    """Sparse, immutable sum of ``amplitude * ket`` over a signature.

    Kets are pairwise distinct; repeated kets are merged on construction and
    terms that cancel exactly are dropped. Term order is the order of first
    appearance, so every derived quantity is computed in a fixed order.
    """
    def __init__(self, signature, terms):
        self.signature = SystemSignature(signature)
        merged = OrderedDict()
        for amplitude, ket in terms:
            ket = _check_ket(self.signature, ket)
            merged[ket] = merged.get(ket, 0j) + complex(amplitude)
        self._terms = tuple((amp, ket) for ket, amp in merged.items() if abs(amp) > 1e-15)

    @property
    def terms(self):
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __repr__(self):
        return 'StateVector({!r}, {} terms)'.format(self.signature, len(self._terms))

    def _require_same(self, other):
        if self.signature != other.signature:
            raise StateError('Signatures differ: {!r} vs {!r}'.format(self.signature, other.signature))

    def inner(self, other):
        """``<self|other>``, including overlaps of displaced kets

        :Returns: complex
        """
        self._require_same(other)
        total = 0j
        for a, bra in self._terms:
            for b, ket in other._terms:
                overlap = ket_overlap(self.signature, bra, ket)
                if overlap:
                    total += np.conj(a) * b * overlap
        return total

    def norm(self):
        return float(np.sqrt(max(self.inner(self).real, 0.0)))

    def normalized(self):
        """Copy scaled to unit norm

        :Returns: StateVector

        :Raises: ZeroNormError
        """
        norm = self.norm()
        if norm < 1e-10:
            raise ZeroNormError('State has zero norm')
        return self * (1.0 / norm)

    def amplitude(self, ket):
        for amp, k in self._terms:
            if k == ket:
                return amp
        return 0j

    def __mul__(self, scalar):
        return StateVector(self.signature, ((scalar * a, k) for a, k in self._terms))

    __rmul__ = __mul__

    def __add__(self, other):
        self._require_same(other)
        return StateVector(self.signature, self._terms + other._terms)

    def __sub__(self, other):
        return self + other * -1

    def tensor(self, other):
        """Tensor product; the result's signature is ``self`` then ``other``

        :Returns: StateVector
        """
        signature = self.signature + other.signature
        terms = ((a * b, tuple(k) + tuple(l)) for a, k in self._terms for b, l in other._terms)
        return StateVector(signature, terms)

    def relabel(self, electron):
        """Move a single-electron state onto ``electron``"""
        return StateVector(self.signature.relabel(electron), self._terms)

    def density(self):
        return DensityOperator.from_state(self)


class DensityOperator(object):
    """Sparse operator ``sum coeff |ket><bra|`` over a signature"""

    def __init__(self, signature, terms):
        self.signature = SystemSignature(signature)
        merged = OrderedDict()
        for coeff, ket, bra in terms:
            key = (_check_ket(self.signature, ket), _check_ket(self.signature, bra))
            merged[key] = merged.get(key, 0j) + complex(coeff)
        self._terms = tuple((c, k, b) for (k, b), c in merged.items() if abs(c) > 1e-15)

    @classmethod
    def from_state(cls, psi):
        """The pure state ``|psi><psi|``

        :Returns: DensityOperator
        """
        terms = [(a * np.conj(b), k, l) for a, k in psi.terms for b, l in psi.terms]
        return cls(psi.signature, terms)

    @classmethod
    def mixture(cls, weighted_states):
        """Convex combination ``sum w_i |psi_i><psi_i|``

        :Returns: DensityOperator

        :param weighted_states: Pairs of (weight, StateVector) over one signature
        :type weighted_states: List
        """
        weighted_states = list(weighted_states)
        if not weighted_states:
            raise StateError('A mixture needs at least one state')
        signature = weighted_states[0][1].signature
        terms = []
        for weight, psi in weighted_states:
            if weight < 0:
                raise StateError('Mixture weights must be non-negative')
            if psi.signature != signature:
                raise StateError('Mixed states must share one signature')
            terms.extend((weight * c, k, b) for c, k, b in cls.from_state(psi).terms)
        return cls(signature, terms)

    @property
    def terms(self):
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        return 'DensityOperator({!r}, {} terms)'.format(self.signature, len(self._terms))

    def trace(self):
        return sum((c * ket_overlap(self.signature, b, k) for c, k, b in self._terms), 0j)

    def hermitian_defect(self):
        """Largest ``|c(k, b) - conj(c(b, k))|`` over the term set"""
        lookup = {(k, b): c for c, k, b in self._terms}
        worst = 0.0
        for (k, b), c in lookup.items():
            worst = max(worst, abs(c - np.conj(lookup.get((b, k), 0j))))
        return worst


# Spin states of the reference panels, as lists of (amplitude, spins)
_R2 = 1 / np.sqrt(2)
REFERENCE_PANELS = OrderedDict([
    ('a', [(1, (UP,))]),
    ('b', [(_R2, (UP,)), (_R2, (DOWN,))]),
    ('c', [(1, (UP, UP))]),
    ('d', [(1, (UP, DOWN))]),
    ('e', [(_R2, (UP, DOWN)), (-_R2, (DOWN, UP))]),
    ('f', [(_R2, (UP, DOWN)), (_R2, (DOWN, UP))]),
    ('g', [(1, (UP, DOWN, UP))]),
    ('h', [(_R2, (UP, DOWN, UP)), (-_R2, (DOWN, UP, UP))]),
])


def spin_state(terms):
    """Spin-only state over electrons ``1..k``

    :Returns: StateVector

    :param terms: Pairs of (amplitude, tuple of UP/DOWN)
    :type terms: List
    """
    terms = list(terms)
    count = len(terms[0][1])
    signature = SystemSignature(spin_factor(e) for e in range(1, count + 1))
    return StateVector(signature, terms)


def build_reference_spin_state(panel):
    """The spin state of one reference panel, ``a`` through ``h``

    :Returns: StateVector

    :Raises: StateError
    """
    try:
        terms = REFERENCE_PANELS[panel]
    except KeyError:
        raise StateError('Unknown reference panel {!r}; choose from {}'.format(panel, ', '.join(REFERENCE_PANELS)))
    return spin_state(terms)


_R6 = 1 / np.sqrt(6)
_R3 = 1 / np.sqrt(3)
ORBITALS = OrderedDict([
    ('1S', [(1, (0, 0, 0))]),
    ('2S', [(_R3, (2, 0, 0)), (_R3, (0, 2, 0)), (_R3, (0, 0, 2))]),
    ('2Px', [(1, (1, 0, 0))]),
    ('2Py', [(1, (0, 1, 0))]),
    ('2Pz', [(1, (0, 0, 1))]),
    ('3Dxy', [(1, (1, 1, 0))]),
    ('3Dxz', [(1, (1, 0, 1))]),
    ('3Dyz', [(1, (0, 1, 1))]),
    ('3Dx2-y2', [(_R2, (2, 0, 0)), (-_R2, (0, 2, 0))]),
    ('3Dz2', [(2 * _R6, (0, 0, 2)), (-_R6, (2, 0, 0)), (-_R6, (0, 2, 0))]),
])


def fock_ket(nx, ny, nz, displacements=(0j, 0j, 0j)):
    return tuple(ModeEntry(xi, n) for xi, n in zip(displacements, (nx, ny, nz)))


def build_orbital(label, electron=1):
    """Model-atom orbital as a three mode state

    :Returns: StateVector

    :param label: One of ``ORBITALS``, i.e. ``3Dz2``
    :type label: String

    :Raises: StateError
    """
    try:
        terms = ORBITALS[label]
    except KeyError:
        raise StateError('Unknown orbital {!r}; choose from {}'.format(label, ', '.join(ORBITALS)))
    signature = electron_signature(electron, spin=False)
    return StateVector(signature, ((amp, fock_ket(*n)) for amp, n in terms))


def with_spin(orbital, spin):
    """Attach a definite spin to a spatial orbital of one electron

    :Returns: StateVector
    """
    electron = orbital.signature[0].electron
    return StateVector(orbital.signature + (spin_factor(electron),),
                       ((a, tuple(k) + (spin,)) for a, k in orbital.terms))


def _twice(value, name):
    doubled = 2 * Fraction(value).limit_denominator(8)
    if doubled.denominator != 1:
        raise StateError('{} must be an integer or half-integer, got {}'.format(name, value))
    return int(doubled)


def clebsch_gordan_ls(l, m_l, m_s, j, m):
    """``<l m_l; 1/2 m_s | j m>`` with Condon-Shortley phases.

    Selection-rule violations give zero rather than an error.

    :Returns: Float
    """
    two_l, two_ml, two_ms = 2 * int(l), _twice(m_l, 'm_l'), _twice(m_s, 'm_s')
    two_j, two_m = _twice(j, 'j'), _twice(m, 'm')
    if abs(two_ml) > two_l or abs(two_ms) != 1 or two_ml + two_ms != two_m:
        return 0.0
    ll1 = two_l + 1
    if two_j == two_l + 1:
        if two_ms > 0:
            return float(np.sqrt(0.5 * (ll1 + two_m) / ll1))
        return float(np.sqrt(0.5 * (ll1 - two_m) / ll1))
    elif two_j == two_l - 1 and two_l > 0:
        if two_ms > 0:
            return float(-np.sqrt(0.5 * (ll1 - two_m) / ll1))
        return float(np.sqrt(0.5 * (ll1 + two_m) / ll1))
    return 0.0


def d_orbital(m_l, electron=1):
    """The l = 2 orbital with ``L_z = m_l`` in the N = 2 oscillator shell.

    ``|+-1> = (d_xz +- i d_yz)/sqrt(2)`` and ``|+-2> = (d_x2-y2 +- i d_xy)/sqrt(2)``.
    The Condon-Shortley sign on odd positive ``m_l`` is dropped so that
    ``|5/2, 1/2>`` comes out with the positive coefficients it is usually quoted with.

    :Returns: StateVector
    """
    if m_l == 0:
        return build_orbital('3Dz2', electron)
    sign = 1 if m_l > 0 else -1
    if abs(m_l) == 1:
        real, imag = build_orbital('3Dxz', electron), build_orbital('3Dyz', electron)
    elif abs(m_l) == 2:
        real, imag = build_orbital('3Dx2-y2', electron), build_orbital('3Dxy', electron)
    else:
        raise StateError('m_l must be in -2..2, got {}'.format(m_l))
    return (real + imag * (sign * 1j)) * _R2


def build_jm_state(j, m, electron=1):
    """Spin-orbit coupled ``|j, m>`` of the l = 2 shell, three modes and one spin

    :Returns: StateVector

    :Raises: StateError
    """
    two_j, two_m = _twice(j, 'j'), _twice(m, 'm')
    if two_j not in (3, 5) or abs(two_m) > two_j or two_m % 2 != 1:
        raise StateError('Invalid (j, m) = ({}, {}) for the l = 2 shell'.format(j, m))
    psi = None
    for spin, two_ms in ((UP, 1), (DOWN, -1)):
        two_ml = two_m - two_ms
        if abs(two_ml) > 4:
            continue
        cg = clebsch_gordan_ls(2, Fraction(two_ml, 2), Fraction(two_ms, 2), Fraction(two_j, 2), Fraction(two_m, 2))
        if cg == 0:
            continue
        part = with_spin(d_orbital(two_ml // 2, electron), spin) * cg
        psi = part if psi is None else psi + part
    return psi.normalized()


def _permutation_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            target = perm[i]
            perm[i], perm[target] = perm[target], perm[i]
            sign = -sign
    return sign


def product_state(orbitals):
    """``orbitals[0](1) x orbitals[1](2) x ...`` from single-electron states

    :Returns: StateVector
    """
    psi = orbitals[0].relabel(1)
    for electron, orbital in enumerate(orbitals[1:], start=2):
        psi = psi.tensor(orbital.relabel(electron))
    return psi


def slater_determinant(spin_orbitals):
    """Antisymmetrized product of single-electron spin orbitals.

    ``(1/sqrt(N!)) sum_sigma sign(sigma) prod_i orbital_sigma(i)(i)``, normalized
    afterwards so non-orthogonal (displaced) orbitals are fine.

    :Returns: StateVector

    :param spin_orbitals: Up to four single-electron states over one signature
    :type spin_orbitals: List

    :Raises: ZeroNormError, StateError
    """
    spin_orbitals = list(spin_orbitals)
    count = len(spin_orbitals)
    if not 1 <= count <= 4:
        raise StateError('Slater determinants take 1 to 4 orbitals, got {}'.format(count))
    first = spin_orbitals[0].signature
    if len(first.electrons) != 1 or any(o.signature != first for o in spin_orbitals):
        raise StateError('Spin orbitals must share one single-electron signature')
    signature = SystemSignature(())
    for electron in range(1, count + 1):
        signature = signature + first.relabel(electron)
    scale = 1 / np.sqrt(factorial(count))
    terms = []
    for perm in itertools.permutations(range(count)):
        sign = _permutation_sign(perm) * scale
        for combo in itertools.product(*(spin_orbitals[perm[i]].terms for i in range(count))):
            amplitude = sign
            ket = ()
            for amp, part in combo:
                amplitude *= amp
                ket += tuple(part)
            terms.append((amplitude, ket))
    try:
        return StateVector(signature, terms).normalized()
    except ZeroNormError:
        raise ZeroNormError('Spin orbitals are linearly dependent; the determinant vanishes')


def _spin_spatial(spatial, spins):
    """``sum_a sum_b c_a d_b prod_i orbital_a,i(i) spin_b,i(i)`` for two electrons"""
    psi = None
    for c, orbitals in spatial:
        for d, pattern in spins:
            part = product_state([with_spin(o, s) for o, s in zip(orbitals, pattern)]) * (c * d)
            psi = part if psi is None else psi + part
    return psi.normalized()


HELIUM_STATES = ('ground', 'singlet1', 'triplet_m1', 'triplet_m0', 'triplet_m-1')


def build_helium(state):
    """Two-electron model helium: ground, first excited singlet, or a triplet

    :Returns: StateVector

    :Raises: StateError
    """
    s1, s2 = build_orbital('1S'), build_orbital('2S')
    singlet = [(_R2, (UP, DOWN)), (-_R2, (DOWN, UP))]
    symmetric = [(_R2, (s1, s2)), (_R2, (s2, s1))]
    antisymmetric = [(_R2, (s1, s2)), (-_R2, (s2, s1))]
    if state == 'ground':
        return slater_determinant([with_spin(s1, UP), with_spin(s1, DOWN)])
    elif state == 'singlet1':
        return _spin_spatial(symmetric, singlet)
    elif state == 'triplet_m1':
        return _spin_spatial(antisymmetric, [(1, (UP, UP))])
    elif state == 'triplet_m0':
        return _spin_spatial(antisymmetric, [(_R2, (UP, DOWN)), (_R2, (DOWN, UP))])
    elif state == 'triplet_m-1':
        return _spin_spatial(antisymmetric, [(1, (DOWN, DOWN))])
    raise StateError('Unknown helium state {!r}; choose from {}'.format(state, ', '.join(HELIUM_STATES)))


def build_lithium():
    """The single Slater determinant of ``1S up, 1S down, 2S up``

    :Returns: StateVector
    """
    s1, s2 = build_orbital('1S'), build_orbital('2S')
    return slater_determinant([with_spin(s1, UP), with_spin(s1, DOWN), with_spin(s2, UP)])


def bonding_orbital(separation, electron=1):
    """LCAO bonding orbital of two p_z lobes centered at x = +-separation

    :Returns: StateVector

    :Raises: StateError
    """
    separation = float(separation)
    if not np.isfinite(separation) or separation <= 0:
        raise ZeroNormError('Bond separation must be positive and finite, got {}'.format(separation))
    xi = separation / np.sqrt(2)
    signature = electron_signature(electron, spin=False)
    lobes = [(1, fock_ket(0, 0, 1, displacements=(xi, 0j, 0j))),
             (1, fock_ket(0, 0, 1, displacements=(-xi, 0j, 0j)))]
    return StateVector(signature, lobes).normalized()


def build_pi_bond(kind, separation):
    """Single (one electron, spin up) or double (two electrons, spin singlet) pi bond

    :Returns: StateVector

    :Raises: StateError
    """
    bond = bonding_orbital(separation)
    if kind == 'single':
        return with_spin(bond, UP)
    elif kind == 'double':
        return slater_determinant([with_spin(bond, UP), with_spin(bond, DOWN)])
    raise StateError('Unknown bond kind {!r}; choose single or double'.format(kind))


@validate_input(STATE_SCHEMA)
def state_from_document(document):
    """Build a normalized StateVector from a state-file document

    :Returns: StateVector

    :Raises: DocumentError, StateError
    """
    factors = []
    for item in document['signature']:
        if item['kind'] == 'spin':
            factors.append(spin_factor(item['electron']))
        else:
            factors.append(mode_factor(item['axis'], item['electron']))
    signature = SystemSignature(factors)
    terms = []
    for term in document['terms']:
        ket = []
        for factor, entry in zip(signature, term['ket']):
            if factor.is_spin:
                if entry not in ('up', 'down'):
                    raise StateError('Spin factor {} needs "up" or "down"'.format(factor))
                ket.append(UP if entry == 'up' else DOWN)
            else:
                if not isinstance(entry, dict):
                    raise StateError('Mode factor {} needs a {{"fock": n}} entry'.format(factor))
                re, im = entry.get('displacement', [0.0, 0.0])
                ket.append(ModeEntry(complex(re, im), entry['fock']))
        re, im = term['amplitude']
        terms.append((complex(re, im), tuple(ket)))
    psi = StateVector(signature, terms)
    logger.debug('Loaded state with {} terms over {!r}'.format(len(psi), signature))
    return psi.normalized()


def state_to_document(psi):
    """Inverse of :func:`state_from_document`

    :Returns: Dictionary
    """
    signature = []
    for factor in psi.signature:
        item = {'kind': factor.kind, 'electron': factor.electron}
        if not factor.is_spin:
            item['axis'] = factor.axis
        signature.append(item)
    terms = []
    for amp, ket in psi.terms:
        entries = []
        for factor, entry in zip(psi.signature, ket):
            if factor.is_spin:
                entries.append(SPIN_NAMES[entry])
            else:
                entries.append({'fock': entry.fock,
                                'displacement': [entry.displacement.real, entry.displacement.imag]})
        terms.append({'amplitude': [amp.real, amp.imag], 'ket': entries})
    return {'signature': signature, 'terms': terms}
