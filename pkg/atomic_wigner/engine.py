# -*- coding: UTF-8 -*-
"""
Evaluation of composite Wigner functions ``W = Tr[rho Pi]`` and their reduced slices.

A :class:`ReductionPlan` assigns one directive to every factor of a signature.
Mode factors take ``Trace``, ``Fixed(q, p)``, ``PositionMarginal(q)`` or
``MomentumMarginal(p)``; spin factors take ``Trace``, ``SphereAngle(theta, phi)``
or ``EqualAngle(group)``. All spins of one EqualAngle group share the angles
handed to :func:`evaluate` for that group.

Contraction runs term by term over the sparse density operator. Mode
coordinates in a plan may be numpy arrays of one common shape; every result
then carries that shape, which is how the scene builder sweeps a whole grid
row in one pass.
"""
import numbers
from collections import namedtuple, OrderedDict

import numpy as np

from .constants import const
from .kernels import (Trace, Fixed, PositionMarginal, MomentumMarginal, MODE_DIRECTIVES,
                      SpinAngle, spin_kernel, mode_kernel, SIGMA_X, SIGMA_Y, SIGMA_Z)
from .states import (StateVector, SystemSignature, StateError, ket_overlap, UP, AXES)
from .std_logger import get_logger

logger = get_logger(__name__, loglevel=const.LOG_LEVEL)

SphereAngle = namedtuple('SphereAngle', 'theta phi')
EqualAngle = namedtuple('EqualAngle', 'group')

SPIN_DIRECTIVES = (Trace, SphereAngle, EqualAngle)

WignerValue = namedtuple('WignerValue', 'value residual')
BlochVector = namedtuple('BlochVector', 'vector underflow')


class AngularMomentum(namedtuple('AngularMomentum', 'l_z s_z')):
    __slots__ = ()

    @property
    def j_z(self):
        return self.l_z + self.s_z


class PlanError(ValueError):
    """A reduction plan does not fit the operator it is applied to"""
    pass


class NormalizationError(ValueError):
    """An operation that needs a normalized pure state was handed something else"""
    pass


class ReductionPlan(tuple):
    """One directive per signature factor"""

    def __new__(cls, directives):
        return super(ReductionPlan, cls).__new__(cls, tuple(directives))

    @property
    def groups(self):
        seen = OrderedDict()
        for directive in self:
            if isinstance(directive, EqualAngle):
                seen[directive.group] = True
        return tuple(seen)

    def check(self, signature):
        """Raise PlanError unless every directive suits its factor

        :Returns: None

        :Raises: PlanError
        """
        if len(self) != len(signature):
            raise PlanError('Plan has {} directives but the signature has {} factors'.format(len(self), len(signature)))
        for factor, directive in zip(signature, self):
            allowed = SPIN_DIRECTIVES if factor.is_spin else MODE_DIRECTIVES
            if not isinstance(directive, allowed):
                raise PlanError('Directive {!r} does not apply to factor {}'.format(directive, factor))


def slice_plan(signature, electron=None, q=(None, None, None), spins=(), representation='position'):
    """The usual reduced slice: one electron's modes as marginals, some spins on one
    equal-angle group, everything else traced.

    :Returns: ReductionPlan

    :param electron: Electron whose modes are kept, or None to trace every mode
    :type electron: Integer

    :param q: Coordinate per axis (x, y, z); None leaves a placeholder to be filled later
    :type q: Sequence

    :param spins: Electrons whose spins are displayed on equal-angle group 0
    :type spins: Sequence

    :param representation: ``position`` or ``momentum`` marginal for the kept modes
    :type representation: String
    """
    try:
        marginal = {'position': PositionMarginal, 'momentum': MomentumMarginal}[representation]
    except KeyError:
        raise PlanError('Unknown representation {!r}'.format(representation))
    directives = [Trace()] * len(signature)
    try:
        if electron is not None:
            for index in signature.mode_indices(electron):
                directives[index] = marginal(q[AXES.index(signature[index].axis)])
        for spin in spins:
            directives[signature.spin_index(spin)] = EqualAngle(0)
    except StateError as doh:
        raise PlanError(str(doh))
    return ReductionPlan(directives)


def _coordinates(directive):
    if isinstance(directive, Fixed):
        return [directive.q, directive.p]
    elif isinstance(directive, PositionMarginal):
        return [directive.q]
    elif isinstance(directive, MomentumMarginal):
        return [directive.p]
    return []


def equal_angle_kernel(count, theta, phi):
    """``Delta(theta, phi)`` tensored ``count`` times; angles may be arrays

    :Returns: numpy.ndarray, shape ``theta.shape + (2**count, 2**count)``
    """
    delta = spin_kernel(SpinAngle(theta, phi))
    kernel = np.ones(delta.shape[:-2] + (1, 1), dtype=complex)
    for _ in range(count):
        kernel = _kron(kernel, delta)
    return kernel


def _kron(a, b):
    """Batched Kronecker product over the last two axes"""
    shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
    out = np.einsum('...ij,...kl->...ikjl', a, b)
    return out.reshape(shape + (a.shape[-2] * b.shape[-2], a.shape[-1] * b.shape[-1]))


class Contraction(object):
    """A density operator compiled against a reduction plan.

    Mode factors and traced spins are reduced to one complex weight per term
    (arrays when the plan's coordinates are arrays); the retained spins stay as
    operator indices, so :meth:`spin_operator` hands back the conditional
    operator on the displayed spins.

    :param rho: The operator to contract
    :type rho: DensityOperator

    :param plan: One directive per factor of ``rho.signature``
    :type plan: ReductionPlan
    """
    def __init__(self, rho, plan):
        if isinstance(rho, StateVector):
            rho = rho.density()
        plan = ReductionPlan(plan)
        plan.check(rho.signature)
        self.rho = rho
        self.plan = plan
        signature = rho.signature
        self.retained = tuple(i for i, (factor, directive) in enumerate(zip(signature, plan))
                              if factor.is_spin and not isinstance(directive, Trace))
        coordinates = [c for d in plan for c in _coordinates(d)]
        try:
            self.shape = np.broadcast(*[np.asarray(c, dtype=float) for c in coordinates]).shape if coordinates else ()
        except (TypeError, ValueError) as doh:
            raise PlanError('Plan coordinates must be numbers of one common shape: {}'.format(doh))
        terms = rho.terms
        count = len(terms)
        weights = np.array([c for c, _, _ in terms], dtype=complex).reshape((count,) + (1,) * len(self.shape))
        weights = np.broadcast_to(weights, (count,) + self.shape).copy()
        for index, (factor, directive) in enumerate(zip(signature, plan)):
            if factor.is_spin:
                if isinstance(directive, Trace):
                    keep = np.array([k[index] == b[index] for _, k, b in terms])
                    weights[~keep] = 0
                continue
            weights *= self._mode_values(index, directive, terms)
        self.weights = weights
        self.ket_index = np.array([self._spin_index(k) for _, k, _ in terms], dtype=int)
        self.bra_index = np.array([self._spin_index(b) for _, _, b in terms], dtype=int)

    def _spin_index(self, ket):
        index = 0
        for position in self.retained:
            index = 2 * index + (0 if ket[position] == UP else 1)
        return index

    def _mode_values(self, index, directive, terms):
        pairs = OrderedDict()
        lookup = np.empty(len(terms), dtype=int)
        for t, (_, ket, bra) in enumerate(terms):
            lookup[t] = pairs.setdefault((ket[index], bra[index]), len(pairs))
        try:
            table = np.stack([np.broadcast_to(mode_kernel(ket, bra, directive), self.shape)
                              for ket, bra in pairs])
        except ValueError as doh:
            raise PlanError('Cannot evaluate {!r} on factor {}: {}'.format(
                directive, self.rho.signature[index], doh))
        return table[lookup]

    @property
    def dimension(self):
        return 2 ** len(self.retained)

    def spin_operator(self):
        """Conditional operator on the retained spins, ``O[ket, bra]``

        :Returns: numpy.ndarray, shape ``self.shape + (d, d)``
        """
        d = self.dimension
        onehot = np.zeros((len(self.weights), d * d), dtype=complex)
        onehot[np.arange(len(self.weights)), self.ket_index * d + self.bra_index] = 1
        flat = np.moveaxis(self.weights, 0, -1) @ onehot
        return flat.reshape(self.shape + (d, d))

    def kernel(self, angles=None):
        """Tensor product of the retained spins' kernels for one angle assignment

        :Returns: numpy.ndarray, shape ``(d, d)``

        :param angles: SpinAngle per EqualAngle group
        :type angles: Dictionary
        """
        angles = angles or {}
        kernel = np.ones((1, 1), dtype=complex)
        for position in self.retained:
            directive = self.plan[position]
            if isinstance(directive, SphereAngle):
                angle = SpinAngle(directive.theta, directive.phi)
            else:
                try:
                    angle = SpinAngle(*angles[directive.group])
                except KeyError:
                    raise PlanError('No angles supplied for equal-angle group {!r}'.format(directive.group))
            try:
                kernel = np.kron(kernel, spin_kernel(angle))
            except ValueError as doh:
                raise PlanError(str(doh))
        return kernel


def contract(operator, kernel):
    """``Tr[O K]`` for ``O[ket, bra]`` with any leading batch axes

    :Returns: numpy.ndarray (complex)
    """
    return np.einsum('...kb,...bk->...', operator, kernel)


def evaluate(rho, plan, angles=None):
    """Reduced Wigner function value of ``rho`` under ``plan``.

    :Returns: WignerValue

    :param rho: The state (a StateVector is turned into its projector)
    :type rho: DensityOperator

    :param plan: One directive per factor
    :type plan: ReductionPlan

    :param angles: SpinAngle per EqualAngle group
    :type angles: Dictionary

    :Raises: PlanError
    """
    contraction = Contraction(rho, plan)
    value = contract(contraction.spin_operator(), contraction.kernel(angles))
    return WignerValue(np.real(value)[()], np.abs(np.imag(value))[()])


def _marginal_density(rho, electron, coordinates, representation):
    rho = rho.density() if isinstance(rho, StateVector) else rho
    coordinates = [np.asarray(c, dtype=float) for c in coordinates]
    if len(coordinates) != 3:
        raise PlanError('Expected three coordinates, got {}'.format(len(coordinates)))
    plan = slice_plan(rho.signature, electron, coordinates, representation=representation)
    return evaluate(rho, plan).value


def position_density(rho, electron, q):
    """Spatial probability density of one electron, every other factor traced

    :Returns: Float (or numpy.ndarray for array coordinates)

    :param q: (x, y, z)
    :type q: Sequence
    """
    return _marginal_density(rho, electron, q, 'position')


def momentum_density(rho, electron, p):
    """Momentum-space probability density of one electron (the Compton-profile marginal)

    :Returns: Float (or numpy.ndarray for array coordinates)

    :param p: (p_x, p_y, p_z)
    :type p: Sequence
    """
    return _marginal_density(rho, electron, p, 'momentum')


def bloch_from_operator(operator, underflow=None):
    """Normalized Bloch vectors of 2x2 operators ``O[ket, bra]`` (batched)

    :Returns: Tuple of (vectors, underflow mask, traces)
    """
    underflow = const.UNDERFLOW if underflow is None else underflow
    trace = np.real(operator[..., 0, 0] + operator[..., 1, 1])
    raw = np.stack([np.real(contract(operator, SIGMA_X)),
                    np.real(contract(operator, SIGMA_Y)),
                    np.real(contract(operator, SIGMA_Z))], axis=-1)
    mask = trace < underflow
    safe = np.where(mask, 1.0, trace)
    vectors = np.where(mask[..., None], 0.0, raw / safe[..., None])
    return vectors, mask, trace


def bloch_field(rho, spin, q, electron=None):
    """Conditional Bloch vector of electron ``spin`` given that ``electron`` sits at ``q``

    :Returns: BlochVector

    :param spin: Electron whose spin is measured
    :type spin: Integer

    :param q: (x, y, z) of ``electron``
    :type q: Sequence

    :param electron: Electron whose position is fixed; defaults to ``spin``
    :type electron: Integer
    """
    rho = rho.density() if isinstance(rho, StateVector) else rho
    electron = spin if electron is None else electron
    plan = slice_plan(rho.signature, electron, q, spins=(spin,))
    vectors, mask, _ = bloch_from_operator(Contraction(rho, plan).spin_operator())
    return BlochVector(vectors, bool(mask) if np.ndim(mask) == 0 else mask)


def conditional_spin_state(rho, plan):
    """Normalized conditional operator on the plan's retained spins

    :Returns: Tuple of (numpy.ndarray, Boolean underflow)
    """
    operator = Contraction(rho, plan).spin_operator()
    trace = np.real(np.trace(operator, axis1=-2, axis2=-1))
    if np.any(trace < const.UNDERFLOW):
        return np.zeros_like(operator), True
    return operator / trace[..., None, None], False


def _split_terms(psi, subset):
    subset = tuple(subset)
    rest = tuple(i for i in range(len(psi.signature)) if i not in subset)
    a_parts, b_parts = OrderedDict(), OrderedDict()
    entries = []
    for amp, ket in psi.terms:
        a = tuple(ket[i] for i in subset)
        b = tuple(ket[i] for i in rest)
        entries.append((amp, a_parts.setdefault(a, len(a_parts)), b_parts.setdefault(b, len(b_parts))))
    return subset, rest, list(a_parts), list(b_parts), entries


def _gram(signature, parts):
    return np.array([[ket_overlap(signature, bra, ket) for ket in parts] for bra in parts], dtype=complex)


def _sqrt_psd(matrix):
    values, vectors = np.linalg.eigh(matrix)
    return (vectors * np.sqrt(np.clip(values, 0, None))) @ vectors.conj().T


def entanglement_entropy(psi, bipartition):
    """Von Neumann entropy, in bits, of the reduced state on a subset of factors

    Kets need not be orthogonal: displaced mode entries are handled through the
    Gram matrices of each side of the cut.

    :Returns: Float

    :param psi: A normalized pure state
    :type psi: StateVector

    :param bipartition: Factor indices (or Factor objects) of one side of the cut
    :type bipartition: Iterable

    :Raises: NormalizationError, PlanError
    """
    indices = []
    for item in bipartition:
        indices.append(int(item) if isinstance(item, numbers.Integral) else psi.signature.index(item))
    if not indices or any(not 0 <= i < len(psi.signature) for i in indices):
        raise PlanError('Bipartition {} does not fit {!r}'.format(bipartition, psi.signature))
    subset, rest, a_parts, b_parts, entries = _split_terms(psi, sorted(set(indices)))
    coefficients = np.zeros((len(a_parts), len(b_parts)), dtype=complex)
    for amp, i, j in entries:
        coefficients[i, j] += amp
    sig_a = SystemSignature(psi.signature[i] for i in subset)
    sig_b = SystemSignature(psi.signature[i] for i in rest)
    gram_a = _gram(sig_a, a_parts)
    gram_b = _gram(sig_b, b_parts)
    root_a = _sqrt_psd(gram_a)
    reduced = root_a @ coefficients @ gram_b.T @ coefficients.conj().T @ root_a
    probabilities = np.clip(np.linalg.eigvalsh(0.5 * (reduced + reduced.conj().T)), 0, None)
    if abs(probabilities.sum() - 1) > 1e-10:
        raise NormalizationError('State is not normalized: <psi|psi> = {}'.format(probabilities.sum()))
    probabilities = probabilities[probabilities > 1e-15]
    return float(-np.sum(probabilities * np.log2(probabilities)))


def overlap(rho1, rho2):
    """``Tr[rho1 rho2]`` by exact ket algebra

    :Returns: Float

    :Raises: PlanError
    """
    rho1 = rho1.density() if isinstance(rho1, StateVector) else rho1
    rho2 = rho2.density() if isinstance(rho2, StateVector) else rho2
    if rho1.signature != rho2.signature:
        raise PlanError('Signatures differ: {!r} vs {!r}'.format(rho1.signature, rho2.signature))
    signature = rho1.signature
    total = 0j
    for c1, k1, b1 in rho1.terms:
        for c2, k2, b2 in rho2.terms:
            first = ket_overlap(signature, b1, k2)
            if first:
                total += c1 * c2 * first * ket_overlap(signature, b2, k1)
    return float(np.real(total))


def angular_momentum_z(psi, electron):
    """Expectation values of ``L_z`` and ``S_z`` for one electron of an undisplaced state

    ``L_z = -i (a_x^dagger a_y - a_y^dagger a_x)``

    :Returns: AngularMomentum

    :Raises: PlanError
    """
    signature = psi.signature
    x_index, y_index = signature.mode_indices(electron)[:2]
    terms = []
    for amp, ket in psi.terms:
        nx, ny = ket[x_index], ket[y_index]
        if nx.displaced or ny.displaced:
            raise PlanError('L_z needs undisplaced x and y modes')
        if ny.fock > 0:
            raised = list(ket)
            raised[x_index] = nx._replace(fock=nx.fock + 1)
            raised[y_index] = ny._replace(fock=ny.fock - 1)
            terms.append((-1j * amp * np.sqrt((nx.fock + 1) * ny.fock), tuple(raised)))
        if nx.fock > 0:
            lowered = list(ket)
            lowered[x_index] = nx._replace(fock=nx.fock - 1)
            lowered[y_index] = ny._replace(fock=ny.fock + 1)
            terms.append((1j * amp * np.sqrt(nx.fock * (ny.fock + 1)), tuple(lowered)))
    l_z = psi.inner(StateVector(signature, terms)).real if terms else 0.0
    try:
        spin = signature.spin_index(electron)
    except ValueError:
        return AngularMomentum(l_z, 0.0)
    s_z = sum(abs(amp) ** 2 * (0.5 if ket[spin] == UP else -0.5) for amp, ket in psi.terms)
    return AngularMomentum(float(l_z), float(s_z))
