"""Compact connected group arithmetic: U(1), tori, SU(2) and products.

Elements are immutable values tagged by a descriptor:

* ``U1``      -- angle in ``[0, 1)`` (fraction of a full turn), float or
  exact :class:`~fractions.Fraction`;
* ``Torus(m)``-- tuple of ``m`` angles;
* ``SU2``     -- unit quaternion ``(w, x, y, z)``, renormalized after every
  64 multiplications to bound drift;
* ``ProductGroup(factors)`` -- tuple of component elements.

The distance is bi-invariant in every case: arc length (max over
coordinates for tori) on the abelian groups, and on SU(2) the Euclidean
quaternion distance, which equals the Frobenius distance of the defining
2x2 matrices divided by sqrt(2).  Product groups use the max of component
distances.

Irreducible unitary representations are labelled per group: an integer
frequency for U(1), an integer vector for a torus, a half-integer spin for
SU(2) and a tuple of labels for products.  Characters are implemented for
the whole inventory (|frequency| <= 8, spin <= 5); matrix realizations for
dimension <= 3 (all 1-dimensional labels, SU(2) spin 1/2 and 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DescriptorMismatch, IndexOutOfRange, UnsupportedLabel

Angle = Union[Fraction, float]

#: SU(2) elements are renormalized after this many multiplications.
RENORM_EVERY = 64

#: Representation inventory bounds.
MAX_FREQUENCY = 8
MAX_TWICE_SPIN = 10
MATRIX_TWICE_SPINS = (0, 1, 2)


@dataclass(frozen=True)
class GroupElement:
    """An element of the group described by ``group``.

    ``data`` is the variant payload (angle, angle tuple, quaternion tuple,
    or tuple of child elements).  ``muls`` counts multiplications since the
    last renormalization and does not take part in equality.
    """

    group: "GroupDescriptor"
    data: object
    muls: int = field(default=0, compare=False)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.invert(self)


class GroupDescriptor:
    """Shared operations; concrete groups implement the ``_*`` hooks."""

    def _check(self, a: GroupElement) -> None:
        if a.group != self:
            raise DescriptorMismatch(f"element of {a.group} used with {self}")

    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity_data())

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a)
        self._check(b)
        data, muls = self._mul_data(a.data, b.data, a.muls + b.muls + 1)
        return GroupElement(self, data, muls)

    def invert(self, a: GroupElement) -> GroupElement:
        self._check(a)
        return GroupElement(self, self._inv_data(a.data), a.muls)

    def distance(self, a: GroupElement, b: GroupElement):
        self._check(a)
        self._check(b)
        return self._dist_data(a.data, b.data)

    def haar(self, rng: np.random.Generator) -> GroupElement:
        return GroupElement(self, self._haar_data(rng))

    def conj_min_distance(self, a: GroupElement, b: GroupElement):
        self._check(a)
        self._check(b)
        return self._conj_min_data(a.data, b.data)

    # -- hooks -----------------------------------------------------------
    def _identity_data(self): raise NotImplementedError
    def _mul_data(self, a, b, muls): raise NotImplementedError
    def _inv_data(self, a): raise NotImplementedError
    def _dist_data(self, a, b): raise NotImplementedError
    def _haar_data(self, rng): raise NotImplementedError
    def _conj_min_data(self, a, b): raise NotImplementedError
    def _validate_label(self, label): raise NotImplementedError
    def _dimension(self, label) -> int: raise NotImplementedError
    def _is_trivial(self, label) -> bool: raise NotImplementedError
    def _character(self, label, data) -> complex: raise NotImplementedError
    def _matrix(self, label, data) -> np.ndarray: raise NotImplementedError
    def format_element(self, a: GroupElement) -> str: raise NotImplementedError
    def parse_element(self, text: str) -> GroupElement: raise NotImplementedError
    def name(self) -> str: raise NotImplementedError


def _phase(turns: Angle) -> complex:
    """``exp(2 pi i turns)``, reducing mod 1 before the float conversion so
    exact angles keep full precision."""
    f = float(turns % 1)
    return complex(math.cos(2.0 * math.pi * f), math.sin(2.0 * math.pi * f))


def _angle_dist(a: Angle, b: Angle):
    f = abs(a - b) % 1
    return min(f, 1 - f)


@dataclass(frozen=True)
class U1(GroupDescriptor):
    """The circle group, elements stored as angles in ``[0, 1)``."""

    def _identity_data(self):
        return Fraction(0)

    def _mul_data(self, a, b, muls):
        return (a + b) % 1, 0

    def _inv_data(self, a):
        return (-a) % 1

    def _dist_data(self, a, b):
        return _angle_dist(a, b)

    def _haar_data(self, rng):
        return float(rng.random())

    def _conj_min_data(self, a, b):
        return _angle_dist(a, b)

    def _validate_label(self, label):
        if not isinstance(label, int) or abs(label) > MAX_FREQUENCY:
            raise UnsupportedLabel(
                f"U1 label must be an int with |m| <= {MAX_FREQUENCY}, got {label!r}")

    def _dimension(self, label):
        return 1

    def _is_trivial(self, label):
        return label == 0

    def _character(self, label, data):
        return _phase(label * data)

    def _matrix(self, label, data):
        return np.array([[_phase(label * data)]], dtype=complex)

    def format_element(self, a):
        return repr(float(a.data))

    def parse_element(self, text):
        return GroupElement(self, _parse_angle(text))

    def name(self):
        return "u1"


def _parse_angle(text: str) -> Angle:
    text = text.strip()
    if "/" in text:
        return Fraction(text) % 1
    return float(text) % 1.0


@dataclass(frozen=True)
class Torus(GroupDescriptor):
    """The ``dims``-dimensional torus with the max-of-arcs metric."""

    dims: int

    def _identity_data(self):
        return (Fraction(0),) * self.dims

    def _mul_data(self, a, b, muls):
        return tuple((u + v) % 1 for u, v in zip(a, b)), 0

    def _inv_data(self, a):
        return tuple((-u) % 1 for u in a)

    def _dist_data(self, a, b):
        return max(_angle_dist(u, v) for u, v in zip(a, b))

    def _haar_data(self, rng):
        return tuple(float(v) for v in rng.random(self.dims))

    def _conj_min_data(self, a, b):
        return self._dist_data(a, b)

    def _validate_label(self, label):
        ok = (isinstance(label, tuple) and len(label) == self.dims
              and all(isinstance(v, int) and abs(v) <= MAX_FREQUENCY for v in label))
        if not ok:
            raise UnsupportedLabel(
                f"Torus({self.dims}) label must be {self.dims} ints with "
                f"|m_i| <= {MAX_FREQUENCY}, got {label!r}")

    def _dimension(self, label):
        return 1

    def _is_trivial(self, label):
        return all(v == 0 for v in label)

    def _character(self, label, data):
        exact = all(isinstance(u, Fraction) for u in data)
        turns = sum((m * u for m, u in zip(label, data)),
                    start=Fraction(0) if exact else 0.0)
        return _phase(turns)

    def _matrix(self, label, data):
        return np.array([[self._character(label, data)]], dtype=complex)

    def format_element(self, a):
        return ",".join(repr(float(u)) for u in a.data)

    def parse_element(self, text):
        parts = tuple(_parse_angle(p) for p in text.split(","))
        if len(parts) != self.dims:
            raise ValueError(f"expected {self.dims} angles, got {len(parts)}")
        return GroupElement(self, parts)

    def name(self):
        return f"torus{self.dims}"


def _quat_mul(a, b):
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return (w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2)


def _quat_normalize(q):
    norm = math.sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3])
    return (q[0] / norm, q[1] / norm, q[2] / norm, q[3] / norm)


def _eigenangle(q) -> float:
    """Eigenangle ``t`` in ``[0, pi]`` of the defining matrix: ``cos t = w``."""
    return math.atan2(math.sqrt(q[1] ** 2 + q[2] ** 2 + q[3] ** 2), q[0])


def _chebyshev_u(degree: int, c: float) -> float:
    """``U_degree(c) = sin((degree+1) t)/sin t`` at ``c = cos t``.

    The three-term recurrence is uniformly stable on ``[-1, 1]``, covering
    the ``t -> 0`` and ``t -> pi`` limits without a branch.
    """
    if degree == 0:
        return 1.0
    prev, cur = 1.0, 2.0 * c
    for _ in range(degree - 1):
        prev, cur = cur, 2.0 * c * cur - prev
    return cur


@dataclass(frozen=True)
class SU2(GroupDescriptor):
    """SU(2) as unit quaternions; spin-j characters and low-spin matrices."""

    def _identity_data(self):
        return (1.0, 0.0, 0.0, 0.0)

    def _mul_data(self, a, b, muls):
        q = _quat_mul(a, b)
        if muls >= RENORM_EVERY:
            return _quat_normalize(q), 0
        return q, muls

    def _inv_data(self, a):
        return (a[0], -a[1], -a[2], -a[3])

    def _dist_data(self, a, b):
        return math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
                         + (a[2] - b[2]) ** 2 + (a[3] - b[3]) ** 2)

    def _haar_data(self, rng):
        return _quat_normalize(tuple(float(v) for v in rng.standard_normal(4)))

    def _conj_min_data(self, a, b):
        # conjugacy classes are the level sets of the eigenangle; the
        # minimum over the class is attained at aligned rotation axes
        return 2.0 * abs(math.sin(0.5 * (_eigenangle(a) - _eigenangle(b))))

    def _validate_label(self, label):
        two_j = _twice_spin(label)
        if two_j < 0 or two_j > MAX_TWICE_SPIN:
            raise UnsupportedLabel(
                f"SU2 spin must lie in 0, 1/2, ..., {MAX_TWICE_SPIN}/2, got {label!r}")

    def _dimension(self, label):
        return _twice_spin(label) + 1

    def _is_trivial(self, label):
        return _twice_spin(label) == 0

    def _character(self, label, data):
        return complex(_chebyshev_u(_twice_spin(label), data[0]))

    def _matrix(self, label, data):
        two_j = _twice_spin(label)
        w, x, y, z = data
        if two_j == 0:
            return np.eye(1, dtype=complex)
        if two_j == 1:
            # 1 -> I, i -> -i sigma_x, j -> -i sigma_y, k -> -i sigma_z
            return np.array([[w - 1j * z, -y - 1j * x],
                             [y - 1j * x, w + 1j * z]], dtype=complex)
        if two_j == 2:
            # adjoint action on imaginary quaternions (real orthogonal)
            return np.array([
                [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
                [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
                [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
            ], dtype=complex)
        raise UnsupportedLabel(
            f"SU2 matrix realization only for spin 0, 1/2, 1 (got spin {Fraction(two_j, 2)})")

    def format_element(self, a):
        return ",".join(repr(float(c)) for c in a.data)

    def parse_element(self, text):
        parts = tuple(float(p) for p in text.split(","))
        if len(parts) != 4:
            raise ValueError(f"expected 4 quaternion components, got {len(parts)}")
        return GroupElement(self, _quat_normalize(parts))

    def name(self):
        return "su2"


def _twice_spin(label) -> int:
    j = Fraction(label)
    two_j = 2 * j
    if two_j.denominator != 1:
        raise UnsupportedLabel(f"spin must be a half-integer, got {label!r}")
    return int(two_j)


@dataclass(frozen=True)
class ProductGroup(GroupDescriptor):
    """Direct product; elements are tuples of component elements."""

    factors: tuple[GroupDescriptor, ...]

    def __post_init__(self):
        if len(self.factors) < 1:
            raise ValueError("a product group needs at least one factor")

    def _identity_data(self):
        return tuple(f.identity() for f in self.factors)

    def _mul_data(self, a, b, muls):
        return tuple(u * v for u, v in zip(a, b)), 0

    def _inv_data(self, a):
        return tuple(u.inverse() for u in a)

    def _dist_data(self, a, b):
        return max(f.distance(u, v) for f, u, v in zip(self.factors, a, b))

    def _haar_data(self, rng):
        return tuple(f.haar(rng) for f in self.factors)

    def _conj_min_data(self, a, b):
        return max(f.conj_min_distance(u, v) for f, u, v in zip(self.factors, a, b))

    def _validate_label(self, label):
        if not isinstance(label, tuple) or len(label) != len(self.factors):
            raise UnsupportedLabel(
                f"product label must be one label per factor, got {label!r}")
        for f, lab in zip(self.factors, label):
            f._validate_label(lab)

    def _dimension(self, label):
        return math.prod(f._dimension(lab) for f, lab in zip(self.factors, label))

    def _is_trivial(self, label):
        return all(f._is_trivial(lab) for f, lab in zip(self.factors, label))

    def _character(self, label, data):
        out = 1 + 0j
        for f, lab, el in zip(self.factors, label, data):
            out *= f._character(lab, el.data)
        return out

    def _matrix(self, label, data):
        if self._dimension(label) > 3:
            raise UnsupportedLabel("matrix realization implemented for dimension <= 3")
        out = np.eye(1, dtype=complex)
        for f, lab, el in zip(self.factors, label, data):
            out = np.kron(out, f._matrix(lab, el.data))
        return out

    def format_element(self, a):
        return "|".join(f.format_element(el) for f, el in zip(self.factors, a.data))

    def parse_element(self, text):
        parts = text.split("|")
        if len(parts) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} components, got {len(parts)}")
        return GroupElement(self, tuple(
            f.parse_element(p) for f, p in zip(self.factors, parts)))

    def name(self):
        return "*".join(f.name() for f in self.factors)


@dataclass(frozen=True)
class Representation:
    """An irreducible unitary representation label over a descriptor."""

    group: GroupDescriptor
    label: object

    def __post_init__(self):
        self.group._validate_label(self.label)

    @property
    def dimension(self) -> int:
        return self.group._dimension(self.label)

    @property
    def is_trivial(self) -> bool:
        return self.group._is_trivial(self.label)


def character(rep: Representation, x: GroupElement) -> complex:
    """Trace of the representation at ``x``.

    For U(1) and tori this is ``exp(2 pi i <label, angles>)``; for SU(2)
    with eigenangle ``t`` it equals ``sin((2j+1)t)/sin(t)`` (value ``2j+1``
    at ``t = 0``), evaluated through the stable Chebyshev recurrence in
    ``cos t``; product characters multiply.
    """
    rep.group._check(x)
    return rep.group._character(rep.label, x.data)


def rep_matrix(rep: Representation, x: GroupElement) -> np.ndarray:
    """Unitary matrix of the representation at ``x`` (dimension <= 3)."""
    rep.group._check(x)
    return rep.group._matrix(rep.label, x.data)


def haar_sample(group: GroupDescriptor, rng: np.random.Generator) -> GroupElement:
    """One sample from normalized Haar measure."""
    return group.haar(rng)


@dataclass(frozen=True)
class GTuple:
    """An ``n``-tuple of elements of one group, with the max product metric."""

    group: GroupDescriptor
    elements: tuple[GroupElement, ...]

    def __post_init__(self):
        if not isinstance(self.elements, tuple):
            object.__setattr__(self, "elements", tuple(self.elements))
        for el in self.elements:
            self.group._check(el)

    @property
    def n(self) -> int:
        return len(self.elements)

    def distance(self, other: "GTuple"):
        if other.group != self.group or other.n != self.n:
            raise DescriptorMismatch("tuples over different groups or sizes")
        return max(self.group.distance(a, b)
                   for a, b in zip(self.elements, other.elements))

    def conjugated(self, a: GroupElement) -> "GTuple":
        """Componentwise conjugation ``g_k -> a g_k a^{-1}``."""
        inv = a.inverse()
        return GTuple(self.group, tuple(a * g * inv for g in self.elements))


def identity_tuple(group: GroupDescriptor, n: int) -> GTuple:
    return GTuple(group, tuple(group.identity() for _ in range(n)))


def haar_tuple(group: GroupDescriptor, n: int, rng: np.random.Generator) -> GTuple:
    return GTuple(group, tuple(group.haar(rng) for _ in range(n)))


def nielsen_alpha(t: GTuple, i: int, j: int) -> GTuple:
    """Swap components ``i`` and ``j`` (1-based, ``i < j``)."""
    if not 1 <= i < j <= t.n:
        raise IndexOutOfRange(f"need 1 <= i < j <= {t.n}, got ({i}, {j})")
    e = list(t.elements)
    e[i - 1], e[j - 1] = e[j - 1], e[i - 1]
    return GTuple(t.group, tuple(e))


def nielsen_beta(t: GTuple) -> GTuple:
    """``(g_1, g_2, ...) -> (g_2 g_1, g_2, ...)``."""
    if t.n < 2:
        raise IndexOutOfRange("nielsen_beta needs n >= 2")
    e = t.elements
    return GTuple(t.group, (e[1] * e[0],) + e[1:])


def conj_min_distance(a: GroupElement, b: GroupElement):
    """``min_c d(c a c^{-1}, b)`` in the bi-invariant metric.

    Exact closed forms for the whole descriptor inventory: conjugation is
    trivial on U(1)/tori; on SU(2) the minimum over a conjugacy class is
    ``2 |sin((t_a - t_b)/2)|`` for eigenangles ``t_a, t_b``; products take
    the max of component values.
    """
    if a.group != b.group:
        raise DescriptorMismatch(f"elements of {a.group} and {b.group}")
    return a.group.conj_min_distance(a, b)


def parse_group(text: str) -> GroupDescriptor:
    """Parse a descriptor name: ``u1``, ``torus<m>``, ``su2``, or a
    ``*``-joined product such as ``u1*su2``."""
    parts = [p.strip().lower() for p in text.split("*")]

    def one(p: str) -> GroupDescriptor:
        if p == "u1":
            return U1()
        if p == "su2":
            return SU2()
        if p.startswith("torus"):
            return Torus(int(p[len("torus"):]))
        raise ValueError(f"unknown group {p!r}")

    if len(parts) == 1:
        return one(parts[0])
    return ProductGroup(tuple(one(p) for p in parts))
