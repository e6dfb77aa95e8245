"""Dihedral group of order 2k, its integral group ring, and regular representations.

Everything is indexed by the fixed element ordering
``x^0, x^1, ..., x^{k-1}, y, x^1*y, ..., x^{k-1}*y``: rotations occupy
indices ``0..k-1`` and reflections ``k..2k-1``.  All matrices produced
here follow the row convention ``P[i, sigma(i)] = 1`` for permutations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NotAnAutomorphism,
    NotBinary,
    NotHalvable,
    ParseError,
    UnsupportedParameter,
)


# ---------------------------------------------------------------------------
# Group elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralElement:
    """Element x^rot * y^flip of the dihedral group of order 2k."""

    k: int
    rot: int
    flip: int

    def __post_init__(self):
        if self.k < 3:
            raise UnsupportedParameter(f"dihedral group needs k >= 3, got {self.k}")
        object.__setattr__(self, "rot", self.rot % self.k)
        object.__setattr__(self, "flip", self.flip % 2)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        if self.k != other.k:
            raise DimensionMismatch(f"cannot multiply k={self.k} by k={other.k}")
        # y x^a = x^{-a} y, so x^r y^f * x^s y^e = x^{r + (-1)^f s} y^{f+e}.
        sign = -1 if self.flip else 1
        return DihedralElement(self.k, self.rot + sign * other.rot, self.flip + other.flip)

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return self
        return DihedralElement(self.k, -self.rot, 0)

    @property
    def index(self) -> int:
        """Position in the fixed ordering."""
        return self.rot + (self.k if self.flip else 0)


def element_at(k: int, index: int) -> DihedralElement:
    """Inverse of ``DihedralElement.index``."""
    if not 0 <= index < 2 * k:
        raise IndexError(f"index {index} out of range for order {2 * k}")
    return DihedralElement(k, index % k, index // k)


def dihedral_elements(k: int) -> Iterator[DihedralElement]:
    """All 2k elements in the fixed ordering."""
    for index in range(2 * k):
        yield element_at(k, index)


def identity(k: int) -> DihedralElement:
    return DihedralElement(k, 0, 0)


# ---------------------------------------------------------------------------
# Group ring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupRingElement:
    """Integer combination of dihedral group elements in the fixed ordering."""

    k: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.k:
            raise DimensionMismatch(
                f"need {2 * self.k} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    # -- ring structure ------------------------------------------------

    def _check_k(self, other: "GroupRingElement") -> None:
        if self.k != other.k:
            raise DimensionMismatch(f"mixed k: {self.k} vs {other.k}")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check_k(other)
        return GroupRingElement(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check_k(other)
        return GroupRingElement(self.k, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.k, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        """Convolution product over the dihedral group."""
        self._check_k(other)
        k = self.k
        out = [0] * (2 * k)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            g = element_at(k, i)
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                out[(g * element_at(k, j)).index] += a * b
        return GroupRingElement(k, tuple(out))

    # -- views -----------------------------------------------------------

    @property
    def rotation_half(self) -> tuple:
        return self.coeffs[: self.k]

    @property
    def reflection_half(self) -> tuple:
        return self.coeffs[self.k:]

    def support_size(self) -> int:
        return sum(1 for c in self.coeffs if c != 0)

    def is_binary(self) -> bool:
        return all(c in (0, 1) for c in self.coeffs)

    def conjugate_by_reflection(self) -> "GroupRingElement":
        """Image under g -> y^-1 g y, i.e. rotation inversion on both halves."""
        k = self.k
        out = [0] * (2 * k)
        for i, c in enumerate(self.coeffs):
            half, r = divmod(i, k)
            out[half * k + (-r) % k] = c
        return GroupRingElement(k, tuple(out))

    def star(self) -> "GroupRingElement":
        """Coefficientwise image under g -> g^-1."""
        k = self.k
        out = [0] * (2 * k)
        for i, c in enumerate(self.coeffs):
            out[element_at(k, i).inverse().index] = c
        return GroupRingElement(k, tuple(out))


def ring_zero(k: int) -> GroupRingElement:
    return GroupRingElement(k, (0,) * (2 * k))


def ring_one(k: int) -> GroupRingElement:
    return from_indices(k, [0])


def from_indices(k: int, indices: Sequence[int]) -> GroupRingElement:
    """{0,1}-element supported on the given ordering positions."""
    coeffs = [0] * (2 * k)
    for i in indices:
        coeffs[i] += 1
    return GroupRingElement(k, tuple(coeffs))


def full_group_sum(k: int) -> GroupRingElement:
    """Sum of every element of the dihedral group."""
    return GroupRingElement(k, (1,) * (2 * k))


def rotation_sum(k: int) -> GroupRingElement:
    """Sum of the rotation subgroup x^0 + ... + x^{k-1}."""
    return GroupRingElement(k, (1,) * k + (0,) * k)


def halve(w: GroupRingElement) -> GroupRingElement:
    """Coefficient-wise division by 2; every coefficient must be even."""
    for i, c in enumerate(w.coeffs):
        if c % 2 != 0:
            raise NotHalvable(f"odd coefficient {c} at ordering position {i}")
    return GroupRingElement(w.k, tuple(c // 2 for c in w.coeffs))


def is_y_invariant(w: GroupRingElement) -> bool:
    """True iff both halves are fixed by conjugation with the reflection y."""
    k = w.k
    c = w.coeffs
    return all(
        c[half * k + r] == c[half * k + (-r) % k]
        for half in (0, 1)
        for r in range(k)
    )


# ---------------------------------------------------------------------------
# Regular representations
# ---------------------------------------------------------------------------

def right_regular(w: GroupRingElement | DihedralElement) -> np.ndarray:
    """Right regular matrix: row i carries O_i * g for each support element g."""
    if isinstance(w, DihedralElement):
        w = from_indices(w.k, [w.index])
    k = w.k
    mat = np.zeros((2 * k, 2 * k), dtype=np.int64)
    for j, c in enumerate(w.coeffs):
        if c == 0:
            continue
        g = element_at(k, j)
        for i in range(2 * k):
            mat[i, (element_at(k, i) * g).index] += c
    return mat


def left_regular(w: GroupRingElement | DihedralElement) -> np.ndarray:
    """Left regular matrix: row i carries g^-1 * O_i for each support element g."""
    if isinstance(w, DihedralElement):
        w = from_indices(w.k, [w.index])
    k = w.k
    mat = np.zeros((2 * k, 2 * k), dtype=np.int64)
    for j, c in enumerate(w.coeffs):
        if c == 0:
            continue
        ginv = element_at(k, j).inverse()
        for i in range(2 * k):
            mat[i, (ginv * element_at(k, i)).index] += c
    return mat


def to_pm(obj) -> np.ndarray:
    """Map {0,1} entries to {-1,+1} (1 -> 1, 0 -> -1)."""
    if isinstance(obj, GroupRingElement):
        arr = np.array(obj.coeffs, dtype=np.int64)
    else:
        arr = np.asarray(obj, dtype=np.int64)
    if not np.all((arr == 0) | (arr == 1)):
        raise NotBinary("entries must lie in {0, 1}")
    return 2 * arr - 1


def left_right_conjugator(k: int) -> np.ndarray:
    """Permutation matrix Q with Q * right_regular(g) * Q^-1 = left_regular(g).

    Q is the inversion map g -> g^-1 of the dihedral group: it reverses the
    rotation block and fixes every reflection, hence has size 2k.
    """
    if k % 2 == 0 or k < 3:
        raise UnsupportedParameter(f"conjugator requires odd k >= 3, got {k}")
    mat = np.zeros((2 * k, 2 * k), dtype=np.int64)
    for r in range(k):
        mat[r, (-r) % k] = 1
    for r in range(k):
        mat[k + r, k + r] = 1
    return mat


# ---------------------------------------------------------------------------
# Automorphisms of the dihedral group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralAut:
    """Automorphism x -> x^i, y -> x^j * y with gcd(i, k) = 1."""

    k: int
    i: int
    j: int

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % self.k)
        object.__setattr__(self, "j", self.j % self.k)
        if math.gcd(self.i, self.k) != 1:
            raise NotAnAutomorphism(f"i={self.i} is not a unit mod k={self.k}")

    def apply(self, g: DihedralElement) -> DihedralElement:
        if g.k != self.k:
            raise DimensionMismatch(f"mixed k: {self.k} vs {g.k}")
        # x^r y^f -> x^{i r + j f} y^f
        return DihedralElement(self.k, self.i * g.rot + self.j * g.flip, g.flip)

    def compose(self, other: "DihedralAut") -> "DihedralAut":
        """self after other."""
        if self.k != other.k:
            raise DimensionMismatch(f"mixed k: {self.k} vs {other.k}")
        return DihedralAut(self.k, self.i * other.i, self.i * other.j + self.j)

    def inverse(self) -> "DihedralAut":
        i_inv = pow(self.i, -1, self.k)
        return DihedralAut(self.k, i_inv, -i_inv * self.j)

    def is_identity(self) -> bool:
        return self.i == 1 and self.j == 0


def aut_apply(phi: DihedralAut, w: GroupRingElement) -> GroupRingElement:
    """Linear extension of the automorphism to the group ring."""
    if phi.k != w.k:
        raise DimensionMismatch(f"mixed k: {phi.k} vs {w.k}")
    out = [0] * (2 * w.k)
    for i, c in enumerate(w.coeffs):
        if c != 0:
            out[phi.apply(element_at(w.k, i)).index] += c
    return GroupRingElement(w.k, tuple(out))


def aut_perm_matrix(phi: DihedralAut) -> np.ndarray:
    """Permutation matrix P with row i set at the image position of O_i.

    Satisfies ``coeffs(aut_apply(phi, w)) == coeffs(w) @ P``.
    """
    k = phi.k
    mat = np.zeros((2 * k, 2 * k), dtype=np.int64)
    for i in range(2 * k):
        mat[i, phi.apply(element_at(k, i)).index] = 1
    return mat


def all_dihedral_auts(k: int) -> list:
    """Every automorphism, ordered by (i, j)."""
    return [
        DihedralAut(k, i, j)
        for i in range(1, k)
        if math.gcd(i, k) == 1
        for j in range(k)
    ]


# ---------------------------------------------------------------------------
# Element grammar:  element := term ('+' term)*
#                   term    := '1' | 'y' | ('x' | 'x^' INT) ('*'? 'y')?
# ---------------------------------------------------------------------------

def parse_element(text: str, k: int) -> GroupRingElement:
    """Parse the textual element grammar; exponents are reduced mod k."""
    coeffs = [0] * (2 * k)
    pos = 0
    n = len(text)

    def skip_ws(p: int) -> int:
        while p < n and text[p].isspace():
            p += 1
        return p

    def parse_term(p: int) -> tuple:
        p = skip_ws(p)
        if p >= n:
            raise ParseError("expected a term", p)
        ch = text[p]
        if ch == "1":
            return 0, 0, p + 1
        if ch == "y":
            return 0, 1, p + 1
        if ch != "x":
            raise ParseError(f"unexpected character {ch!r}", p)
        p += 1
        exponent = 1
        if p < n and text[p] == "^":
            p += 1
            start = p
            while p < n and text[p].isdigit():
                p += 1
            if p == start:
                raise ParseError("expected an integer exponent after '^'", p)
            exponent = int(text[start:p])
        p = skip_ws(p)
        flip = 0
        if p < n and text[p] == "*":
            p = skip_ws(p + 1)
            if p >= n or text[p] != "y":
                raise ParseError("expected 'y' after '*'", p)
            flip = 1
            p += 1
        elif p < n and text[p] == "y":
            flip = 1
            p += 1
        return exponent % k, flip, p

    pos = skip_ws(pos)
    if pos >= n:
        raise ParseError("empty element", pos)
    while True:
        rot, flip, pos = parse_term(pos)
        coeffs[rot + (k if flip else 0)] += 1
        pos = skip_ws(pos)
        if pos >= n:
            break
        if text[pos] != "+":
            raise ParseError(f"expected '+' or end of input, got {text[pos]!r}", pos)
        pos += 1
    return GroupRingElement(k, tuple(coeffs))


def format_element(w: GroupRingElement) -> str:
    """Render an element with non-negative coefficients in the grammar."""
    k = w.k
    terms = []
    for i, c in enumerate(w.coeffs):
        if c < 0:
            raise ValueError("cannot format negative coefficients")
        half, r = divmod(i, k)
        if half == 0:
            term = "1" if r == 0 else ("x" if r == 1 else f"x^{r}")
        else:
            term = "y" if r == 0 else ("x*y" if r == 1 else f"x^{r}*y")
        terms.extend([term] * c)
    if not terms:
        raise ValueError("cannot format the zero element")
    return "+".join(terms)
