"""Assembly and verification of bordered four-block Hadamard matrices.

A matrix of order 8k+4 is built from four {0,1} group-ring elements
a, b, c, d whose right-regular sign images A, B, C, D fill the block grid

    [  A   B   C   D ]
    [ -B   A   D  -C ]
    [ -C  -D   A   B ]
    [  D  -C   B  -A ]

surrounded by the fixed four-row / four-column border.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import group_algebra as ga
from .errors import (
    DimensionMismatch,
    NotBinary,
    NotDihedralType,
    NotKimuraForm,
    NotSignMatrix,
)

# Border of the first four rows/columns and the sign strips between the
# border and the block grid, exactly as the layout fixes them.
BORDER4 = np.array(
    [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]], dtype=np.int64
)
ROW_STRIP = np.array(
    [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [-1, 1, 1, -1]], dtype=np.int64
)
COL_STRIP = np.array(
    [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [1, -1, -1, -1]], dtype=np.int64
)
# Block grid: (slot letter index 0..3 for a,b,c,d, sign).
BLOCK_GRID = (
    ((0, 1), (1, 1), (2, 1), (3, 1)),
    ((1, -1), (0, 1), (3, 1), (2, -1)),
    ((2, -1), (3, -1), (0, 1), (1, 1)),
    ((3, 1), (2, -1), (1, 1), (0, -1)),
)
# The seven sign tuples (tau, alpha, beta, gamma, delta) of the row-balance
# identities  tau*2*1 + alpha*A1 + beta*B1 + gamma*C1 + delta*D1 = 0.
BALANCE_SIGNS = (
    (1, 1, 1, 1, 1),
    (1, 1, 1, -1, -1),
    (1, 1, -1, 1, -1),
    (1, 1, -1, -1, 1),
    (-1, -1, -1, 1, 1),
    (-1, -1, 1, -1, 1),
    (-1, -1, 1, 1, -1),
)


@dataclass(frozen=True)
class KimuraBlocks:
    """The four {0,1} group-ring elements defining one matrix."""

    k: int
    a: ga.GroupRingElement
    b: ga.GroupRingElement
    c: ga.GroupRingElement
    d: ga.GroupRingElement

    def __post_init__(self):
        for name, w in zip("abcd", self.elements):
            if w.k != self.k:
                raise DimensionMismatch(f"element {name} has k={w.k}, expected {self.k}")
            if not w.is_binary():
                raise NotBinary(f"element {name} has coefficients outside {{0,1}}")

    @property
    def elements(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def sign_blocks(self) -> tuple:
        """A, B, C, D as +-1 matrices of order 2k."""
        return tuple(ga.to_pm(ga.right_regular(w)) for w in self.elements)

    def is_y_invariant(self) -> bool:
        return all(ga.is_y_invariant(w) for w in self.elements)


def blocks_from_strings(k: int, a: str, b: str, c: str, d: str) -> KimuraBlocks:
    return KimuraBlocks(k, *(ga.parse_element(t, k) for t in (a, b, c, d)))


def assemble(blocks: KimuraBlocks) -> np.ndarray:
    """Assemble the (8k+4) x (8k+4) sign matrix from the blocks."""
    k = blocks.k
    m = 2 * k
    n = 8 * k + 4
    signed = blocks.sign_blocks()
    H = np.empty((n, n), dtype=np.int64)
    H[:4, :4] = BORDER4
    for bj in range(4):
        cols = slice(4 + bj * m, 4 + (bj + 1) * m)
        for i in range(4):
            H[i, cols] = ROW_STRIP[i, bj]
    for bi in range(4):
        rows = slice(4 + bi * m, 4 + (bi + 1) * m)
        for j in range(4):
            H[rows, j] = COL_STRIP[bi, j]
        for bj in range(4):
            letter, sign = BLOCK_GRID[bi][bj]
            H[rows, 4 + bj * m: 4 + (bj + 1) * m] = sign * signed[letter]
    return H


def is_hadamard(H: np.ndarray) -> bool:
    """True iff H is a square +-1 matrix with pairwise orthogonal rows."""
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise NotSignMatrix(f"expected a square matrix, got shape {H.shape}")
    if not np.all(np.abs(H) == 1):
        raise NotSignMatrix("entries outside {-1, +1}")
    n = H.shape[0]
    return np.array_equal(H @ H.T, n * np.eye(n, dtype=H.dtype))


@dataclass(frozen=True)
class BlockEquationReport:
    """Pass/fail for the four Gram identities and seven balance identities."""

    gram: tuple
    balance: tuple

    @property
    def all_ok(self) -> bool:
        return all(self.gram) and all(self.balance)


def check_block_equations(A, B, C, D) -> BlockEquationReport:
    """Evaluate the defining matrix identities on four sign blocks of order m."""
    mats = [np.asarray(W, dtype=np.int64) for W in (A, B, C, D)]
    m = mats[0].shape[0]
    for W in mats:
        if W.shape != (m, m):
            raise DimensionMismatch("blocks must share one square shape")
    A, B, C, D = mats
    eye = np.eye(m, dtype=np.int64)
    ones = np.ones((m, m), dtype=np.int64)
    gram = (
        np.array_equal(A @ A.T + B @ B.T + C @ C.T + D @ D.T, (4 * m + 4) * eye - 4 * ones),
        np.array_equal(-A @ B.T + B @ A.T + C @ D.T - D @ C.T, np.zeros((m, m))),
        np.array_equal(-A @ C.T - B @ D.T + C @ A.T + D @ B.T, np.zeros((m, m))),
        np.array_equal(A @ D.T - B @ C.T + C @ B.T - D @ A.T, np.zeros((m, m))),
    )
    col = np.ones(m, dtype=np.int64)
    sums = [W @ col for W in (A, B, C, D)]
    balance = tuple(
        bool(np.all(tau * 2 + al * sums[0] + be * sums[1] + gm * sums[2] + de * sums[3] == 0))
        for tau, al, be, gm, de in BALANCE_SIGNS
    )
    return BlockEquationReport(gram, balance)


def gram_identities_hold(a, b, c, d) -> bool:
    """Group-ring form of the four Gram identities (fast path for searches).

    For sign blocks W = to_pm(right_regular(w)) the matrix identities reduce
    to  sum w w* = (2k+1) + (2k-2) G  and three alternating-sum identities.
    """
    k = a.k
    total = a * a.star() + b * b.star() + c * c.star() + d * d.star()
    want = ga.GroupRingElement(
        k, tuple((2 * k + 1 if i == 0 else 0) + (2 * k - 2) for i in range(2 * k))
    )
    if total != want:
        return False
    zero = ga.ring_zero(k)
    if -(a * b.star()) + b * a.star() + c * d.star() - d * c.star() != zero:
        return False
    if -(a * c.star()) - b * d.star() + c * a.star() + d * b.star() != zero:
        return False
    if a * d.star() - b * c.star() + c * b.star() - d * a.star() != zero:
        return False
    return True


# ---------------------------------------------------------------------------
# Counting profiles and search heuristics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParameterProfile:
    """Support counts of the rotation/reflection halves of a, b, c, d."""

    a1: int
    a2: int
    b1: int
    b2: int
    c1: int
    c2: int
    d1: int
    d2: int

    def as_tuple(self) -> tuple:
        return (self.a1, self.a2, self.b1, self.b2, self.c1, self.c2, self.d1, self.d2)


def _half_supports(w: ga.GroupRingElement) -> tuple:
    return (
        sum(1 for c in w.rotation_half if c != 0),
        sum(1 for c in w.reflection_half if c != 0),
    )


def parameter_profile(blocks: KimuraBlocks) -> ParameterProfile:
    counts = []
    for w in blocks.elements:
        counts.extend(_half_supports(w))
    return ParameterProfile(*counts)


def check_nc(profile: ParameterProfile, k: int) -> tuple:
    """The four necessary counting conditions for a valid matrix."""
    p = profile
    squares = sum(v * v for v in p.as_tuple())
    return (
        p.a1 + p.a2 == k - 1,
        p.b1 + p.b2 == k and p.c1 + p.c2 == k and p.d1 + p.d2 == k,
        squares == 2 * k * k + 1,
        p.a1 * p.a2 + p.b1 * p.b2 + p.c1 * p.c2 + p.d1 * p.d2 == k * (k - 1),
    )


def check_bounds(profile: ParameterProfile, k: int) -> bool:
    """Strict half-support bounds; vacuous below k = 5 where they may fail."""
    if k < 5:
        return True
    p = profile
    return (
        p.a1 < k - 1
        and p.a2 < k - 1
        and all(v < k for v in (p.b1, p.b2, p.c1, p.c2, p.d1, p.d2))
    )


def _rotation_part(coeffs: tuple, k: int) -> ga.GroupRingElement:
    return ga.GroupRingElement(k, tuple(coeffs) + (0,) * k)


def check_c_conditions(blocks: KimuraBlocks) -> tuple:
    """The five informational search heuristics (C1)-(C5).

    (C5) is evaluated as exact identities in the rotation subring, with j
    the sum over the rotation subgroup (the only reading under which the
    identities are dimensionally consistent with halves in Z<x>).
    """
    k = blocks.k
    p = parameter_profile(blocks)
    c1 = p.a1 >= p.a2
    c2 = p.b1 % 2 == 1 and p.c1 % 2 == 1 and p.d1 % 2 == 1
    c3 = p.b1 >= p.c1 and p.b1 >= p.d1
    c4 = blocks.is_y_invariant()
    j_rot = _rotation_part((1,) * k, k)
    one = ga.ring_one(k)
    halves = {}
    for name, w in zip("abcd", blocks.elements):
        halves[name + "1"] = _rotation_part(w.rotation_half, k)
        halves[name + "2"] = _rotation_part(w.reflection_half, k)
    c5 = (
        halves["a1"] == j_rot - one - halves["a2"]
        and halves["b1"] == j_rot - halves["b2"]
        and halves["c1"] == one + halves["c2"]
        and halves["d1"] == one + halves["d2"]
    )
    return (c1, c2, c3, c4, c5)


# ---------------------------------------------------------------------------
# Full verification and decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    is_hadamard: bool
    gram_ok: bool
    balance_ok: bool
    nc_flags: tuple
    bounds_ok: bool
    c_flags: tuple
    y_invariant: bool

    @property
    def all_required(self) -> bool:
        """Everything except the informational (C) flags."""
        return (
            self.is_hadamard
            and self.gram_ok
            and self.balance_ok
            and all(self.nc_flags)
            and self.bounds_ok
        )

    def as_dict(self) -> dict:
        return {
            "is_hadamard": self.is_hadamard,
            "gram_ok": self.gram_ok,
            "balance_ok": self.balance_ok,
            "nc_flags": list(self.nc_flags),
            "bounds_ok": self.bounds_ok,
            "c_flags": list(self.c_flags),
            "y_invariant": self.y_invariant,
        }


def verify(blocks: KimuraBlocks) -> VerificationReport:
    """Run every check on the blocks and the assembled matrix."""
    H = assemble(blocks)
    eq = check_block_equations(*blocks.sign_blocks())
    profile = parameter_profile(blocks)
    return VerificationReport(
        is_hadamard=is_hadamard(H),
        gram_ok=all(eq.gram),
        balance_ok=all(eq.balance),
        nc_flags=check_nc(profile, blocks.k),
        bounds_ok=check_bounds(profile, blocks.k),
        c_flags=check_c_conditions(blocks),
        y_invariant=blocks.is_y_invariant(),
    )


def decompose(H: np.ndarray, k: int) -> KimuraBlocks:
    """Recover the four block elements; rejects any other bordering."""
    H = np.asarray(H, dtype=np.int64)
    n = 8 * k + 4
    m = 2 * k
    if H.shape != (n, n):
        raise NotKimuraForm(f"expected shape {(n, n)}, got {H.shape}")
    if not np.all(np.abs(H) == 1):
        raise NotSignMatrix("entries outside {-1, +1}")
    if not np.array_equal(H[:4, :4], BORDER4):
        raise NotKimuraForm("corner border mismatch")
    for bj in range(4):
        cols = slice(4 + bj * m, 4 + (bj + 1) * m)
        for i in range(4):
            if not np.all(H[i, cols] == ROW_STRIP[i, bj]):
                raise NotKimuraForm(f"row strip mismatch at row {i}, block column {bj}")
    for bi in range(4):
        rows = slice(4 + bi * m, 4 + (bi + 1) * m)
        for j in range(4):
            if not np.all(H[rows, j] == COL_STRIP[bi, j]):
                raise NotKimuraForm(f"column strip mismatch at block row {bi}, column {j}")
    slots = [
        [H[4 + bi * m: 4 + (bi + 1) * m, 4 + bj * m: 4 + (bj + 1) * m] for bj in range(4)]
        for bi in range(4)
    ]
    letters = slots[0]
    for bi in range(4):
        for bj in range(4):
            letter, sign = BLOCK_GRID[bi][bj]
            if not np.array_equal(slots[bi][bj], sign * letters[letter]):
                raise NotKimuraForm(f"block pattern mismatch at slot ({bi}, {bj})")
    elements = []
    for W in letters:
        w = ga.GroupRingElement(k, tuple((W[0] + 1) // 2))
        if not np.array_equal(ga.to_pm(ga.right_regular(w)), W):
            raise NotDihedralType("block is not a right-regular sign image")
        elements.append(w)
    return KimuraBlocks(k, *elements)
