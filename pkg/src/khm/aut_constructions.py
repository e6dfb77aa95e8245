"""Explicit automorphism families of the bordered four-block matrices.

All monomial matrices are built literally from their block formulas, with
permutation matrices in the row convention ``P[i, sigma(i)] = 1``.  Every
constructor returns an ``AutPair``; validity on a concrete matrix is always
checked with ``is_automorphism``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import group_algebra as ga
from . import signed_perm as sp
from .errors import HypothesisViolated, NotAnAutomorphism, UnsupportedParameter
from .kimura import KimuraBlocks, assemble
from .signed_perm import AutPair, PermGroup, SignedPermutation, is_automorphism


# ---------------------------------------------------------------------------
# Small matrix helpers
# ---------------------------------------------------------------------------

def _block_diag(*mats) -> np.ndarray:
    mats = [np.asarray(m, dtype=np.int64) for m in mats]
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.int64)
    pos = 0
    for m in mats:
        size = m.shape[0]
        out[pos: pos + size, pos: pos + size] = m
        pos += size
    return out


def _block_antidiag(*mats) -> np.ndarray:
    """Blocks placed from top-right to bottom-left."""
    mats = [np.asarray(m, dtype=np.int64) for m in mats]
    sizes = [m.shape[0] for m in mats]
    n = sum(sizes)
    out = np.zeros((n, n), dtype=np.int64)
    row = 0
    col = n
    for m, size in zip(mats, sizes):
        out[row: row + size, col - size: col] = m
        row += size
        col -= size
    return out


def _perm_matrix(images: dict, size: int) -> np.ndarray:
    """Row-convention permutation matrix from a (partial) 1-based cycle map."""
    out = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        out[i, images.get(i, i)] = 1
    return out


def _cycle_matrix(k: int) -> np.ndarray:
    """The k-cycle 1 -> 2 -> ... -> k -> 1."""
    return _perm_matrix({i: (i + 1) % k for i in range(k)}, k)


def _inversion_matrix(k: int) -> np.ndarray:
    """The involution fixing 1 and swapping i with k+2-i (1-based)."""
    return _perm_matrix({i: (-i) % k for i in range(k)}, k)


# 4x4 permutation matrices used by the block constructions.
_P_12_34 = _perm_matrix({0: 1, 1: 0, 2: 3, 3: 2}, 4)   # (1,2)(3,4)
_P_13_24 = _perm_matrix({0: 2, 2: 0, 1: 3, 3: 1}, 4)   # (1,3)(2,4)
_P_234 = _perm_matrix({1: 2, 2: 3, 3: 1}, 4)           # (2,3,4)
_P_132 = _perm_matrix({0: 2, 2: 1, 1: 0}, 4)           # (1,3,2)


def _bar_identity(k: int) -> np.ndarray:
    """bdiag(I_k, I_k): swaps the two halves of a block of size 2k."""
    eye = np.eye(k, dtype=np.int64)
    return _block_antidiag(eye, eye)


def _pair_from_matrices(r: np.ndarray, s: np.ndarray) -> AutPair:
    return AutPair(SignedPermutation.from_matrix(r), SignedPermutation.from_matrix(s))


# ---------------------------------------------------------------------------
# Generator tags
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorTag:
    name: str
    params: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {"name": self.name, "params": list(self.params)}


# ---------------------------------------------------------------------------
# The strong generators sigma1 .. sigma5 and -I
# ---------------------------------------------------------------------------

def sigma1(k: int) -> AutPair:
    """Order-k rotation acting simultaneously inside every block."""
    if k % 2 == 0 or k < 3:
        raise UnsupportedParameter(f"need odd k >= 3, got {k}")
    E = _block_diag(_cycle_matrix(k), _cycle_matrix(k))
    F = _block_diag(np.eye(4, dtype=np.int64), E, E, E, E)
    return AutPair.strong(SignedPermutation.from_matrix(F))


def sigma2(k: int) -> AutPair:
    """Involution transposing each block's circulant halves."""
    if k % 2 == 0 or k < 3:
        raise UnsupportedParameter(f"need odd k >= 3, got {k}")
    q = _inversion_matrix(k)
    K = _block_antidiag(q, q)
    L = _block_diag(np.eye(4, dtype=np.int64), K, K, K, K)
    return AutPair.strong(SignedPermutation.from_matrix(L))


def sigma3(k: int) -> AutPair:
    """First order-4 generator of the quaternion block action."""
    eye2k = np.eye(2 * k, dtype=np.int64)
    r = _block_diag(
        _block_antidiag(*(np.array([[s]]) for s in (-1, 1, -1, 1))),
        np.kron(np.diag([-1, 1, -1, 1]).astype(np.int64) @ _P_12_34, eye2k),
    )
    s = _block_diag(
        np.diag([1, -1, -1, 1]).astype(np.int64) @ _P_13_24,
        np.kron(np.diag([-1, 1, 1, -1]).astype(np.int64) @ _P_12_34, eye2k),
    )
    return _pair_from_matrices(r, s)


def sigma4(k: int) -> AutPair:
    """Second order-4 generator of the quaternion block action."""
    eye2k = np.eye(2 * k, dtype=np.int64)
    r = _block_diag(
        np.diag([-1, 1, 1, -1]).astype(np.int64) @ _P_12_34,
        np.kron(np.diag([1, -1, -1, 1]).astype(np.int64) @ _P_13_24, eye2k),
    )
    s = _block_diag(
        _block_antidiag(*(np.array([[v]]) for v in (1, 1, -1, -1))),
        np.kron(np.diag([1, 1, -1, -1]).astype(np.int64) @ _P_13_24, eye2k),
    )
    return _pair_from_matrices(r, s)


def sigma5(k: int) -> AutPair:
    """Half-swapping involution; an automorphism only of y-invariant matrices."""
    P = _bar_identity(k)
    Q = _block_diag(np.eye(4, dtype=np.int64), P, P, P, P)
    return AutPair.strong(SignedPermutation.from_matrix(Q))


def neg_id(n: int) -> AutPair:
    return AutPair.neg_identity(n)


# ---------------------------------------------------------------------------
# Automorphisms induced by dihedral-group automorphisms
# ---------------------------------------------------------------------------

def _phi_inverse_matrix(phi: ga.DihedralAut) -> np.ndarray:
    return ga.aut_perm_matrix(phi.inverse())


def holo_fix(phi: ga.DihedralAut) -> AutPair:
    """Strong pair conjugating every block by the automorphism's permutation.

    An automorphism of the assembled matrix whenever phi fixes all four
    block elements.
    """
    p_inv = _phi_inverse_matrix(phi)
    E = _block_diag(np.eye(4, dtype=np.int64), p_inv, p_inv, p_inv, p_inv)
    return AutPair.strong(SignedPermutation.from_matrix(E))


def holo_3cycle(phi: ga.DihedralAut) -> AutPair:
    """Pair built for an automorphism fixing a and cycling b -> d -> c -> b.

    For the opposite orientation (b -> c -> d -> b) pass ``phi.inverse()``.
    """
    k = phi.k
    p_inv = _phi_inverse_matrix(phi)
    p3 = np.diag([1, 1, -1, -1]).astype(np.int64) @ _P_234
    r = _block_diag(p3, np.kron(p3, p_inv))
    s = _block_diag(_P_132, np.kron(_P_234, p_inv))
    return _pair_from_matrices(r, s)


def _swap_structural_matrices(k: int) -> tuple:
    """The strong swap matrix M and the alternative pair (M1, M2)."""
    eye2k = np.eye(2 * k, dtype=np.int64)
    bar = _bar_identity(k)
    border = _P_12_34 @ np.diag([1, 1, -1, -1]).astype(np.int64)
    m = _block_diag(border, eye2k, eye2k, -bar, -bar)
    m1 = _block_diag(
        _block_antidiag(*(np.array([[1]]) for _ in range(4))),
        _block_antidiag(eye2k, eye2k, bar, bar),
    )
    m2 = _block_diag(
        np.diag([1, -1, -1, 1]).astype(np.int64),
        _block_antidiag(-eye2k, eye2k, bar, -bar),
    )
    return m, m1, m2


def check_swap_hypotheses(blocks: KimuraBlocks, phi: ga.DihedralAut) -> None:
    """Raise HypothesisViolated naming the first failing swap hypothesis."""
    if not blocks.is_y_invariant():
        raise HypothesisViolated("blocks are not y-invariant")
    y = ga.from_indices(blocks.k, [blocks.k])
    if blocks.c * y + blocks.d != ga.full_group_sum(blocks.k):
        raise HypothesisViolated("c*y + d is not the full group sum")
    if ga.aut_apply(phi, blocks.a) != blocks.a:
        raise HypothesisViolated("phi does not fix a")
    if ga.aut_apply(phi, blocks.b) != blocks.b:
        raise HypothesisViolated("phi does not fix b")
    if ga.aut_apply(phi, blocks.c) != blocks.d or ga.aut_apply(phi, blocks.d) != blocks.c:
        raise HypothesisViolated("phi does not swap c and d")


def holo_swap_cd(phi: ga.DihedralAut, blocks: KimuraBlocks,
                 alternative: bool = False) -> AutPair:
    """Automorphism for phi fixing a, b and swapping c, d (hard-checked).

    With ``alternative=True`` the non-strong variant pair is returned.
    """
    check_swap_hypotheses(blocks, phi)
    k = phi.k
    p_inv = _phi_inverse_matrix(phi)
    m_phi = _block_diag(np.eye(4, dtype=np.int64), p_inv, p_inv, p_inv, p_inv)
    m, m1, m2 = _swap_structural_matrices(k)
    if alternative:
        return _pair_from_matrices(m_phi @ m1, m_phi @ m2)
    return _pair_from_matrices(m_phi @ m, m_phi @ m)


def swap_structural_pair(k: int) -> AutPair:
    """The bare (M, M) pair mapping H(A,B,C,D) to H(A,B,D,C)."""
    m, _, _ = _swap_structural_matrices(k)
    return _pair_from_matrices(m, m)


# ---------------------------------------------------------------------------
# Holomorph scan and the constructed subgroup
# ---------------------------------------------------------------------------

def scan_holomorph(blocks: KimuraBlocks) -> list:
    """All nontrivial dihedral automorphisms matching a proven pattern.

    Returns (phi, kind) with kind in {"fix", "3cycle", "swap_cd"}; 3-cycles
    are reported in either orientation.  Hypotheses are exact group-ring
    identities.
    """
    k = blocks.k
    a, b, c, d = blocks.elements
    y = ga.from_indices(k, [k])
    g_sum = ga.full_group_sum(k)
    y_inv = blocks.is_y_invariant()
    swap_sum_ok = blocks.c * y + blocks.d == g_sum
    hits = []
    for phi in ga.all_dihedral_auts(k):
        if phi.is_identity():
            continue
        fa = ga.aut_apply(phi, a)
        if fa != a:
            continue
        fb, fc, fd = (ga.aut_apply(phi, w) for w in (b, c, d))
        if (fb, fc, fd) == (b, c, d):
            hits.append((phi, "fix"))
            continue
        distinct = len({b.coeffs, c.coeffs, d.coeffs}) == 3
        if distinct and ((fb, fc, fd) == (c, d, b) or (fb, fc, fd) == (d, b, c)):
            hits.append((phi, "3cycle"))
            continue
        if y_inv and swap_sum_ok and (fb, fc, fd) == (b, d, c):
            hits.append((phi, "swap_cd"))
    return hits


def pair_for_hit(blocks: KimuraBlocks, phi: ga.DihedralAut, kind: str) -> AutPair:
    if kind == "fix":
        return holo_fix(phi)
    if kind == "3cycle":
        if ga.aut_apply(phi, blocks.b) == blocks.d:
            return holo_3cycle(phi)
        return holo_3cycle(phi.inverse())
    if kind == "swap_cd":
        return holo_swap_cd(phi, blocks)
    raise ValueError(f"unknown hit kind {kind!r}")


@dataclass(frozen=True)
class ConstructedSubgroup:
    group: PermGroup
    tagged_generators: tuple   # of (GeneratorTag, AutPair)
    holomorph_hits: tuple      # of (DihedralAut, kind)

    @property
    def order(self) -> int:
        return self.group.order


def constructed_subgroup(H: np.ndarray, blocks: KimuraBlocks,
                         cap: int = sp.DEFAULT_CAP) -> ConstructedSubgroup:
    """Closure of every applicable constructed generator, all verified on H."""
    k = blocks.k
    tagged = [
        (GeneratorTag("sigma1", (k,)), sigma1(k)),
        (GeneratorTag("sigma2", (k,)), sigma2(k)),
        (GeneratorTag("sigma3", (k,)), sigma3(k)),
        (GeneratorTag("sigma4", (k,)), sigma4(k)),
    ]
    if blocks.is_y_invariant():
        tagged.append((GeneratorTag("sigma5", (k,)), sigma5(k)))
    hits = scan_holomorph(blocks)
    for phi, kind in hits:
        tag = GeneratorTag(f"holo_{kind}", (phi.i, phi.j))
        tagged.append((tag, pair_for_hit(blocks, phi, kind)))
    for tag, pair in tagged:
        if not is_automorphism(pair, H):
            raise NotAnAutomorphism(f"constructed generator {tag.name}{tag.params} failed")
    group = PermGroup.generate([pair for _, pair in tagged], degree=8 * k + 4, cap=cap)
    return ConstructedSubgroup(group, tuple(tagged), tuple(hits))


def subgroup_report(sub: ConstructedSubgroup, blocks: KimuraBlocks) -> dict:
    """JSON-ready summary of the constructed subgroup."""
    return {
        "generators": [
            {"tag": tag.as_dict(), "order": pair.order(), "strong": pair.is_strong()}
            for tag, pair in sub.tagged_generators
        ],
        "subgroup_order": sub.order,
        "y_invariant": blocks.is_y_invariant(),
        "holomorph_hits": [
            {"i": phi.i, "j": phi.j, "kind": kind} for phi, kind in sub.holomorph_hits
        ],
    }


# ---------------------------------------------------------------------------
# Induced action on the rows
# ---------------------------------------------------------------------------

def induced_action_report(group: PermGroup, k: int) -> dict:
    """Orbit and block-system analysis of the unsigned row action."""
    action = sp.project_unsigned(group)
    orbit_list = sp.orbits(action)
    report = {
        "projected_order": action.order,
        "orbit_sizes": [len(o) for o in orbit_list],
        "orbits": [],
    }
    for orbit in orbit_list:
        restricted = sp.restrict_to_orbit(action, orbit)
        entry = {
            "points": list(orbit),
            "size": len(orbit),
            "restricted_order": restricted.order,
        }
        if len(orbit) > 1:
            systems = sp.all_minimal_block_systems(restricted)
            entry["primitive"] = not systems
            entry["minimal_block_systems"] = [
                [list(cell) for cell in system] for system in systems
            ]
        if len(orbit) <= 8:
            entry["fingerprint"] = sp.group_fingerprint(restricted).as_tuple()
        if len(orbit) == 8 * k and orbit[0] == 4:
            cells = [tuple(range(4 + i * k, 4 + (i + 1) * k)) for i in range(8)]
            local = [tuple(p - 4 for p in cell) for cell in cells]
            natural = {"num_cells": 8, "cell_size": k,
                       "is_block_system": sp.is_block_system(restricted, local)}
            if natural["is_block_system"]:
                quotient = sp.induced_block_action(restricted, local)
                cell_action = sp.cell_stabilizer_action(restricted, local[0])
                natural["quotient_order"] = quotient.order
                natural["quotient_fingerprint"] = sp.group_fingerprint(quotient).as_tuple()
                natural["cell_action_order"] = cell_action.order
                natural["cell_action_fingerprint"] = sp.group_fingerprint(cell_action).as_tuple()
            entry["natural_cells"] = natural
        report["orbits"].append(entry)
    return report
