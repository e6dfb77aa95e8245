"""Exhaustive search for block elements yielding Hadamard matrices at small k.

Profiles from the counting conditions drive the outer loop; candidate
elements are enumerated per profile and joined meet-in-the-middle on the
diagonal Gram identity before the remaining identities and a full matrix
verification run on the survivors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from . import group_algebra as ga
from .errors import UnsupportedParameter
from .kimura import (
    KimuraBlocks,
    ParameterProfile,
    check_bounds,
    check_nc,
    verify,
)


@dataclass(frozen=True)
class SearchSpec:
    k: int
    require_y_invariant: bool = False
    c_filters: frozenset = frozenset()
    profile_whitelist: tuple | None = None
    node_cap: int | None = None
    time_budget: float | None = None
    force: bool = False

    def __post_init__(self):
        if self.k < 3 or self.k % 2 == 0:
            raise UnsupportedParameter(f"search needs odd k >= 3, got {self.k}")
        object.__setattr__(self, "c_filters", frozenset(self.c_filters))


@dataclass
class SearchResult:
    blocks: tuple
    complete: bool
    nodes: int
    elapsed: float


def enumerate_profiles(k: int) -> list:
    """All support-count profiles passing the counting conditions, lex order."""
    profiles = []
    for a1 in range(0, k):
        a2 = k - 1 - a1
        for b1 in range(0, k + 1):
            for c1 in range(0, k + 1):
                for d1 in range(0, k + 1):
                    profile = ParameterProfile(
                        a1, a2, b1, k - b1, c1, k - c1, d1, k - d1
                    )
                    if not all(check_nc(profile, k)):
                        continue
                    if not check_bounds(profile, k):
                        continue
                    profiles.append(profile)
    profiles.sort(key=lambda p: p.as_tuple())
    return profiles


def _subsets_of_size(positions: list, size: int) -> list:
    return [frozenset(c) for c in combinations(positions, size)]


def _y_invariant_supports(k: int, size: int) -> list:
    """Supports of the given size that are unions of inversion orbits."""
    orbit_list = [(0,)] + [(i, k - i) for i in range(1, (k + 1) // 2)]
    out = []
    for mask in range(1 << len(orbit_list)):
        chosen = [orbit_list[i] for i in range(len(orbit_list)) if mask >> i & 1]
        total = sum(len(o) for o in chosen)
        if total == size:
            out.append(frozenset(p for o in chosen for p in o))
    return out


def _half_supports(k: int, size: int, y_invariant: bool) -> list:
    if y_invariant:
        return _y_invariant_supports(k, size)
    return _subsets_of_size(list(range(k)), size)


def _element_from_halves(k: int, rot: frozenset, refl: frozenset) -> ga.GroupRingElement:
    coeffs = [0] * (2 * k)
    for r in rot:
        coeffs[r] = 1
    for r in refl:
        coeffs[k + r] = 1
    return ga.GroupRingElement(k, tuple(coeffs))


def _candidates(k: int, size1: int, size2: int, y_invariant: bool,
                c5_role: str | None) -> list:
    """Elements with half supports of the given sizes, optionally C5-shaped."""
    out = []
    if c5_role is not None:
        # the reflection half determines the rotation half
        full = frozenset(range(k))
        for refl in _half_supports(k, size2, y_invariant):
            if c5_role == "a":
                if 0 in refl:
                    continue
                rot = full - {0} - refl
            elif c5_role == "b":
                rot = full - refl
            else:  # c, d:  rotation half = identity + reflection half
                if 0 in refl:
                    continue
                rot = refl | {0}
            if len(rot) != size1:
                continue
            out.append(_element_from_halves(k, frozenset(rot), refl))
        return out
    for rot in _half_supports(k, size1, y_invariant):
        for refl in _half_supports(k, size2, y_invariant):
            out.append(_element_from_halves(k, rot, refl))
    return out


def search(spec: SearchSpec) -> SearchResult:
    """Exhaustive profile-driven search; sound and complete within the spec."""
    k = spec.k
    use_c5 = 5 in spec.c_filters
    if not spec.force:
        if k == 5 and not (spec.require_y_invariant or use_c5):
            raise UnsupportedParameter(
                "k=5 requires y-invariance or the C5 filter (or force=True)"
            )
        if k > 5:
            raise UnsupportedParameter(f"k={k} requires force=True")
    start = time.monotonic()
    deadline = start + spec.time_budget if spec.time_budget else None
    profiles = enumerate_profiles(k)
    if spec.profile_whitelist is not None:
        allowed = {tuple(p) for p in spec.profile_whitelist}
        profiles = [p for p in profiles if p.as_tuple() in allowed]
    if 1 in spec.c_filters:
        profiles = [p for p in profiles if p.a1 >= p.a2]
    if 2 in spec.c_filters:
        profiles = [p for p in profiles if p.b1 % 2 and p.c1 % 2 and p.d1 % 2]
    if 3 in spec.c_filters:
        profiles = [p for p in profiles if p.b1 >= p.c1 and p.b1 >= p.d1]

    want = ga.GroupRingElement(
        k, tuple((2 * k + 1 if i == 0 else 0) + (2 * k - 2) for i in range(2 * k))
    )
    zero = ga.ring_zero(k)
    hits = {}
    nodes = 0
    complete = True

    def out_of_budget() -> bool:
        return deadline is not None and time.monotonic() > deadline

    for profile in profiles:
        if out_of_budget() or (spec.node_cap and nodes > spec.node_cap):
            complete = False
            break
        cand = {}
        sizes = {
            "a": (profile.a1, profile.a2),
            "b": (profile.b1, profile.b2),
            "c": (profile.c1, profile.c2),
            "d": (profile.d1, profile.d2),
        }
        for letter, (s1, s2) in sizes.items():
            role = letter if use_c5 else None
            cand[letter] = [
                (w, (w * w.star()).coeffs)
                for w in _candidates(k, s1, s2, spec.require_y_invariant, role)
            ]
        # meet in the middle on the diagonal identity
        right = {}
        for c_el, fc in cand["c"]:
            for d_el, fd in cand["d"]:
                key = tuple(x + y for x, y in zip(fc, fd))
                right.setdefault(key, []).append((c_el, d_el))
        for a_el, fa in cand["a"]:
            for b_el, fb in cand["b"]:
                nodes += 1
                if nodes % 4096 == 0 and out_of_budget():
                    complete = False
                    break
                need = tuple(w - x - y for w, x, y in zip(want.coeffs, fa, fb))
                for c_el, d_el in right.get(need, ()):
                    nodes += 1
                    if -(a_el * b_el.star()) + b_el * a_el.star() \
                            + c_el * d_el.star() - d_el * c_el.star() != zero:
                        continue
                    if -(a_el * c_el.star()) - b_el * d_el.star() \
                            + c_el * a_el.star() + d_el * b_el.star() != zero:
                        continue
                    if a_el * d_el.star() - b_el * c_el.star() \
                            + c_el * b_el.star() - d_el * a_el.star() != zero:
                        continue
                    blocks = KimuraBlocks(k, a_el, b_el, c_el, d_el)
                    report = verify(blocks)
                    if report.is_hadamard:
                        key = tuple(w.coeffs for w in blocks.elements)
                        hits[key] = blocks
            else:
                continue
            break
        if spec.node_cap and nodes > spec.node_cap:
            complete = False
            break

    ordered = tuple(hits[key] for key in sorted(hits))
    return SearchResult(
        blocks=ordered,
        complete=complete,
        nodes=nodes,
        elapsed=time.monotonic() - start,
    )
