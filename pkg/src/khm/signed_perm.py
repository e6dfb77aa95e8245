"""Signed permutations, automorphism pairs, and small permutation groups.

Matrix semantics throughout: a signed permutation ``R`` with parts
``(perm, signs)`` is the monomial matrix with ``R[i, perm[i]] = signs[i]``,
so matrix products compose permutations left-to-right as functions.
Groups are materialized outright; everything here targets desk scale
(a few thousand elements).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DimensionMismatch, NotMonomial, NotTransitive, ParseError

DEFAULT_CAP = 1_000_000


# ---------------------------------------------------------------------------
# Signed permutations and automorphism pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignedPermutation:
    perm: tuple
    signs: tuple

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise NotMonomial("perm is not a bijection on [0, n)")
        if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
            raise NotMonomial("signs must be a +-1 vector matching the degree")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def neg_identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (-1,) * n)

    @classmethod
    def from_matrix(cls, mat: np.ndarray) -> "SignedPermutation":
        mat = np.asarray(mat)
        n = mat.shape[0]
        if mat.shape != (n, n):
            raise NotMonomial("matrix is not square")
        perm = [-1] * n
        signs = [0] * n
        for i in range(n):
            nz = np.flatnonzero(mat[i])
            if len(nz) != 1 or mat[i, nz[0]] not in (1, -1):
                raise NotMonomial(f"row {i} is not monomial")
            perm[i] = int(nz[0])
            signs[i] = int(mat[i, nz[0]])
        return cls(tuple(perm), tuple(signs))

    def to_matrix(self) -> np.ndarray:
        n = self.n
        mat = np.zeros((n, n), dtype=np.int64)
        mat[np.arange(n), list(self.perm)] = self.signs
        return mat

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """Matrix product self @ other."""
        if self.n != other.n:
            raise DimensionMismatch(f"degrees differ: {self.n} vs {other.n}")
        perm = tuple(other.perm[p] for p in self.perm)
        signs = tuple(s * other.signs[p] for s, p in zip(self.signs, self.perm))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        n = self.n
        perm = [0] * n
        signs = [1] * n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(s == 1 for s in self.signs)

    def is_plain_permutation(self) -> bool:
        return all(s == 1 for s in self.signs)

    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.n))

    def order(self) -> int:
        result = 1
        for cycle in _cycles_of(self.perm):
            sign = 1
            for i in cycle:
                sign *= self.signs[i]
            length = len(cycle) * (2 if sign == -1 else 1)
            result = math.lcm(result, length)
        return result

    def apply_to_rows(self, mat: np.ndarray) -> np.ndarray:
        """Return self @ mat."""
        mat = np.asarray(mat)
        return np.array(self.signs).reshape(-1, 1) * mat[list(self.perm)]

    def sort_key(self) -> tuple:
        return (self.perm, self.signs)


def _cycles_of(perm: Sequence[int]) -> list:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        cycles.append(cycle)
    return cycles


@dataclass(frozen=True)
class AutPair:
    """Pair (R, S) acting on a matrix by H -> R H S^T."""

    r: SignedPermutation
    s: SignedPermutation

    def __post_init__(self):
        if self.r.n != self.s.n:
            raise DimensionMismatch("components have different degrees")

    @property
    def n(self) -> int:
        return self.r.n

    @classmethod
    def identity(cls, n: int) -> "AutPair":
        return cls(SignedPermutation.identity(n), SignedPermutation.identity(n))

    @classmethod
    def neg_identity(cls, n: int) -> "AutPair":
        return cls(SignedPermutation.neg_identity(n), SignedPermutation.neg_identity(n))

    @classmethod
    def strong(cls, r: SignedPermutation) -> "AutPair":
        return cls(r, r)

    def is_strong(self) -> bool:
        return self.r == self.s

    def compose(self, other: "AutPair") -> "AutPair":
        return AutPair(self.r.compose(other.r), self.s.compose(other.s))

    def inverse(self) -> "AutPair":
        return AutPair(self.r.inverse(), self.s.inverse())

    def is_identity(self) -> bool:
        return self.r.is_identity() and self.s.is_identity()

    def order(self) -> int:
        return math.lcm(self.r.order(), self.s.order())

    def apply(self, H: np.ndarray) -> np.ndarray:
        """R H S^T via pure index arithmetic."""
        H = np.asarray(H)
        if H.shape != (self.n, self.n):
            raise DimensionMismatch(f"matrix shape {H.shape} does not match degree {self.n}")
        sub = H[np.ix_(list(self.r.perm), list(self.s.perm))]
        return np.outer(self.r.signs, self.s.signs) * sub

    def sort_key(self) -> tuple:
        return self.r.sort_key() + self.s.sort_key()


def apply_pair(pair: AutPair, H: np.ndarray) -> np.ndarray:
    return pair.apply(H)


def is_automorphism(pair: AutPair, H: np.ndarray) -> bool:
    return np.array_equal(pair.apply(H), np.asarray(H))


# ---------------------------------------------------------------------------
# Materialized groups
# ---------------------------------------------------------------------------

def _key_of(e) -> tuple:
    return e if isinstance(e, tuple) else e.sort_key()


def _compose(e1, e2):
    if isinstance(e1, tuple):
        return tuple(e2[p] for p in e1)
    return e1.compose(e2)


def _inverse(e):
    if isinstance(e, tuple):
        out = [0] * len(e)
        for i, p in enumerate(e):
            out[p] = i
        return tuple(out)
    return e.inverse()


def _identity_like(e, degree: int):
    if isinstance(e, tuple):
        return tuple(range(degree))
    if isinstance(e, SignedPermutation):
        return SignedPermutation.identity(degree)
    return AutPair.identity(degree)


class PermGroup:
    """Finite group of plain permutations (tuples), SignedPermutations, or AutPairs."""

    def __init__(self, degree: int, generators: list, elements: list):
        self.degree = degree
        self.generators = list(generators)
        self.elements = sorted(elements, key=_key_of)
        self.order = len(self.elements)
        self._element_set = set(self.elements)

    @classmethod
    def generate(cls, generators: Iterable, degree: int | None = None,
                 cap: int = DEFAULT_CAP, kind: str = "perm") -> "PermGroup":
        """Breadth-first closure of the generators (inverses included)."""
        if cap < 1:
            raise ValueError("cap must be positive")
        generators = list(generators)
        if degree is None:
            if not generators:
                raise ValueError("degree required for an empty generating set")
            g0 = generators[0]
            degree = len(g0) if isinstance(g0, tuple) else g0.n
        proto = generators[0] if generators else (
            tuple(range(degree)) if kind == "perm"
            else SignedPermutation.identity(degree) if kind == "signed"
            else AutPair.identity(degree)
        )
        ident = _identity_like(proto, degree)
        mult = []
        for g in generators:
            if g not in mult:
                mult.append(g)
            gi = _inverse(g)
            if gi not in mult:
                mult.append(gi)
        elements = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for e in frontier:
                for g in mult:
                    prod = _compose(e, g)
                    if prod not in elements:
                        elements.add(prod)
                        new.append(prod)
                        if len(elements) > cap:
                            raise CapExceeded(f"closure exceeded cap {cap}")
            frontier = new
        return cls(degree, generators, list(elements))

    @classmethod
    def from_elements(cls, elements: Iterable, degree: int) -> "PermGroup":
        return cls(degree, [], list(set(elements)))

    def __contains__(self, e) -> bool:
        return e in self._element_set

    def compose(self, e1, e2):
        return _compose(e1, e2)

    def inverse(self, e):
        return _inverse(e)

    def identity(self):
        return _identity_like(self.elements[0], self.degree)

    def element_order(self, e) -> int:
        ident = self.identity()
        power = e
        order = 1
        while power != ident:
            power = _compose(power, e)
            order += 1
        return order


def closure(generators: Iterable, cap: int = DEFAULT_CAP,
            degree: int | None = None, kind: str = "perm") -> PermGroup:
    return PermGroup.generate(generators, degree=degree, cap=cap, kind=kind)


def project_unsigned(group_or_pairs) -> PermGroup:
    """The plain permutation group of R-parts of a closed set of pairs."""
    if isinstance(group_or_pairs, PermGroup):
        pairs = group_or_pairs.elements
        degree = group_or_pairs.degree
    else:
        pairs = list(group_or_pairs)
        degree = pairs[0].n
    perms = {pair.r.perm for pair in pairs}
    return PermGroup.from_elements(perms, degree)


def projection_kernel(group: PermGroup) -> list:
    """Elements of a pair group whose R-part is diagonal."""
    return [pair for pair in group.elements if pair.r.is_diagonal()]


# ---------------------------------------------------------------------------
# Orbits, blocks, primitivity (plain permutation groups)
# ---------------------------------------------------------------------------

def orbits(group: PermGroup, domain: Iterable | None = None) -> list:
    """Orbits of the group on the domain, each sorted, ordered by minimum."""
    domain = list(domain) if domain is not None else list(range(group.degree))
    gens = group.generators if group.generators else group.elements
    remaining = set(domain)
    result = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        frontier = [start]
        while frontier:
            point = frontier.pop()
            for g in gens:
                image = g[point]
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        if not orbit <= remaining:
            raise ValueError("domain is not a union of orbits")
        remaining -= orbit
        result.append(tuple(sorted(orbit)))
    return result


def restrict_to_orbit(group: PermGroup, orbit: Sequence[int]) -> PermGroup:
    """The action induced on one orbit, reindexed to 0..len(orbit)-1."""
    orbit = sorted(orbit)
    index = {p: i for i, p in enumerate(orbit)}
    elements = {tuple(index[e[p]] for p in orbit) for e in group.elements}
    return PermGroup.from_elements(elements, len(orbit))


def _check_transitive(group: PermGroup) -> None:
    if len(orbits(group)) != 1:
        raise NotTransitive("block queries require a transitive group")


def minimal_block_partition(group: PermGroup, alpha: int, beta: int) -> tuple:
    """Finest G-congruence identifying alpha and beta, as a sorted partition."""
    _check_transitive(group)
    n = group.degree
    gens = group.generators if group.generators else group.elements
    parent = list(range(n))

    def find(u: int) -> int:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u: int, v: int) -> bool:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[max(ru, rv)] = min(ru, rv)
        return True

    queue = [(alpha, beta)]
    union(alpha, beta)
    while queue:
        u, v = queue.pop()
        for g in gens:
            a, b = g[u], g[v]
            if union(a, b):
                queue.append((a, b))
    cells = {}
    for p in range(n):
        cells.setdefault(find(p), []).append(p)
    return tuple(sorted(tuple(sorted(c)) for c in cells.values()))


def minimal_block_containing(group: PermGroup, pair: tuple) -> tuple:
    """The minimal block that contains both points of the pair."""
    partition = minimal_block_partition(group, pair[0], pair[1])
    for cell in partition:
        if pair[0] in cell:
            return cell
    raise AssertionError("partition lost a point")


def all_minimal_block_systems(group: PermGroup) -> list:
    """Every distinct proper partition arising from a minimal block seed."""
    _check_transitive(group)
    n = group.degree
    seen = set()
    systems = []
    for beta in range(1, n):
        partition = minimal_block_partition(group, 0, beta)
        if len(partition) in (1, n):
            continue
        if partition not in seen:
            seen.add(partition)
            systems.append(partition)
    systems.sort(key=lambda part: (len(part[0]), part))
    return systems


def is_primitive(group: PermGroup) -> bool:
    _check_transitive(group)
    return group.degree == 1 or not all_minimal_block_systems(group)


def is_block_system(group: PermGroup, partition: Sequence[Sequence[int]]) -> bool:
    """Check that every group element maps cells onto cells."""
    cell_of = {}
    for idx, cell in enumerate(partition):
        for p in cell:
            cell_of[p] = idx
    gens = group.generators if group.generators else group.elements
    for g in gens:
        for cell in partition:
            images = {cell_of.get(g[p], -1) for p in cell}
            if len(images) != 1 or -1 in images:
                return False
    return True


def induced_block_action(group: PermGroup, partition: Sequence[Sequence[int]]) -> PermGroup:
    """The permutation group induced on the cells of a block system."""
    cells = sorted((tuple(sorted(c)) for c in partition), key=lambda c: c[0])
    cell_of = {}
    for idx, cell in enumerate(cells):
        for p in cell:
            cell_of[p] = idx
    if not is_block_system(group, cells):
        raise NotTransitive("partition is not a block system for the group")
    images = {tuple(cell_of[e[cell[0]]] for cell in cells) for e in group.elements}
    return PermGroup.from_elements(images, len(cells))


def cell_stabilizer_action(group: PermGroup, cell: Sequence[int]) -> PermGroup:
    """Setwise stabilizer of the cell, restricted to it and reindexed."""
    cell = sorted(cell)
    cell_set = set(cell)
    index = {p: i for i, p in enumerate(cell)}
    restricted = set()
    for e in group.elements:
        if all(e[p] in cell_set for p in cell):
            restricted.add(tuple(index[e[p]] for p in cell))
    return PermGroup.from_elements(restricted, len(cell))


# ---------------------------------------------------------------------------
# Fingerprints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    order: int
    exponent: int
    center_order: int
    derived_order: int
    abelianization: tuple

    def as_tuple(self) -> tuple:
        return (
            self.order,
            self.exponent,
            self.center_order,
            self.derived_order,
            list(self.abelianization),
        )


def _subgroup_closure(seeds: set, ident) -> set:
    mult = set(seeds) | {_inverse(s) for s in seeds}
    elements = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for e in frontier:
            for g in mult:
                prod = _compose(e, g)
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
        frontier = new
    return elements


def _derived_subgroup_elements(group: PermGroup) -> set:
    """Normal closure of the commutators of the generators."""
    gens = group.generators if group.generators else group.elements
    ident = group.identity()
    seeds = set()
    for g in gens:
        for h in gens:
            seeds.add(_compose(_compose(_inverse(g), _inverse(h)), _compose(g, h)))
    while True:
        sub = _subgroup_closure(seeds, ident)
        conjugates = {
            _compose(_compose(_inverse(g), e), g) for e in sub for g in gens
        }
        if conjugates <= sub:
            return sub
        seeds = sub | conjugates


def _abelian_invariants(elements: list, compose, identity) -> tuple:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group."""
    order = len(elements)
    if order == 1:
        return ()
    primes = _prime_factors(order)
    per_prime = {}
    for p in primes:
        counts = []
        j = 0
        while True:
            j += 1
            power = p ** j
            count = sum(1 for e in elements if _power(e, power, compose, identity) == identity)
            counts.append(count)
            if count == order or (j > 1 and counts[-1] == counts[-2]):
                break
        s_values = [0] + [round(math.log(c, p)) for c in counts]
        deltas = [s_values[i + 1] - s_values[i] for i in range(len(s_values) - 1)]
        deltas = [d for d in deltas if d > 0]
        # deltas[j-1] = number of cyclic p-factors with exponent >= j, so the
        # t-th largest factor (t from 0) has exponent #{j : deltas[j] > t}.
        factor_list = [
            p ** sum(1 for d in deltas if d > t) for t in range(deltas[0] if deltas else 0)
        ]
        per_prime[p] = sorted(factor_list, reverse=True)
    num = max(len(v) for v in per_prime.values())
    invariants = []
    for t in range(num):
        d = 1
        for p, factors in per_prime.items():
            if t < len(factors):
                d *= factors[t]
        invariants.append(d)
    return tuple(sorted(invariants))


def _power(e, exponent, compose, identity):
    result = identity
    base = e
    while exponent:
        if exponent & 1:
            result = compose(result, base)
        base = compose(base, base)
        exponent >>= 1
    return result


def _prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def group_fingerprint(group: PermGroup) -> Fingerprint:
    """Order, exponent, centre, derived subgroup, and abelian invariants."""
    ident = group.identity()
    exponent = 1
    for e in group.elements:
        exponent = math.lcm(exponent, group.element_order(e))
    gens = group.generators if group.generators else group.elements
    center = [
        e for e in group.elements
        if all(_compose(e, g) == _compose(g, e) for g in gens)
    ]
    derived = _derived_subgroup_elements(group)
    # abelianization = quotient by the derived subgroup
    derived_sorted = sorted(derived, key=_key_of)
    coset_of = {}
    reps = []
    for e in group.elements:
        if e in coset_of:
            continue
        members = [_compose(e, d) for d in derived_sorted]
        rep = min(members, key=_key_of)
        for mbr in members:
            coset_of[mbr] = rep
        reps.append(rep)
    def quo_compose(e1, e2):
        return coset_of[_compose(e1, e2)]
    quo_identity = coset_of[ident]
    invariants = _abelian_invariants(reps, quo_compose, quo_identity)
    return Fingerprint(
        order=group.order,
        exponent=exponent,
        center_order=len(center),
        derived_order=len(derived),
        abelianization=invariants,
    )


# ---------------------------------------------------------------------------
# Text forms
# ---------------------------------------------------------------------------

def format_cycles(perm: Sequence[int]) -> str:
    """1-based disjoint cycle notation; identity renders as '()'."""
    parts = [
        "(" + ",".join(str(i + 1) for i in cycle) + ")"
        for cycle in _cycles_of(perm)
        if len(cycle) > 1
    ]
    return "".join(parts) if parts else "()"


def parse_cycles(text: str, n: int) -> tuple:
    text = text.strip()
    perm = list(range(n))
    if text == "()":
        return tuple(perm)
    for match in re.finditer(r"\(([^()]*)\)", text):
        body = match.group(1).strip()
        if not body:
            continue
        try:
            points = [int(tok) - 1 for tok in body.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad cycle {match.group(0)!r}") from exc
        if any(not 0 <= p < n for p in points) or len(set(points)) != len(points):
            raise ParseError(f"cycle {match.group(0)!r} out of range or repeated")
        for i, p in enumerate(points):
            perm[p] = points[(i + 1) % len(points)]
    return tuple(perm)


def format_signed(sp: SignedPermutation) -> str:
    return f"{format_cycles(sp.perm)} | " + "".join("+" if s == 1 else "-" for s in sp.signs)


def parse_signed(text: str, n: int) -> SignedPermutation:
    if "|" not in text:
        raise ParseError("expected '<cycles> | <signs>'")
    cyc, signs_text = text.split("|", 1)
    signs_text = signs_text.strip()
    if len(signs_text) != n or any(ch not in "+-" for ch in signs_text):
        raise ParseError(f"expected {n} sign characters")
    perm = parse_cycles(cyc, n)
    signs = tuple(1 if ch == "+" else -1 for ch in signs_text)
    return SignedPermutation(perm, signs)


def format_pair(pair: AutPair) -> str:
    return f"R: {format_signed(pair.r)}; S: {format_signed(pair.s)}"


def parse_pair(text: str, n: int) -> AutPair:
    match = re.match(r"^\s*R:\s*(.*?);\s*S:\s*(.*?)\s*$", text)
    if not match:
        raise ParseError("expected 'R: ... ; S: ...'")
    return AutPair(parse_signed(match.group(1), n), parse_signed(match.group(2), n))


def group_report(group: PermGroup) -> dict:
    """JSON-ready summary of a materialized group of pairs or permutations."""
    fp = group_fingerprint(group)
    gens = []
    for g in group.generators:
        if isinstance(g, AutPair):
            gens.append(format_pair(g))
        elif isinstance(g, SignedPermutation):
            gens.append(format_signed(g))
        else:
            gens.append(format_cycles(g))
    return {
        "order": fp.order,
        "exponent": fp.exponent,
        "center_order": fp.center_order,
        "derived_order": fp.derived_order,
        "abelianization": list(fp.abelianization),
        "generators": gens,
    }
