"""Full automorphism groups of Hadamard matrices by signed-row backtracking.

The search assigns, for each row slot of the image matrix in order, a
source row and sign, while maintaining a paired partition of target and
source columns by canonical sign patterns.  A full row assignment is
completed algebraically: S^T = (1/n) H^T R^T H must come out monomial.

When a seed subgroup is supplied (or just the always-present {+-(I,I)}),
first-slot choices are enumerated only up to the seed's action on signed
rows; the final group is the closure of the seed with everything found.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import signed_perm as sp
from .errors import Contradiction, NodeCapExceeded, NotMonomial, NotSignMatrix
from .kimura import is_hadamard
from .signed_perm import AutPair, PermGroup, SignedPermutation


# ---------------------------------------------------------------------------
# Paired column-class refinement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchState:
    """Partial row assignment plus the paired column partition it induces.

    ``assignments[t] = (source_row, sign)`` fixes image row t as
    sign * H[source_row].  Column class ids live in one shared namespace,
    so target class c pairs with source class c.
    """

    n: int
    assignments: tuple
    tgt_cid: tuple
    src_cid: tuple
    tgt_sgn: tuple
    src_sgn: tuple

    @property
    def depth(self) -> int:
        return len(self.assignments)

    def column_classes(self) -> list:
        """Paired classes as (target columns, source columns), id order."""
        ids = sorted(set(self.tgt_cid) | set(self.src_cid))
        out = []
        for cid in ids:
            out.append((
                tuple(j for j, c in enumerate(self.tgt_cid) if c == cid),
                tuple(j for j, c in enumerate(self.src_cid) if c == cid),
            ))
        return out


def initial_state(H: np.ndarray) -> SearchState:
    n = np.asarray(H).shape[0]
    return SearchState(
        n=n,
        assignments=(),
        tgt_cid=(0,) * n,
        src_cid=(0,) * n,
        tgt_sgn=(1,) * n,
        src_sgn=(1,) * n,
    )


def assign(state: SearchState, H: np.ndarray, source_row: int, sign: int) -> SearchState:
    """Assign the next image row and refine; raises Contradiction on mismatch."""
    H = np.asarray(H)
    t = state.depth
    n = state.n
    if t == 0:
        # first entries fix the per-column canonical signs; one class remains
        return SearchState(
            n=n,
            assignments=((source_row, sign),),
            tgt_cid=state.tgt_cid,
            src_cid=state.src_cid,
            tgt_sgn=tuple(int(v) for v in H[0]),
            src_sgn=tuple(int(sign * v) for v in H[source_row]),
        )
    tgt_cid = np.array(state.tgt_cid)
    src_cid = np.array(state.src_cid)
    tgt_entry = (H[t] * np.array(state.tgt_sgn) > 0).astype(np.int64)
    src_entry = (sign * H[source_row] * np.array(state.src_sgn) > 0).astype(np.int64)
    tgt_key = 2 * tgt_cid + tgt_entry
    src_key = 2 * src_cid + src_entry
    joint = np.concatenate([tgt_key, src_key])
    _, inverse = np.unique(joint, return_inverse=True)
    new_tgt = inverse[:n]
    new_src = inverse[n:]
    num = int(inverse.max()) + 1
    if not np.array_equal(
        np.bincount(new_tgt, minlength=num), np.bincount(new_src, minlength=num)
    ):
        raise Contradiction(f"class sizes diverge at depth {t}")
    return SearchState(
        n=n,
        assignments=state.assignments + ((source_row, sign),),
        tgt_cid=tuple(int(v) for v in new_tgt),
        src_cid=tuple(int(v) for v in new_src),
        tgt_sgn=state.tgt_sgn,
        src_sgn=state.src_sgn,
    )


def refine(state: SearchState, H: np.ndarray) -> SearchState:
    """Recompute the paired partition of a state from its assignments."""
    rebuilt = initial_state(H)
    for source_row, sign in state.assignments:
        rebuilt = assign(rebuilt, H, source_row, sign)
    return rebuilt


# ---------------------------------------------------------------------------
# Algebraic completion
# ---------------------------------------------------------------------------

def complete_S(H: np.ndarray, r_part: SignedPermutation) -> SignedPermutation:
    """The unique S with R H S^T = H, if it is monomial; else NotMonomial."""
    H = np.asarray(H, dtype=np.int64)
    n = H.shape[0]
    rh = r_part.apply_to_rows(H)
    st_scaled = rh.T @ H  # n * S^T
    if np.any(st_scaled % n):
        raise NotMonomial("completion is not an integer monomial matrix")
    s_matrix = (st_scaled // n).T
    return SignedPermutation.from_matrix(s_matrix)


# ---------------------------------------------------------------------------
# The search proper
# ---------------------------------------------------------------------------

@dataclass
class AutGroupResult:
    group: PermGroup
    complete: bool
    nodes: int
    elapsed: float

    @property
    def order(self) -> int:
        return self.group.order


def _signed_row_orbit_reps(seed: PermGroup, n: int) -> list:
    """Canonical (row, sign) representatives under the seed's R-part action."""
    movers = seed.generators if seed.generators else seed.elements
    reps = []
    seen = set()
    for code in range(2 * n):
        if code in seen:
            continue
        row, sign_bit = divmod(code, 2)
        orbit = {(row, 1 - 2 * sign_bit)}
        frontier = [(row, 1 - 2 * sign_bit)]
        while frontier:
            rho, eps = frontier.pop()
            for e in movers:
                image = (e.r.perm[rho], eps * e.r.signs[rho])
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        for rho, eps in orbit:
            seen.add(2 * rho + (0 if eps == 1 else 1))
        reps.append((row, 1 - 2 * sign_bit))
    return reps


def full_aut_group(
    H: np.ndarray,
    cap: int = sp.DEFAULT_CAP,
    seed: list | PermGroup | None = None,
    time_budget: float = 600.0,
    node_cap: int | None = None,
) -> AutGroupResult:
    """Compute Aut(H) = { (R,S) : R H S^T = H } for a Hadamard matrix H.

    Returns the materialized group; ``complete=False`` flags a truncated
    search whose group is only the closure of the seed and the pairs found
    before the time budget ran out.
    """
    H = np.asarray(H, dtype=np.int64)
    n = H.shape[0]
    if not is_hadamard(H):
        raise NotSignMatrix("automorphism search requires a Hadamard matrix")
    start = time.monotonic()
    deadline = start + time_budget
    seed_gens = []
    if isinstance(seed, PermGroup):
        seed_gens = list(seed.generators or seed.elements)
    elif seed:
        seed_gens = list(seed)
    seed_group = PermGroup.generate(
        seed_gens + [AutPair.neg_identity(n)], degree=n, cap=cap, kind="pair"
    )
    reps = _signed_row_orbit_reps(seed_group, n)

    found: list = []
    nodes = 0
    timed_out = False

    sign_arr = {1: H, -1: -H}

    def dfs(state: SearchState, used: list) -> None:
        nonlocal nodes, timed_out
        if timed_out:
            return
        nodes += 1
        if node_cap is not None and nodes > node_cap:
            raise NodeCapExceeded(f"visited more than {node_cap} nodes")
        if time.monotonic() > deadline:
            timed_out = True
            return
        t = state.depth
        if t == n:
            perm = tuple(srow for srow, _ in state.assignments)
            signs = tuple(sgn for _, sgn in state.assignments)
            r_part = SignedPermutation(perm, signs)
            try:
                s_part = complete_S(H, r_part)
            except NotMonomial:
                return
            found.append(AutPair(r_part, s_part))
            return
        tgt_cid = np.array(state.tgt_cid)
        src_cid = np.array(state.src_cid)
        tgt_entry = (H[t] * np.array(state.tgt_sgn) > 0).astype(np.int64)
        tgt_key = 2 * tgt_cid + tgt_entry
        num = 2 * (int(max(tgt_cid.max(), src_cid.max())) + 1)
        tgt_counts = np.bincount(tgt_key, minlength=num)
        src_sgn = np.array(state.src_sgn)
        entries = (H * src_sgn[None, :] > 0).astype(np.int64)
        key_plus = 2 * src_cid[None, :] + entries
        offsets = np.arange(n)[:, None] * num
        counts_plus = np.bincount(
            (key_plus + offsets).ravel(), minlength=n * num
        ).reshape(n, num)
        counts_minus = np.bincount(
            ((2 * src_cid[None, :] + (1 - entries)) + offsets).ravel(),
            minlength=n * num,
        ).reshape(n, num)
        ok_plus = np.all(counts_plus == tgt_counts[None, :], axis=1)
        ok_minus = np.all(counts_minus == tgt_counts[None, :], axis=1)
        for rho in range(n):
            if used[rho]:
                continue
            for sign, feasible in ((1, ok_plus[rho]), (-1, ok_minus[rho])):
                if not feasible:
                    continue
                try:
                    child = assign(state, H, rho, sign)
                except Contradiction:
                    continue
                used[rho] = True
                dfs(child, used)
                used[rho] = False
                if timed_out:
                    return

    base = initial_state(H)
    for row, sign in reps:
        if timed_out:
            break
        state = assign(base, H, row, sign)
        used = [False] * n
        used[row] = True
        dfs(state, used)

    generators = seed_gens + [AutPair.neg_identity(n)] + found
    group = PermGroup.generate(generators, degree=n, cap=cap, kind="pair")
    return AutGroupResult(
        group=group,
        complete=not timed_out,
        nodes=nodes,
        elapsed=time.monotonic() - start,
    )


# ---------------------------------------------------------------------------
# Structural property checks and the conjecture report
# ---------------------------------------------------------------------------

def preserves_partition(perm: tuple, cells: list) -> bool:
    """True iff the permutation maps every cell onto a cell of the list."""
    cell_of = {}
    for idx, cell in enumerate(cells):
        for p in cell:
            cell_of[p] = idx
    for cell in cells:
        images = {cell_of.get(perm[p], -1) for p in cell}
        if len(images) != 1 or -1 in images:
            return False
    return True


def block_monomial_form(pair: AutPair, k: int) -> bool:
    """Border stays on the border; 2k-cells and k-cells map to cells."""
    n = 8 * k + 4
    border = [tuple(range(4))]
    big_cells = [tuple(range(4 + i * 2 * k, 4 + (i + 1) * 2 * k)) for i in range(4)]
    small_cells = [tuple(range(4 + i * k, 4 + (i + 1) * k)) for i in range(8)]
    for part in (pair.r.perm, pair.s.perm):
        if not preserves_partition(part, border + big_cells):
            return False
        if not preserves_partition(part, border + small_cells):
            return False
    return True


def diagonal_property_violations(group: PermGroup, H: np.ndarray) -> list:
    """Check the structural facts about diagonal and row-fixing pairs."""
    H = np.asarray(H)
    n = H.shape[0]
    identity = AutPair.identity(n)
    negative = AutPair.neg_identity(n)
    violations = []
    for pair in group.elements:
        r, s = pair.r, pair.s
        if r.is_diagonal() and s.is_diagonal() and pair not in (identity, negative):
            violations.append(("both_diagonal", pair))
        if r.is_diagonal() and r.signs[0] == -1 and pair != negative:
            violations.append(("diagonal_neg_first", pair))
        if r.is_diagonal():
            fixes_col = any(
                s.perm[j] == j and s.signs[j] == 1 for j in range(n)
            )
            if fixes_col and pair != identity:
                violations.append(("diagonal_fixed_column", pair))
        if r.perm[0] == 0 and r.signs[0] == 1 and not s.is_plain_permutation():
            violations.append(("first_row_fixed_but_S_signed", pair))
    return violations


def row_stabilizer_violations(group: PermGroup, k: int) -> list:
    """Pairs whose R stabilises the first four rows must fix the block layout."""
    big_cells = [tuple(range(4 + i * 2 * k, 4 + (i + 1) * 2 * k)) for i in range(4)]
    violations = []
    for pair in group.elements:
        r, s = pair.r, pair.s
        stabilises = all(r.perm[i] < 4 for i in range(4)) and all(
            r.signs[i] == 1 for i in range(4)
        )
        if not stabilises:
            continue
        if not all(s.perm[j] < 4 for j in range(4)):
            violations.append(("S_moves_border_columns", pair))
            continue
        for part in (r.perm, s.perm):
            for cell in big_cells:
                if any(part[p] not in cell for p in cell):
                    violations.append(("block_slot_moved", pair))
                    break
    return violations


def strong_block_permuting_trivial(group: PermGroup, k: int) -> list:
    """Strong pairs fixing rows 1..4 pointwise and permuting blocks are trivial."""
    big_cells = [tuple(range(4 + i * 2 * k, 4 + (i + 1) * 2 * k)) for i in range(4)]
    violations = []
    for pair in group.elements:
        if not pair.is_strong():
            continue
        r = pair.r
        fixes_border = all(r.perm[i] == i and r.signs[i] == 1 for i in range(4))
        if not fixes_border:
            continue
        if not preserves_partition(r.perm, big_cells):
            continue
        if not pair.is_identity():
            violations.append(("strong_border_fixing_nontrivial", pair))
    return violations


def _prime_factorization(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def conjecture_report(group: PermGroup, k: int, complete: bool = True) -> dict:
    """Observations about block-monomial form, prime divisors, and order shape.

    Violations are surfaced in the report, never raised.
    """
    order = group.order
    factors = _prime_factorization(order)
    k_factors = _prime_factorization(k)
    allowed = {2, 3} | set(k_factors)
    bad_primes = sorted(set(factors) - allowed)
    block_ok = all(block_monomial_form(pair, k) for pair in group.elements)
    violations = []
    if not block_ok:
        violations.append("an automorphism is not in block monomial form")
    if bad_primes:
        violations.append(f"prime divisors outside 2, 3, divisors(k): {bad_primes}")
    factor_entry = {"r": None, "s": None, "k_part": k, "matches": False}
    if order % k == 0:
        rest = order // k
        r = 0
        while rest % 2 == 0:
            rest //= 2
            r += 1
        s = 0
        while rest % 3 == 0:
            rest //= 3
            s += 1
        factor_entry = {
            "r": r,
            "s": s,
            "k_part": k,
            "matches": rest == 1 and r >= 4 and s in (0, 1),
        }
        if rest != 1:
            violations.append(f"order has leftover factor {rest} beyond 2^r 3^s k")
        elif not factor_entry["matches"]:
            violations.append(f"order exponents r={r}, s={s} outside r>=4, s in {{0,1}}")
    else:
        violations.append(f"group order {order} is not divisible by k={k}")
    return {
        "order": order,
        "complete": complete,
        "block_monomial_all": block_ok,
        "prime_divisors": sorted(factors),
        "order_factorization": factor_entry,
        "violations": violations,
    }
