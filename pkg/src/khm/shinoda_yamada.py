"""Finite-field construction of y-invariant block elements.

For an odd prime p = 1 (mod 4) with q = 2p - 1 a prime power, characters of
GF(q^2) evaluated on relative traces produce sign vectors u, v, w that halve
into four {0,1} block elements of a Hadamard matrix of order 8p + 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import group_algebra as ga
from .errors import (
    ConstructionFailed,
    NonRealCharacterValue,
    NotAdmissible,
    NotBinary,
    NotHalvable,
    ZeroValue,
)
from .kimura import KimuraBlocks, gram_identities_hold


# ---------------------------------------------------------------------------
# Primality / admissibility
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power_decomposition(n: int):
    """Return (s, e) with n = s^e and s prime, or None."""
    if n < 2:
        return None
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            return (d, e) if n == 1 else None
        d += 1
    return (n, 1)


def is_admissible(p: int) -> tuple:
    """(bool, reason) for the construction's two arithmetic conditions."""
    if not is_prime(p):
        return False, f"{p} is not prime"
    if p % 4 != 1:
        return False, f"{p} is not 1 mod 4"
    q = 2 * p - 1
    if prime_power_decomposition(q) is None:
        return False, f"q = {q} is not a prime power"
    return True, "admissible"


# ---------------------------------------------------------------------------
# Extension fields GF(s^e) as polynomial residues
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtField:
    """GF(s^e) with elements as little-endian coefficient tuples."""

    s: int
    e: int
    modulus: tuple  # monic of degree e: coefficients of x^0 .. x^{e-1}

    @property
    def order(self) -> int:
        return self.s ** self.e

    def zero(self) -> tuple:
        return (0,) * self.e

    def one(self) -> tuple:
        return (1,) + (0,) * (self.e - 1)

    def element(self, code: int) -> tuple:
        """Element from an integer code in base s."""
        coeffs = []
        for _ in range(self.e):
            coeffs.append(code % self.s)
            code //= self.s
        return tuple(coeffs)

    def elements(self):
        for code in range(self.order):
            yield self.element(code)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % self.s for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        return tuple((x - y) % self.s for x, y in zip(a, b))

    def mul(self, a: tuple, b: tuple) -> tuple:
        s, e = self.s, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % s
        # reduce: x^e = -modulus[0..e-1]
        for deg in range(2 * e - 2, e - 1, -1):
            coef = prod[deg]
            if coef == 0:
                continue
            prod[deg] = 0
            for i, m in enumerate(self.modulus):
                prod[deg - e + i] = (prod[deg - e + i] - coef * m) % s
        return tuple(prod[:e])

    def pow(self, a: tuple, exponent: int) -> tuple:
        result = self.one()
        base = a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result


def _poly_is_irreducible(s: int, coeffs: tuple) -> bool:
    """Trial division of the monic polynomial x^e + ... by lower degrees."""
    e = len(coeffs)
    full = list(coeffs) + [1]

    def poly_mod(num, den):
        num = list(num)
        dd = len(den) - 1
        while len(num) - 1 >= dd and any(num):
            while num and num[-1] == 0:
                num.pop()
            if len(num) - 1 < dd:
                break
            lead = num[-1] * pow(den[-1], -1, s) % s
            shift = len(num) - 1 - dd
            for i, dcoef in enumerate(den):
                num[shift + i] = (num[shift + i] - lead * dcoef) % s
        while num and num[-1] == 0:
            num.pop()
        return num

    for deg in range(1, e // 2 + 1):
        for code in range(s ** deg):
            den = []
            c = code
            for _ in range(deg):
                den.append(c % s)
                c //= s
            den.append(1)
            if not poly_mod(full, den):
                return False
    return True


def smallest_irreducible(s: int, e: int) -> tuple:
    """Lexicographically first monic irreducible of degree e over GF(s).

    Candidates are ordered by the integer code of their low coefficients.
    """
    if e == 1:
        return (0,)
    for code in range(s ** e):
        coeffs = []
        c = code
        for _ in range(e):
            coeffs.append(c % s)
            c //= s
        coeffs = tuple(coeffs)
        if _poly_is_irreducible(s, coeffs):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# Character values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicValue:
    """Zero, or a power of a fixed primitive 4p-th root of unity."""

    modulus: int           # 4p
    exponent: int | None   # None encodes zero

    @classmethod
    def zero(cls, modulus: int) -> "CyclotomicValue":
        return cls(modulus, None)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __mul__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        if self.modulus != other.modulus:
            raise ValueError("mixed cyclotomic moduli")
        if self.is_zero or other.is_zero:
            return CyclotomicValue.zero(self.modulus)
        return CyclotomicValue(self.modulus, (self.exponent + other.exponent) % self.modulus)


def cyclo_to_sign(value: CyclotomicValue, p: int) -> int:
    """Map a real unit value to +-1."""
    if value.is_zero:
        raise ZeroValue("character value is zero")
    if value.exponent % value.modulus == 0:
        return 1
    if value.exponent % value.modulus == 2 * p:
        return -1
    raise NonRealCharacterValue(f"exponent {value.exponent} mod {value.modulus} is not real")


def chi2(r: int, p: int) -> int:
    """Quadratic residue character of GF(p), with chi2(0) = 0."""
    r %= p
    if r == 0:
        return 0
    value = pow(r, (p - 1) // 2, p)
    return 1 if value == 1 else -1


# ---------------------------------------------------------------------------
# The field tower and parameters
# ---------------------------------------------------------------------------

@dataclass
class SYParameters:
    p: int
    q: int
    s: int
    e: int
    field: ExtField          # K = GF(q^2) = GF(s^{2e})
    zeta: tuple
    dlog: dict
    quartic_unit: int = 1    # chi4(zeta) = i^quartic_unit, in {1, 3}
    pth_unit: int = 1        # chip(zeta) = (p-th root)^pth_unit, in 1..p-1

    @property
    def group_order(self) -> int:
        return self.field.order - 1

    def dlog_of(self, z: tuple) -> int:
        return self.dlog[z]

    def chi4(self, z: tuple) -> CyclotomicValue:
        if z == self.field.zero():
            return CyclotomicValue.zero(4 * self.p)
        t = self.dlog[z]
        return CyclotomicValue(4 * self.p, (t * self.p * self.quartic_unit) % (4 * self.p))

    def chip(self, z: tuple) -> CyclotomicValue:
        if z == self.field.zero():
            return CyclotomicValue.zero(4 * self.p)
        t = self.dlog[z]
        return CyclotomicValue(4 * self.p, (t * 4 * self.pth_unit) % (4 * self.p))

    def chi(self, z: tuple) -> CyclotomicValue:
        if z == self.field.zero():
            return CyclotomicValue.zero(4 * self.p)
        t = self.dlog[z]
        multiplier = (self.p * self.quartic_unit + 4 * self.pth_unit) % (4 * self.p)
        return CyclotomicValue(4 * self.p, (t * multiplier) % (4 * self.p))

    def trace_to_subfield(self, z: tuple) -> tuple:
        """Relative trace z + z^q down to the order-q subfield."""
        return self.field.add(z, self.field.pow(z, self.q))


def build_tower(p: int) -> SYParameters:
    """Construct GF(q^2), a primitive element, and the full discrete-log table."""
    ok, reason = is_admissible(p)
    if not ok:
        raise NotAdmissible(reason)
    q = 2 * p - 1
    s, e = prime_power_decomposition(q)
    field = ExtField(s, 2 * e, smallest_irreducible(s, 2 * e))
    group_order = field.order - 1
    prime_divisors = sorted(set(_factorize(group_order)))
    zeta = None
    for code in range(1, field.order):
        candidate = field.element(code)
        if all(
            field.pow(candidate, group_order // r) != field.one()
            for r in prime_divisors
        ):
            zeta = candidate
            break
    if zeta is None:
        raise ConstructionFailed("no primitive element found")
    dlog = {}
    power = field.one()
    for t in range(group_order):
        dlog[power] = t
        power = field.mul(power, zeta)
    return SYParameters(p=p, q=q, s=s, e=e, field=field, zeta=zeta, dlog=dlog)


def _factorize(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# The block elements
# ---------------------------------------------------------------------------

def _sign_vectors(params: SYParameters) -> tuple:
    """The length-p integer vectors u, v, w of character values."""
    p = params.p
    field = params.field
    u = []
    v = []
    for r in range(p):
        tr_u = params.trace_to_subfield(field.pow(params.zeta, 4 * r))
        tr_v = params.trace_to_subfield(field.pow(params.zeta, 4 * r + p))
        cu = params.chi(tr_u)
        cv = params.chi(tr_v)
        u.append(0 if cu.is_zero else cyclo_to_sign(cu, p))
        v.append(0 if cv.is_zero else cyclo_to_sign(cv, p))
    w = [chi2(r, p) for r in range(p)]
    return u, v, w


def _rotation_element(k: int, values) -> ga.GroupRingElement:
    return ga.GroupRingElement(k, tuple(values) + (0,) * k)


def _elements_from_vectors(p: int, u, v, w) -> KimuraBlocks:
    one = ga.ring_one(p)
    y = ga.from_indices(p, [p])
    g_sum = ga.full_group_sum(p)
    uu = _rotation_element(p, u)
    vv = _rotation_element(p, v)
    ww = _rotation_element(p, w)
    one_minus_y = one - y
    one_plus_y = one + y
    a = ga.halve(one_minus_y * vv + g_sum - one_plus_y)
    b = ga.halve(one_minus_y * uu + g_sum)
    c = ga.halve(one_minus_y + one_plus_y * ww + g_sum)
    return KimuraBlocks(p, a, b, c, c)


def sy_elements(p: int, params: SYParameters | None = None) -> KimuraBlocks:
    """Block elements for an admissible prime; the result is y-invariant with c = d.

    Retries every primitive character normalization before giving up.
    """
    if params is None:
        params = build_tower(p)
    normalizations = [(1, 1)] + [
        (e4, jp) for e4 in (1, 3) for jp in range(1, p) if (e4, jp) != (1, 1)
    ]
    failures = []
    for e4, jp in normalizations:
        params.quartic_unit = e4
        params.pth_unit = jp
        try:
            u, v, w = _sign_vectors(params)
            blocks = _elements_from_vectors(p, u, v, w)
        except (NonRealCharacterValue, ZeroValue, NotHalvable, NotBinary) as exc:
            failures.append(f"normalization (i^{e4}, zeta_p^{jp}): {exc}")
            continue
        if not gram_identities_hold(*blocks.elements):
            failures.append(f"normalization (i^{e4}, zeta_p^{jp}): orthogonality failed")
            continue
        params.quartic_unit, params.pth_unit = e4, jp
        return blocks
    raise ConstructionFailed(
        f"no character normalization produced a valid matrix for p={p}: "
        + "; ".join(failures[:4])
    )
