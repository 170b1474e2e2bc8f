"""Canonical normal-form arithmetic in the 2-groups J, H and K.

Every element is a triple (i, j, k) meaning A^i B^j C^k with exponents in
the family's canonical ranges (C = [A, B]).  All operations evaluate one
generic set of integer exponent formulas and then reduce into canonical
form per family; the formulas work unchanged on numpy arrays, which the
oracle cross-check and the automorphism enumeration exploit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .numfn import phi, varphi, sigma2, xi1, xi2, xi3, xi4
from .params import GroupParams

TAGS = ("J", "H", "K")


@dataclass(frozen=True)
class GroupFamily:
    """One of the groups J, H = J/Z1(J), K = H/Z1(H) at fixed (m, ell)."""

    tag: str
    params: GroupParams

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"family tag must be one of {TAGS}, got {self.tag!r}")

    # canonical exponent ranges for (i, j, k)
    @property
    def ranges(self) -> tuple[int, int, int]:
        s, u = self.params.s, self.params.u
        if self.tag == "J":
            return (4 * u * s, 2 * u, 2 * u)
        if self.tag == "H":
            return (2 * u, 2 * u, 2 * u)
        return (2 * u, 2 * u, s)

    @property
    def order(self) -> int:
        ri, rj, rk = self.ranges
        return ri * rj * rk

    @property
    def exponent(self) -> int:
        m, s, u = self.params.m, self.params.s, self.params.u
        if self.tag == "J":
            return 4 * u * s if m > 1 else 8
        if self.tag == "H":
            return 4 * u
        return 2 * u

    @property
    def nilpotency_class(self) -> int:
        base = {"J": 5, "H": 4, "K": 3}[self.tag]
        return base if self.params.m > 1 else base - 2

    def canonicalize(self, i, j, k):
        """Reduce raw exponents to the canonical triple.

        J folds fixed-order: C-excess past 2u carries A^(2us), then B-excess
        past 2u carries A^(-2u), then i is reduced mod 4us.  H and K reduce
        componentwise.  Works on ints and on numpy arrays.
        """
        s, u = self.params.s, self.params.u
        if self.tag == "J":
            k = k % (4 * u)
            qk = k // (2 * u)
            k = k - 2 * u * qk
            i = i + 2 * u * s * qk
            j = j % (4 * u * s)
            qj = j // (2 * u)
            j = j - 2 * u * qj
            i = (i - 2 * u * qj) % (4 * u * s)
            return i, j, k
        if self.tag == "H":
            return i % (2 * u), j % (2 * u), k % (2 * u)
        return i % (2 * u), j % (2 * u), k % s

    # -- element index space (used by enumeration and the oracle) --------
    def encode_index(self, i, j, k):
        ri, rj, rk = self.ranges
        return (i * rj + j) * rk + k

    def decode_index(self, idx):
        ri, rj, rk = self.ranges
        idx, k = divmod(idx, rk)
        i, j = divmod(idx, rj)
        return i, j, k

    def elements(self):
        """Iterate all canonical elements in index order."""
        ri, rj, rk = self.ranges
        for i in range(ri):
            for j in range(rj):
                for k in range(rk):
                    yield Element(self, i, j, k)

    # -- distinguished elements ------------------------------------------
    def identity(self) -> "Element":
        return Element(self, 0, 0, 0)

    def A(self) -> "Element":
        return Element(self, 1, 0, 0)

    def B(self) -> "Element":
        return Element(self, 0, 1, 0)

    def C(self) -> "Element":
        return Element(self, 0, 0, 1)

    def quotient(self) -> "GroupFamily":
        """The next central quotient: J -> H -> K."""
        if self.tag == "J":
            return GroupFamily("H", self.params)
        if self.tag == "H":
            return GroupFamily("K", self.params)
        raise ValueError("K has no smaller family in this tower")

    def z_mods(self) -> list[tuple[int, int, int]]:
        """Componentwise moduli describing Z_1 ⊂ ... ⊂ Z_class (m > 1 only).

        x lies in Z_i iff each canonical exponent is 0 mod the i-th triple;
        encoding "exponent must vanish" as the full range makes the test
        uniform.  These same triples label the cosets of T/Z_i.
        """
        if self.params.m == 1:
            raise ValueError("explicit central-series moduli need m > 1")
        s, u = self.params.s, self.params.u
        ri, rj, rk = self.ranges
        if self.tag == "J":
            return [(2 * u, rj, rk), (2 * u, rj, s), (2 * s, 2 * s, s), (s, s, 1), (1, 1, 1)]
        if self.tag == "H":
            return [(ri, rj, s), (2 * s, 2 * s, s), (s, s, 1), (1, 1, 1)]
        return [(2 * s, 2 * s, rk), (s, s, 1), (1, 1, 1)]

    def __str__(self):
        return f"{self.tag}{self.params}"


def family(tag: str, m: int, ell: int = 1) -> GroupFamily:
    return GroupFamily(tag, GroupParams(m, ell))


@dataclass(frozen=True)
class Element:
    """A^i B^j C^k in canonical form; construction canonicalizes."""

    family: GroupFamily
    i: int
    j: int
    k: int

    def __post_init__(self):
        i, j, k = self.family.canonicalize(self.i, self.j, self.k)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "k", k)

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    def is_identity(self) -> bool:
        return self.i == 0 and self.j == 0 and self.k == 0

    @property
    def index(self) -> int:
        return self.family.encode_index(self.i, self.j, self.k)

    def __str__(self):
        return f"A^{self.i} B^{self.j} C^{self.k}"

    def encode(self) -> str:
        f = self.family
        return f"({self.i},{self.j},{self.k})@{f.tag}[{f.params.m},{f.params.ell}]"


_ELEMENT_RE = re.compile(
    r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)@([JHK])\[\s*(\d+)\s*,\s*(-?\d+)\s*\]$"
)


def parse_element(text: str) -> Element:
    """Parse the "(i,j,k)@F[m,ell]" encoding."""
    mt = _ELEMENT_RE.match(text.strip())
    if not mt:
        raise ValueError(f"cannot parse element: {text!r}")
    i, j, k, tag, m, ell = mt.groups()
    return Element(family(tag, int(m), int(ell)), int(i), int(j), int(k))


def _same_family(x: Element, y: Element):
    if x.family != y.family:
        raise ValueError(f"family mismatch: {x.family} vs {y.family}")


# ---------------------------------------------------------------------------
# Raw exponent kernels (ints or numpy arrays).
# ---------------------------------------------------------------------------

def product_exponents(s, u, ell, i, j, k, a, b, c):
    ts = 2 * s * ell
    e_a = i + a + ts * (j * phi(a) - k * a) + xi2(j, k, a, b, s, u, ell)
    e_b = j + b + ts * (k * b - j * a * b - phi(j) * a)
    e_c = k + c - j * a + ts * (j * k * a - phi(j + 1) * phi(a))
    return e_a, e_b, e_c


def inverse_exponents(s, u, ell, a, b, c):
    ts = 2 * s * ell
    e_a = -a - ts * (phi(a + 1) * b + a * c) + xi3(a, b, c, s, u, ell)
    e_b = -b + ts * (a * phi(b + 1) + b * c)
    e_c = -c - a * b - ts * phi(a + 1) * phi(b)
    return e_a, e_b, e_c


def power_exponents(s, u, ell, a, b, c, n):
    ts = 2 * s * ell
    pn, vn, vn1 = phi(n), varphi(n), varphi(n + 1)
    e_a = n * a + ts * (a * a * b * vn + (phi(a) * b - a * c) * pn) + xi4(a, b, c, n, s, u, ell)
    e_b = n * b + ts * ((b * (c - a * b) - a * phi(b)) * pn - 2 * a * b * b * vn)
    e_c = n * c - a * b * pn + ts * (
        a * a * phi(b) * vn
        + phi(a) * phi(b) * pn
        - a * a * b * b * sigma2(1, n)
        - (phi(a) * b - a * c) * b * vn1
    )
    return e_a, e_b, e_c


def big_commutator_exponents(s, u, ell, i, j, k, a, b, c):
    ts = 2 * s * ell
    e_a = ts * (j * phi(a) - phi(i) * b + i * c - k * a)
    e_b = ts * (i * phi(b) - phi(j) * a + k * b + j * (i * b - a * b - c))
    e_c = i * b - j * a + ts * (
        phi(a) * (phi(j) + j * b) - phi(i) * (phi(b) + j * b) + i * j * c - k * a * b
    )
    return e_a, e_b, e_c


def special_commutator_exponents(case: str, s, u, ell, n, t):
    """[C^n,A^t], [C^n,B^t] or [A^n,B^t] as raw (i, j, k) exponents."""
    ts = 2 * s * ell
    fu = 4 * u * ell * ell
    if case == "CA":
        return (-ts * n * t - fu * phi(n) * t, 0, 0)
    if case == "CB":
        return (0, ts * n * t - fu * phi(n + 1) * t, 0)
    if case == "AB":
        e_a = -ts * phi(n) * t + xi1(n, t, s, u, ell)
        e_b = ts * n * phi(t)
        e_c = n * t - ts * phi(n) * phi(t)
        return (e_a, e_b, e_c)
    raise ValueError(f"case must be CA, CB or AB, got {case!r}")


# ---------------------------------------------------------------------------
# Element-level operations.
# ---------------------------------------------------------------------------

def mul(x: Element, y: Element) -> Element:
    _same_family(x, y)
    p = x.family.params
    e = product_exponents(p.s, p.u, p.ell, x.i, x.j, x.k, y.i, y.j, y.k)
    return Element(x.family, *e)


def invert(x: Element) -> Element:
    p = x.family.params
    e = inverse_exponents(p.s, p.u, p.ell, x.i, x.j, x.k)
    return Element(x.family, *e)


def power(x: Element, n: int) -> Element:
    """x^n for any integer n (n is first reduced mod the group exponent)."""
    p = x.family.params
    n = n % x.family.exponent
    e = power_exponents(p.s, p.u, p.ell, x.i, x.j, x.k, n)
    return Element(x.family, *e)


def conj(x: Element, g: Element) -> Element:
    """x^g = g^-1 x g."""
    return mul(mul(invert(g), x), g)


def commutator_generic(x: Element, y: Element) -> Element:
    """[x, y] = x^-1 y^-1 x y."""
    _same_family(x, y)
    return mul(mul(invert(x), invert(y)), mul(x, y))


def commutator_special(case: str, n: int, t: int, fam: GroupFamily) -> Element:
    p = fam.params
    e = special_commutator_exponents(case, p.s, p.u, p.ell, n, t)
    return Element(fam, *e)


def commutator_mod_z1(x: Element, y: Element) -> Element:
    """[x, y] modulo Z_1: exact in H, a canonical coset representative in J."""
    _same_family(x, y)
    fam = x.family
    if fam.tag not in ("J", "H"):
        raise ValueError("commutator_mod_z1 is defined for J and H only")
    p = fam.params
    e = big_commutator_exponents(p.s, p.u, p.ell, x.i, x.j, x.k, y.i, y.j, y.k)
    z = Element(fam, *e)
    if fam.tag == "J":
        z = Element(fam, z.i % (2 * p.u), z.j, z.k)
    return z


def element_order(x: Element) -> int:
    """Least n >= 1 with x^n = 1, by power-doubling (orders are 2-powers)."""
    n = 1
    y = x
    while not y.is_identity():
        y = mul(y, y)
        n *= 2
        if n > 2 * x.family.exponent:
            raise AssertionError(f"order search runaway for {x}")
    return n


def project(x: Element) -> Element:
    """Image of x in the next central quotient (J -> H, H -> K)."""
    return Element(x.family.quotient(), x.i, x.j, x.k)


# ---------------------------------------------------------------------------
# Upper central series.
# ---------------------------------------------------------------------------

def in_z(x: Element, level: int) -> bool:
    """Membership of x in Z_level, via the explicit generator description."""
    fam = x.family
    if level <= 0:
        return x.is_identity()
    if level >= fam.nilpotency_class:
        return True
    if fam.params.m == 1:
        return central_level_generic(x) <= level
    d1, d2, d3 = fam.z_mods()[level - 1]
    return x.i % d1 == 0 and x.j % d2 == 0 and x.k % d3 == 0


def central_level(x: Element) -> int:
    """Least i with x in Z_i, from the explicit generator description."""
    fam = x.family
    if fam.params.m == 1:
        return central_level_generic(x)
    for lvl in range(0, fam.nilpotency_class + 1):
        if in_z(x, lvl):
            return lvl
    raise AssertionError("unreachable: every element lies in Z_class")


@lru_cache(maxsize=1 << 20)
def central_level_generic(x: Element) -> int:
    """Least i with x in Z_i, via the commutator test alone: x in Z_i iff
    [x,A] and [x,B] lie in Z_{i-1}.  Independent of the explicit
    generator description of the series."""
    if x.is_identity():
        return 0
    fam = x.family
    la = central_level_generic(commutator_generic(x, fam.A()))
    lb = central_level_generic(commutator_generic(x, fam.B()))
    lvl = 1 + max(la, lb)
    if lvl > fam.nilpotency_class:
        raise AssertionError(f"central level {lvl} exceeds class for {x}")
    return lvl


def z1_elements(fam: GroupFamily) -> list[Element]:
    """All elements of the center Z_1, from its generator description."""
    s, u = fam.params.s, fam.params.u
    if fam.tag == "J":
        a = fam.A()
        return [power(a, 2 * u * t) for t in range(2 * s)]
    if fam.tag == "H":
        c = fam.C()
        return [power(c, s * t) for t in range(2 * u // s)]
    if fam.params.m == 1:
        return list(fam.elements())  # K is abelian at m = 1
    a2s = power(fam.A(), 2 * s)
    b2s = power(fam.B(), 2 * s)
    out = []
    x = fam.identity()
    for _ in range(u // s):
        y = x
        for _ in range(u // s):
            out.append(y)
            y = mul(y, b2s)
        x = mul(x, a2s)
    return out
