"""Endomorphisms and automorphisms as generator-image pairs.

A GenMap records where A and B go; the image of C is forced to
[imgA, imgB].  Certification follows the nilpotency criterion: a relation
check on the two conjugation relations (plus order relations in H), then
injectivity on the center.  Composition is left to right throughout:
(x)(fg) = ((x)f)g.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .groups import (
    Element,
    GroupFamily,
    commutator_generic,
    conj,
    invert,
    mul,
    power,
    project,
    in_z,
    z1_elements,
)


@dataclass(frozen=True)
class GenMap:
    """Generator assignment A -> imgA, B -> imgB on one family."""

    family: GroupFamily
    imgA: Element
    imgB: Element

    def __post_init__(self):
        if self.imgA.family != self.family or self.imgB.family != self.family:
            raise ValueError("generator images must live in the map's family")

    @cached_property
    def imgC(self) -> Element:
        return commutator_generic(self.imgA, self.imgB)

    @property
    def key(self) -> tuple:
        return (self.imgA.triple, self.imgB.triple)

    def __str__(self):
        return f"(A -> {self.imgA}, B -> {self.imgB}) on {self.family}"

    def encode(self) -> str:
        return f"{self.imgA.encode()} ; {self.imgB.encode()}"


def identity_map(fam: GroupFamily) -> GenMap:
    return GenMap(fam, fam.A(), fam.B())


def apply(f: GenMap, x: Element) -> Element:
    """Image of A^i B^j C^k, i.e. imgA^i imgB^j imgC^k."""
    if x.family != f.family:
        raise ValueError(f"family mismatch: {x.family} vs {f.family}")
    return mul(mul(power(f.imgA, x.i), power(f.imgB, x.j)), power(f.imgC, x.k))


def check_endomorphism(f: GenMap) -> tuple[bool, dict | None]:
    """Does A -> imgA, B -> imgB extend to an endomorphism?

    Where the group exponent equals o(A) (J at m > 1, K always) only the
    two conjugation relations can fail; otherwise (H, and J at m = 1) the
    order relations imgA^o(A) = imgB^o(B) = 1 are checked too.  Returns
    (ok, witness), the witness naming the broken relation with both sides.
    """
    fam = f.family
    alpha = fam.params.alpha
    c = f.imgC
    lhs = conj(f.imgA, c)
    rhs = power(f.imgA, alpha)
    if lhs != rhs:
        return False, {"relation": "A^[A,B] = A^alpha", "lhs": lhs, "rhs": rhs}
    lhs = conj(f.imgB, invert(c))
    rhs = power(f.imgB, alpha)
    if lhs != rhs:
        return False, {"relation": "B^[B,A] = B^alpha", "lhs": lhs, "rhs": rhs}
    gen_order = fam.ranges[0]
    if fam.exponent > gen_order:
        for name, img in (("A", f.imgA), ("B", f.imgB)):
            p = power(img, gen_order)
            if not p.is_identity():
                return False, {
                    "relation": f"{name}^{gen_order} = 1",
                    "lhs": p,
                    "rhs": fam.identity(),
                }
    return True, None


def is_endomorphism(f: GenMap) -> bool:
    return check_endomorphism(f)[0]


def is_automorphism(f: GenMap) -> bool:
    """Endomorphism + injective on Z_1 (enough in a finite nilpotent group)."""
    ok, _ = check_endomorphism(f)
    if not ok:
        return False
    zs = z1_elements(f.family)
    images = {apply(f, z).triple for z in zs}
    return len(images) == len(zs)


def compose(f: GenMap, g: GenMap) -> GenMap:
    """(x)(fg) = ((x)f)g."""
    if f.family != g.family:
        raise ValueError("cannot compose maps on different families")
    return GenMap(f.family, apply(g, f.imgA), apply(g, f.imgB))


def compose_all(*maps: GenMap) -> GenMap:
    out = maps[0]
    for g in maps[1:]:
        out = compose(out, g)
    return out


def aut_inverse(f: GenMap) -> GenMap:
    """Inverse of a finite-order automorphism: the iterate before identity."""
    if not is_automorphism(f):
        raise ValueError("aut_inverse needs an automorphism")
    ident = identity_map(f.family)
    if f == ident:
        return ident
    prev, cur = f, compose(f, f)
    while cur != ident:
        prev, cur = cur, compose(cur, f)
    return prev


def centrality_level(f: GenMap) -> int:
    """Least i with f acting trivially on T/Z_i: both generator
    displacements f(X) X^-1 must land in Z_i."""
    da = mul(f.imgA, invert(f.family.A()))
    db = mul(f.imgB, invert(f.family.B()))
    for lvl in range(f.family.nilpotency_class + 1):
        if in_z(da, lvl) and in_z(db, lvl):
            return lvl
    raise AssertionError("displacements must lie in Z_class")


def inner(g: Element) -> GenMap:
    """Conjugation x -> x^g as a GenMap."""
    fam = g.family
    return GenMap(fam, conj(fam.A(), g), conj(fam.B(), g))


def induce_on_quotient(f: GenMap) -> GenMap:
    """The map induced on T/Z_1 (J -> H or H -> K)."""
    return GenMap(f.family.quotient(), project(f.imgA), project(f.imgB))


# ---------------------------------------------------------------------------
# Named catalog.
# ---------------------------------------------------------------------------

def _require_tag(fam: GroupFamily, tag: str, name: str):
    if fam.tag != tag:
        raise ValueError(f"{name} lives on {tag}, not {fam.tag}")


def _certified(f: GenMap, name: str) -> GenMap:
    if not is_automorphism(f):
        raise ValueError(f"catalog entry {name} failed certification on {f.family}")
    return f


def _central_perturbation(fam: GroupFamily, x: Element, y: Element, level: int, name: str) -> GenMap:
    for img in (x, y):
        if not in_z(img, level):
            raise ValueError(f"{name} needs perturbations in Z_{level}, got {img}")
    return _certified(GenMap(fam, mul(fam.A(), x), mul(fam.B(), y)), name)


def catalog(fam: GroupFamily, name: str, *args) -> GenMap:
    """Construct a named automorphism; raises on constraint violations.

    Names: theta (J), nu (H), mu (K); omega(x,y) on J or K; psi_J(x,y);
    gamma_K(x,y); pi_H(x,y); f_n(n) on K; phi_K; gamma_H; sigma_H;
    delta1/delta2/delta3; sigma_J(k); psi1..psi5 on K; inner(g).
    """
    p = fam.params
    s, u = p.s, p.u
    A, B = fam.A(), fam.B()

    if name in ("theta", "nu", "mu"):
        _require_tag(fam, {"theta": "J", "nu": "H", "mu": "K"}[name], name)
        return _certified(GenMap(fam, B, A), name)

    if name == "inner":
        (g,) = args
        return _certified(inner(g), name)

    if name == "omega":
        if fam.tag not in ("J", "K"):
            raise ValueError("omega is defined on J and K")
        x, y = args
        return _central_perturbation(fam, x, y, 1, name)

    if name == "psi_J":
        _require_tag(fam, "J", name)
        x, y = args
        return _central_perturbation(fam, x, y, 2, name)

    if name == "gamma_K":
        _require_tag(fam, "K", name)
        x, y = args
        return _central_perturbation(fam, x, y, 2, name)

    if name == "pi_H":
        _require_tag(fam, "H", name)
        x, y = args
        return _central_perturbation(fam, x, y, 2, name)

    if name == "f_n":
        _require_tag(fam, "K", name)
        (n,) = args
        mod = 2 * u
        if n % 2 == 0:
            raise ValueError(f"f_n needs odd n, got {n}")
        t = pow(n % mod, -1, mod)
        return _certified(GenMap(fam, power(A, n), power(B, t)), name)

    if name == "phi_K":
        _require_tag(fam, "K", name)
        r = p.require_r()
        return _certified(GenMap(fam, mul(A, power(B, r)), B), name)

    if name == "gamma_H":
        _require_tag(fam, "H", name)
        return _certified(GenMap(fam, power(A, 1 + s), mul(B, power(A, s))), name)

    if name == "sigma_H":
        _require_tag(fam, "H", name)
        r = p.require_rbar() * 2
        return _certified(
            GenMap(fam, mul(power(A, 1 + r), power(B, r)), mul(power(B, 1 + r), power(A, r))),
            name,
        )

    if name == "delta1":
        _require_tag(fam, "J", name)
        return _certified(
            GenMap(fam, mul(A, power(B, 2 * s)), mul(power(B, 1 - 4 * s), power(A, 2 * s))),
            name,
        )

    if name == "delta2":
        _require_tag(fam, "J", name)
        return _certified(GenMap(fam, A, mul(B, power(A, u))), name)

    if name == "delta3":
        _require_tag(fam, "J", name)
        if p.m < 2:
            raise ValueError("delta3 needs m >= 2")
        d2m = 1 if p.m == 2 else 0
        return _certified(
            GenMap(
                fam,
                mul(power(A, 1 + s), power(B, s)),
                mul(power(B, 1 + s * (2 * d2m + s - 3)), power(A, s)),
            ),
            name,
        )

    if name == "sigma_J":
        _require_tag(fam, "J", name)
        p.require_rbar()  # needs m > 2
        r = p.require_r()
        (kpar,) = args if args else (1 if p.m == 3 else 0,)
        if p.m == 3 and kpar % 2 == 0:
            raise ValueError("sigma_J needs odd k at m = 3")
        if p.m > 3 and kpar % 2 == 1:
            raise ValueError("sigma_J needs even k at m > 3")
        tail = power(A, s * (s * kpar + r * p.ell - 2))
        return _certified(
            GenMap(
                fam,
                mul(mul(power(A, 1 + r), power(B, r)), tail),
                mul(power(B, 1 + r), power(A, r)),
            ),
            name,
        )

    if name in ("psi1", "psi2", "psi3", "psi4", "psi5"):
        _require_tag(fam, "K", name)
        images = {
            "psi1": (power(A, 1 + s), B),
            "psi2": (A, power(B, 1 + s)),
            "psi3": (mul(A, power(B, s)), B),
            "psi4": (A, mul(B, power(A, s))),
            "psi5": (mul(power(A, 1 + s), power(B, s)), B),
        }[name]
        return _certified(GenMap(fam, *images), name)

    raise ValueError(f"unknown catalog name {name!r}")


def catalog_encode(fam: GroupFamily, name: str, *args) -> str:
    """Text form name[args]@family[m,ell]."""
    payload = ",".join(a.encode() if isinstance(a, Element) else str(a) for a in args)
    return f"{name}[{payload}]@{fam.tag}[{fam.params.m},{fam.params.ell}]"
