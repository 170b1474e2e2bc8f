"""Direct transcriptions of the H- and K-specific closed formulas.

The primary operations in .groups evaluate the generic J displays and
reduce per family; these independent transcriptions of the quotient
corollaries exist so tests can compare both routes term by term.
"""

from __future__ import annotations

from .numfn import phi, varphi, sigma2
from .groups import Element, GroupFamily


def _elem(fam: GroupFamily, e):
    return Element(fam, *e)


# -- K ----------------------------------------------------------------------

def k_product(fam: GroupFamily, x: Element, y: Element) -> Element:
    s, ell = fam.params.s, fam.params.ell
    ts = 2 * s * ell
    i, j, k = x.triple
    n, t, q = y.triple
    return _elem(fam, (
        i + n + ts * (j * phi(n) - k * n),
        j + t + ts * (k * t - j * n * t - phi(j) * n),
        k + q - j * n,
    ))


def k_power(fam: GroupFamily, x: Element, n: int) -> Element:
    s, ell = fam.params.s, fam.params.ell
    ts = 2 * s * ell
    i, j, k = x.triple
    return _elem(fam, (
        n * i + ts * (i * i * j * varphi(n) + (phi(i) * j - i * k) * phi(n)),
        n * j + ts * ((j * (k - i * j) - i * phi(j)) * phi(n) - 2 * i * j * j * varphi(n)),
        n * k - i * j * phi(n),
    ))


def k_commutator(fam: GroupFamily, case: str, n: int, t: int) -> Element:
    s, ell = fam.params.s, fam.params.ell
    ts = 2 * s * ell
    if case == "CA":
        return _elem(fam, (-ts * n * t, 0, 0))
    if case == "CB":
        return _elem(fam, (0, ts * n * t, 0))
    if case == "AB":
        return _elem(fam, (
            -ts * phi(n) * t,
            ts * n * phi(t),
            n * t - ts * phi(n) * phi(t),
        ))
    raise ValueError(f"case must be CA, CB or AB, got {case!r}")


def k_big_commutator_c_exponent(x: Element, y: Element) -> int:
    """[x, y] = c^(i t - j n) mod Z_1(K)."""
    return x.i * y.j - x.j * y.i


# -- H ----------------------------------------------------------------------

def h_product(fam: GroupFamily, x: Element, y: Element) -> Element:
    s, ell = fam.params.s, fam.params.ell
    ts = 2 * s * ell
    i, j, k = x.triple
    a, b, c = y.triple
    return _elem(fam, (
        i + a + ts * (j * phi(a) - k * a),
        j + b + ts * (k * b - j * a * b - phi(j) * a),
        k + c - j * a + ts * (j * k * a - phi(j + 1) * phi(a)),
    ))


def h_power(fam: GroupFamily, x: Element, n: int) -> Element:
    s, ell = fam.params.s, fam.params.ell
    ts = 2 * s * ell
    a, b, c = x.triple
    return _elem(fam, (
        n * a + ts * (a * a * b * varphi(n) + (phi(a) * b - a * c) * phi(n)),
        n * b + ts * ((b * (c - a * b) - a * phi(b)) * phi(n) - 2 * a * b * b * varphi(n)),
        n * c - a * b * phi(n) + ts * (
            a * a * phi(b) * varphi(n)
            + phi(a) * phi(b) * phi(n)
            - a * a * b * b * sigma2(1, n)
            - (phi(a) * b - a * c) * b * varphi(n + 1)
        ),
    ))


def h_power_smooth(fam: GroupFamily, x: Element, n: int) -> Element:
    """x^n in H when s | phi(n): collapses to A^na B^nb C^(nc - ab phi(n) - 2sl a^2 b^2 sigma2(1,n))."""
    s, ell = fam.params.s, fam.params.ell
    if phi(n) % s != 0:
        raise ValueError(f"needs s | phi(n); phi({n}) = {phi(n)}, s = {s}")
    a, b, c = x.triple
    return _elem(fam, (
        n * a,
        n * b,
        n * c - a * b * phi(n) - 2 * s * ell * a * a * b * b * sigma2(1, n),
    ))


def h_commutator(fam: GroupFamily, case: str, n: int, t: int) -> Element:
    s, ell = fam.params.s, fam.params.ell
    ts = 2 * s * ell
    if case == "CA":
        return _elem(fam, (-ts * n * t, 0, 0))
    if case == "CB":
        return _elem(fam, (0, ts * n * t, 0))
    if case == "AB":
        return _elem(fam, (
            -ts * phi(n) * t,
            ts * n * phi(t),
            n * t - ts * phi(n) * phi(t),
        ))
    raise ValueError(f"case must be CA, CB or AB, got {case!r}")


def h_big_commutator(fam: GroupFamily, x: Element, y: Element) -> Element:
    """[x, y] in H, exactly (not just mod a central subgroup)."""
    s, ell = fam.params.s, fam.params.ell
    ts = 2 * s * ell
    i, j, k = x.triple
    a, b, c = y.triple
    return _elem(fam, (
        ts * (j * phi(a) - phi(i) * b + i * c - k * a),
        ts * (i * phi(b) - phi(j) * a + k * b + j * (i * b - a * b - c)),
        i * b - j * a + ts * (
            phi(a) * (phi(j) + j * b) - phi(i) * (phi(b) + j * b) + i * j * c - k * a * b
        ),
    ))
