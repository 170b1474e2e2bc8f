"""Integer helper functions feeding every exponent formula.

All functions work elementwise on numpy arrays as well as on plain ints;
division-bearing ones are exact rationals over the integers and assert
integrality instead of rounding.
"""

from __future__ import annotations

import numpy as np

from .params import GroupParams


def _exact_div(num, den: int):
    """num / den, asserting the division is exact (ints or arrays)."""
    if isinstance(num, np.ndarray):
        q = num // den
        if (num - q * den).any():
            raise ArithmeticError(f"non-integral division by {den}")
        return q
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"non-integral division: {num} / {den}")
    return q


def phi(n):
    """(n-1)n/2, always an integer."""
    return _exact_div((n - 1) * n, 2)


def varphi(n):
    """n(n-1)(n-2)/6, always an integer."""
    return _exact_div(n * (n - 1) * (n - 2), 6)


def sigma1(k, t):
    return _exact_div(k * phi(t) * (k * phi(t) - 1), 2)


def sigma2(k, t):
    return _exact_div(k * phi(t) * (k * k * phi(t) - 1), 6)


def sigma3(t):
    inner = _exact_div((t - 1) * t * (6 * (t - 1) ** 3 + 9 * (t - 1) ** 2 + t - 2), 30)
    return _exact_div(inner - 3 * phi(t) ** 2 + 4 * varphi(t) + 2 * phi(t), 6)


def sigma(kind: int, k, t):
    """Dispatch sigma_1/2/3; sigma_3 ignores k."""
    if kind == 1:
        return sigma1(k, t)
    if kind == 2:
        return sigma2(k, t)
    if kind == 3:
        return sigma3(t)
    raise ValueError(f"sigma kind must be 1, 2 or 3, got {kind}")


def xi1(n, t, s, u, ell):
    return (2 * u * ell * ell) * (
        2 * varphi(n + 1) * t
        + (2 * n - 7) * phi(n) * phi(t)
        - 2 * n * phi(t)
        - (3 * n + 1) * n * varphi(t)
    )


def xi2(j, k, a, b, s, u, ell):
    return (2 * u * ell * ell) * (
        phi(j) * phi(a) * (-2 * j + 2 * a - 2 * b + 5)
        - 2 * phi(j) * a * (j + k + b - 1)
        - j * phi(a) * (4 * k - 2 * a + 1)
        + 2 * phi(k) * (a - b)
        - k * a * (j - 2)
        - 2 * j * (a * b + varphi(a + 1))
        + (3 * a + 1) * a * varphi(j)
    )


def xi3(a, b, c, s, u, ell):
    ts = 2 * s * ell
    return (
        4 * u * ell * ell * (a * phi(b) - phi(a) * b) * c
        + xi2(-b, 0, -a, 0, s, u, ell)
        + xi2(0, -c, -a - ts * phi(a + 1) * b, -b + ts * a * phi(b + 1), s, u, ell)
    )


def xi4(a, b, c, n, s, u, ell):
    s1n = sigma1(1, n)
    s21n = sigma2(1, n)
    vp_n = varphi(n)
    vp_n1 = varphi(n + 1)
    p_n = phi(n)
    p_b = phi(b)
    return (2 * u * ell * ell) * (
        a * (varphi(b) + 2 * p_b - 2 * phi(c)) * p_n
        + a * a * (3 * varphi(b) - 2 * b * p_b) * (2 * vp_n + p_n)
        + 2 * a * p_b * c * vp_n
        - 2 * a * a * b * p_b * (s1n - vp_n)
        + (2 * b * c + 7 * p_b) * (a * a * vp_n + phi(a) * p_n)
        - 2 * p_b * (a + b) * (sigma1(a, n) - a * vp_n)
        - 2 * b * sigma2(a, n)
        + (2 * p_b - 2 * c - b) * (a * a * b * s21n + (phi(a) * b - a * c) * vp_n1)
        + 2 * b * (a * (phi(a) * b - a * c) + b * b * (phi(a) - a * a)) * (s1n + vp_n1)
        + 2 * a * a * b * b * (a - b) * (sigma3(n) + s1n - vp_n)
        - 2 * c * ((c - a * b) * b * vp_n1 - 2 * a * b * b * s21n)
        + 2 * b * (sigma1(a * b, n) + (phi(c + 1) - a * b * c) * p_n - a * b * (2 * c + 1) * vp_n)
    )


def xi(kind: int, args: tuple, params: GroupParams):
    """Dispatch xi_1..xi_4 with arity checking (2/4/3/4 arguments)."""
    s, u, ell = params.s, params.u, params.ell
    arity = {1: 2, 2: 4, 3: 3, 4: 4}
    if kind not in arity:
        raise ValueError(f"xi kind must be 1..4, got {kind}")
    if len(args) != arity[kind]:
        raise ValueError(f"xi_{kind} takes {arity[kind]} arguments, got {len(args)}")
    if kind == 1:
        return xi1(*args, s, u, ell)
    if kind == 2:
        return xi2(*args, s, u, ell)
    if kind == 3:
        return xi3(*args, s, u, ell)
    return xi4(*args, s, u, ell)
