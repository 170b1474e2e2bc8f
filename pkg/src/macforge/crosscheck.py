"""Cross-validation of the closed-formula arithmetic against coset tables,
and the odd-prime commutator identities against their presentations.

The coset table knows nothing about the formulas; agreement of both routes
on products, inverses, powers, commutators and element orders is the
ground-truth certificate for the arithmetic.
"""

from __future__ import annotations

import time

import numpy as np

from .autenum import ElementIndexer
from .coset import CosetTable, builtin_presentation, family_table, todd_coxeter
from .groups import Element, GroupFamily, element_order, inverse_exponents, power
from .numfn import phi, varphi
from .params import OddPrimeParams
from .report import Report


def _coset_of_all(table: CosetTable, fam: GroupFamily) -> np.ndarray:
    """cosets[index] = 1 · A^i B^j C^k for every canonical element."""
    ri, rj, rk = fam.ranges
    rows = np.zeros((ri, rj, rk), dtype=np.int64)
    colA, colB, colC = table.columns[0], table.columns[2], table.columns[4]
    cur = 1
    for i in range(ri):
        rows[i, 0, 0] = cur
        cur = int(colA[cur])
    for j in range(1, rj):
        rows[:, j, 0] = colB[rows[:, j - 1, 0]]
    for k in range(1, rk):
        rows[:, :, k] = colC[rows[:, :, k - 1]]
    return rows.reshape(-1)


def _word_action(table: CosetTable, start: np.ndarray, i, j, k) -> np.ndarray:
    """start · A^i B^j C^k vectorized (exponents may be arrays)."""
    out = table.apply_power(0, i, start)
    out = table.apply_power(1, j, out)
    return table.apply_power(2, k, out)


def _inverse_action(table: CosetTable, start: np.ndarray, i, j, k) -> np.ndarray:
    """start · (A^i B^j C^k)^-1 vectorized."""
    out = table.apply_power(2, -np.asarray(k), start)
    out = table.apply_power(1, -np.asarray(j), out)
    return table.apply_power(0, -np.asarray(i), out)


def _inv_triples(fam: GroupFamily, t):
    p = fam.params
    if p.m > 2 or abs(p.ell) > 50:
        # xi3 composes xi2 on arguments of size ~ s*phi(o(A))*o(C); the cubic
        # varphi overflows int64 from m = 3 on, so use exact Python ints
        t = tuple(np.asarray(c).astype(object) for c in t)
    return fam.canonicalize(*inverse_exponents(p.s, p.u, p.ell, *t))


def _table_element_order(table: CosetTable, x: Element) -> int:
    word = [(0, x.i), (1, x.j), (2, x.k)]
    cur = table.resolve(word, 1)
    n = 1
    while cur != 1:
        cur = table.resolve(word, cur)
        n += 1
    return n


def cross_check(
    fam: GroupFamily,
    mode: str = "auto",
    samples: int = 100_000,
    seed: int = 42,
    max_cosets: int | None = None,
    table: CosetTable | None = None,
) -> Report:
    """Certify the formula arithmetic against the coset-table oracle.

    mode "exhaustive" sweeps all pairs; "sampled" draws seeded random
    inputs; "auto" picks exhaustive for groups of at most 2048 elements.
    """
    if mode == "auto":
        mode = "exhaustive" if fam.order <= 2048 else "sampled"
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"mode must be exhaustive or sampled, got {mode!r}")

    rep = Report(params={
        "family": fam.tag, "m": fam.params.m, "ell": fam.params.ell,
        "mode": mode, "samples": samples if mode == "sampled" else fam.order,
        "seed": seed if mode == "sampled" else None,
    })
    t0 = time.perf_counter()
    if table is None:
        table = family_table(fam, max_cosets)
    rep.add("coset_count", fam.order, table.n,
            elapsed_ms=(time.perf_counter() - t0) * 1000)
    if table.n != fam.order:
        return rep  # not a faithful model; comparing operations is pointless

    cos = _coset_of_all(table, fam)
    rep.add("normal_form_bijection", fam.order, int(np.unique(cos).size))

    idxr = ElementIndexer(fam)
    n = fam.order
    if mode == "exhaustive":
        xs = np.repeat(np.arange(n, dtype=np.int64), n)
        ys = np.tile(np.arange(n, dtype=np.int64), n)
    else:
        rng = np.random.default_rng(seed)
        xs = rng.integers(0, n, size=samples, dtype=np.int64)
        ys = rng.integers(0, n, size=samples, dtype=np.int64)

    tx = idxr.triples_of(xs)
    ty = idxr.triples_of(ys)

    prod_idx = np.asarray(idxr.encode(*idxr.mulv(tx, ty))).astype(np.int64)
    lhs = _word_action(table, cos[xs], *ty)
    rep.add("mul_agreement", int(len(xs)), int((lhs == cos[prod_idx]).sum()))

    # commutators x^-1 y^-1 x y, both routes
    c1 = _inverse_action(table, np.ones(len(xs), dtype=np.int64), *tx)
    c1 = _inverse_action(table, c1, *ty)
    c1 = _word_action(table, c1, *tx)
    c1 = _word_action(table, c1, *ty)
    comm_idx = np.asarray(idxr.encode(*idxr.mulv(
        idxr.mulv(_inv_triples(fam, tx), _inv_triples(fam, ty)),
        idxr.mulv(tx, ty),
    ))).astype(np.int64)
    rep.add("commutator_agreement", int(len(xs)), int((c1 == cos[comm_idx]).sum()))

    uniq = np.unique(xs)
    tu = idxr.triples_of(uniq)
    inv_idx = np.asarray(idxr.encode(*_inv_triples(fam, tu))).astype(np.int64)
    lhs = _inverse_action(table, np.ones(len(uniq), dtype=np.int64), *tu)
    rep.add("inverse_agreement", int(len(uniq)), int((lhs == cos[inv_idx]).sum()))

    # powers: seeded subset, exponents spanning negatives and the exponent
    rng = np.random.default_rng(seed + 1)
    pw_elems = rng.integers(0, n, size=200, dtype=np.int64)
    exps = list(range(-8, 9)) + [fam.exponent - 1, fam.exponent]
    ok = total = 0
    for xi in pw_elems.tolist():
        x = Element(fam, *fam.decode_index(xi))
        fwd = [(0, x.i), (1, x.j), (2, x.k)]
        bwd = [(2, -x.k), (1, -x.j), (0, -x.i)]
        for e in exps:
            cur = 1
            for _ in range(abs(e)):
                cur = table.resolve(fwd if e > 0 else bwd, cur)
            ok += cur == cos[power(x, e).index]
            total += 1
    rep.add("power_agreement", total, ok)

    if mode == "exhaustive":
        order_elems = range(n)
    else:
        order_elems = rng.integers(0, n, size=1024, dtype=np.int64).tolist()
    ok = total = 0
    for xi in order_elems:
        x = Element(fam, *fam.decode_index(int(xi)))
        ok += element_order(x) == _table_element_order(table, x)
        total += 1
    rep.add("element_order_agreement", total, ok)

    if fam.tag == "J" and fam.params.m == 1:
        sq = idxr.mulv(idxr.triples_of(np.arange(n)), idxr.triples_of(np.arange(n)))
        inv_count = int((
            (sq[0] == 0) & (sq[1] == 0) & (sq[2] == 0) & (np.arange(n) != 0)
        ).sum())
        rep.add("unique_involution", 1, inv_count)
    return rep


# ---------------------------------------------------------------------------
# Odd-prime commutator identities.
# ---------------------------------------------------------------------------

def oddp_table(params: OddPrimeParams, max_cosets: int | None = None) -> CosetTable:
    return todd_coxeter(
        builtin_presentation(f"Jp[{params.p},{params.m},{params.ell}]"), max_cosets
    )


def oddp_xi(params: OddPrimeParams, n: int, t: int) -> int:
    """Central correction exponent of [A^n, B^t] for odd p (exact integer)."""
    ell = params.ell
    pm = params.p**params.m
    brace = (
        2 * varphi(n + 1) * t
        + (2 * n - 7) * phi(n) * phi(t)
        - 2 * n * phi(t)
        - (3 * n + 1) * n * varphi(t)
        - 2 * params.delta_p3 * 3 ** (params.m - 1) * ell * phi(n) * phi(t)
    )
    val = params.chi * pm * pm * ell * ell * brace
    if val.denominator != 1:
        raise ArithmeticError(f"xi({n},{t}) is not integral: {val}")
    return int(val)


def oddp_identity_words(params: OddPrimeParams, case: str, n: int, t: int):
    """(lhs word, rhs word) for the requested commutator identity."""
    ell = params.ell
    pm = params.p**params.m
    p2m = pm * pm
    if case == "CA":
        lhs = [(2, -n), (0, -t), (2, n), (0, t)]
        rhs = [(0, -pm * ell * n * t - p2m * ell * ell * phi(n) * t)]
    elif case == "CB":
        lhs = [(2, -n), (1, -t), (2, n), (1, t)]
        rhs = [(1, pm * ell * n * t - p2m * ell * ell * phi(n + 1) * t)]
    elif case == "AB":
        lhs = [(0, -n), (1, -t), (0, n), (1, t)]
        rhs = [
            (0, -pm * ell * phi(n) * t),
            (1, pm * ell * n * phi(t)),
            (2, n * t - pm * ell * phi(n) * phi(t)),
            (0, oddp_xi(params, n, t)),
        ]
    else:
        raise ValueError(f"case must be CA, CB or AB, got {case!r}")
    return lhs, rhs


def oddp_commutator(
    params: OddPrimeParams, case: str, n: int, t: int,
    table: CosetTable | None = None, max_cosets: int | None = None,
):
    """Evaluate one identity; returns (rhs exponent word, oracle verdict)."""
    if params.p == 2:
        raise ValueError("odd-prime checker needs p odd")
    if table is None:
        table = oddp_table(params, max_cosets)
    lhs, rhs = oddp_identity_words(params, case, n, t)
    return rhs, table.resolve(lhs) == table.resolve(rhs)


def oddp_report(params: OddPrimeParams, rng: int = 20,
                max_cosets: int | None = None) -> Report:
    """All three identities over |n|, |t| <= rng, against the oracle."""
    rep = Report(params={"p": params.p, "m": params.m, "ell": params.ell, "range": rng})
    t0 = time.perf_counter()
    table = oddp_table(params, max_cosets)
    # the coset count is recorded but not judged: no order claim is made
    rep.add("coset_count", None, table.n, elapsed_ms=(time.perf_counter() - t0) * 1000)
    for case in ("CA", "CB", "AB"):
        ok = total = 0
        for n in range(-rng, rng + 1):
            for t in range(-rng, rng + 1):
                _, match = oddp_commutator(params, case, n, t, table)
                ok += match
                total += 1
        rep.add(f"identity_{case}_matches", total, ok)
    return rep
