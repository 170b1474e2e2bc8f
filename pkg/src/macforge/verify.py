"""Arithmetic invariant suite behind `verify-formulas`.

Each check is a named row in a Report: headline fixtures, the defining
relations, sampled structural invariants (associativity, inverses, power
coherence, quotient compatibility, representative independence), the
central series census, and the coset-table cross-check.
"""

from __future__ import annotations

import numpy as np

from .autenum import ElementIndexer, _vec_dtype
from .corollaries import (
    h_big_commutator,
    h_commutator,
    h_power,
    h_product,
    k_commutator,
    k_power,
    k_product,
)
from .crosscheck import cross_check, _inv_triples
from .groups import (
    Element,
    GroupFamily,
    central_level,
    central_level_generic,
    commutator_generic,
    commutator_mod_z1,
    commutator_special,
    conj,
    element_order,
    invert,
    mul,
    power,
    product_exponents,
    project,
)
from .morphisms import apply as apply_map, catalog
from .report import Report
from .autenum import z_orders


def _random_elements(fam: GroupFamily, n: int, rng) -> list[Element]:
    ri, rj, rk = fam.ranges
    out = []
    for _ in range(n):
        out.append(Element(fam, int(rng.integers(ri)), int(rng.integers(rj)), int(rng.integers(rk))))
    return out


def _sample_triples(fam: GroupFamily, n: int, rng):
    dt = _vec_dtype(fam)
    ri, rj, rk = fam.ranges
    return (
        rng.integers(0, ri, size=n).astype(dt),
        rng.integers(0, rj, size=n).astype(dt),
        rng.integers(0, rk, size=n).astype(dt),
    )


def formula_report(fam: GroupFamily, mode: str = "sampled", samples: int = 100_000,
                   seed: int = 42, max_cosets: int | None = None) -> Report:
    """Run the arithmetic invariant suite plus the oracle cross-check."""
    p = fam.params
    m, ell, s, u = p.m, p.ell, p.s, p.u
    rep = Report(params={
        "family": fam.tag, "m": m, "ell": ell,
        "mode": mode, "samples": samples, "seed": seed,
    })
    rng = np.random.default_rng(seed)
    idxr = ElementIndexer(fam)

    A, B, C = fam.A(), fam.B(), fam.C()
    ident = fam.identity()

    # headline fixtures
    rep.add("fixture_comm_A_B_is_C", C.triple, commutator_generic(A, B).triple)
    if fam.tag == "H" and (m, ell) == (2, 1):
        rep.add("fixture_AB_pow5", (5, 5, 2), power(mul(A, B), 5).triple)
        rep.add("fixture_comm_AB_B", (0, 4, 1), commutator_generic(mul(A, B), B).triple)

    # normal-form census and generator orders
    rep.add("canonical_element_count", fam.order, int(np.prod(fam.ranges)))
    rep.add("order_A", fam.ranges[0], element_order(A))
    rep.add("order_B", fam.ranges[0], element_order(B))
    expected_oC = {"J": 4 * u, "H": 2 * u, "K": s}[fam.tag]
    rep.add("order_C", expected_oC, element_order(C))

    # defining relations and folding facts
    rep.add("relation_A_conj_C", power(A, p.alpha).triple, conj(A, C).triple)
    rep.add("relation_B_conj_Cinv", power(B, p.alpha).triple, conj(B, invert(C)).triple)
    if fam.tag == "J":
        rep.add("folding_A2u_B2u", ident.triple,
                mul(power(A, 2 * u), power(B, 2 * u)).triple)
        rep.add("folding_A2us_is_C2u", power(A, 2 * u * s).triple,
                power(C, 2 * u).triple)

    # exponent: x^exponent = 1 on a sample, and the exponent is attained
    elems = _random_elements(fam, min(64, samples), rng)
    rep.add("exponent_annihilates", len(elems),
            sum(power(x, fam.exponent).is_identity() for x in elems))
    rep.add("exponent_attained", True,
            any(not power(x, fam.exponent // 2).is_identity() for x in fam.elements())
            if fam.order <= 4096 else
            any(not power(x, fam.exponent // 2).is_identity()
                for x in _random_elements(fam, 4096, rng)))

    # bulk identities, vectorized
    n_pairs = fam.order**2 if mode == "exhaustive" else samples
    if mode == "exhaustive":
        n = fam.order
        xs = np.repeat(np.arange(n, dtype=np.int64), n)
        ys = np.tile(np.arange(n, dtype=np.int64), n)
        tx, ty = idxr.triples_of(xs), idxr.triples_of(ys)
        tz = idxr.triples_of(np.flip(xs))
    else:
        tx = _sample_triples(fam, n_pairs, rng)
        ty = _sample_triples(fam, n_pairs, rng)
        tz = _sample_triples(fam, n_pairs, rng)

    lhs = idxr.mulv(idxr.mulv(tx, ty), tz)
    rhs = idxr.mulv(tx, idxr.mulv(ty, tz))
    rep.add("associativity", n_pairs,
            int((np.asarray(lhs[0] == rhs[0]) & np.asarray(lhs[1] == rhs[1])
                 & np.asarray(lhs[2] == rhs[2])).sum()))

    inv = _inv_triples(fam, tx)
    pr = idxr.mulv(tx, inv)
    rep.add("inverses", n_pairs,
            int((np.asarray(pr[0] == 0) & np.asarray(pr[1] == 0) & np.asarray(pr[2] == 0)).sum()))

    # identity element behavior
    idp = idxr.mulv((0, 0, 0), tx)
    rep.add("identity_neutral", n_pairs,
            int((np.asarray(idp[0] == tx[0]) & np.asarray(idp[1] == tx[1])
                 & np.asarray(idp[2] == tx[2])).sum()))

    # power coherence: closed formula vs iterated multiplication
    ok = total = 0
    for x in _random_elements(fam, 40, rng):
        acc = ident
        for nn in range(0, 41):
            ok += power(x, nn) == acc
            acc = mul(acc, x)
            total += 1
        for nn in range(1, 41):
            ok += power(x, -nn) == invert(power(x, nn))
            total += 1
    rep.add("power_coherence", total, ok)

    # special vs generic commutators
    bound = 2 * fam.ranges[0]
    if mode == "exhaustive" or fam.order <= 2048:
        ns = range(-bound, bound + 1, max(1, bound // 16))
        ts = ns
    else:
        ns = [int(v) for v in rng.integers(-bound, bound + 1, size=24)]
        ts = [int(v) for v in rng.integers(-bound, bound + 1, size=24)]
    ok = total = 0
    for nn in ns:
        for tt in ts:
            ok += commutator_special("CA", nn, tt, fam) == commutator_generic(power(C, nn), power(A, tt))
            ok += commutator_special("CB", nn, tt, fam) == commutator_generic(power(C, nn), power(B, tt))
            ok += commutator_special("AB", nn, tt, fam) == commutator_generic(power(A, nn), power(B, tt))
            total += 3
    rep.add("special_vs_generic_commutators", total, ok)

    # big commutator mod the center
    if fam.tag in ("J", "H"):
        ok = total = 0
        for x, y in zip(_random_elements(fam, 200, rng), _random_elements(fam, 200, rng)):
            g = commutator_generic(x, y)
            r = commutator_mod_z1(x, y)
            if fam.tag == "J":
                ok += (g.i % (2 * u), g.j, g.k) == r.triple
            else:
                ok += g == r
            total += 1
        rep.add("commutator_mod_z1", total, ok)

    # representative independence: raw exponent shifts by element orders
    ok = total = 0
    oA, oB, oC = fam.ranges[0], fam.ranges[0], expected_oC
    for x, y in zip(_random_elements(fam, 100, rng), _random_elements(fam, 100, rng)):
        base = mul(x, y)
        for di, dj, dk in ((oA, 0, 0), (0, oB, 0), (0, 0, oC), (-oA, oB, oC)):
            e = product_exponents(s, u, ell, x.i + di, x.j + dj, x.k + dk, y.i, y.j, y.k)
            ok += Element(fam, *e) == base
            total += 1
    rep.add("representative_independence", total, ok)

    # quotient compatibility
    if fam.tag in ("J", "H"):
        ok = total = 0
        for x, y in zip(_random_elements(fam, min(samples, 2000), rng),
                        _random_elements(fam, min(samples, 2000), rng)):
            ok += project(mul(x, y)) == mul(project(x), project(y))
            total += 1
        rep.add("quotient_homomorphism", total, ok)

    # corollary transcriptions agree with the generic route
    if fam.tag in ("H", "K"):
        prod2 = h_product if fam.tag == "H" else k_product
        pow2 = h_power if fam.tag == "H" else k_power
        comm2 = h_commutator if fam.tag == "H" else k_commutator
        ok = total = 0
        for x, y in zip(_random_elements(fam, 300, rng), _random_elements(fam, 300, rng)):
            ok += prod2(fam, x, y) == mul(x, y)
            nn = int(rng.integers(0, fam.exponent))
            ok += pow2(fam, x, nn) == power(x, nn)
            total += 2
        for nn in range(-8, 9):
            for tt in range(-8, 9):
                for case in ("CA", "CB", "AB"):
                    base = {"CA": (C, A), "CB": (C, B), "AB": (A, B)}[case]
                    ok += comm2(fam, case, nn, tt) == commutator_generic(
                        power(base[0], nn), power(base[1], tt))
                    total += 1
        if fam.tag == "H":
            for x, y in zip(_random_elements(fam, 100, rng), _random_elements(fam, 100, rng)):
                ok += h_big_commutator(fam, x, y) == commutator_generic(x, y)
                total += 1
            for x in _random_elements(fam, 100, rng):
                ok += power(x, 2 * u) == Element(fam, 0, 0, u * x.i * x.j)
                total += 1
        rep.add("corollary_transcriptions", total, ok)

    # central series census
    zo = z_orders(fam)
    counts = [0] * (fam.nilpotency_class + 1)
    if fam.order <= 2**15:
        for x in fam.elements():
            counts[central_level(x)] += 1
    else:
        dt = _vec_dtype(fam)
        allt = idxr.triples_of(np.arange(fam.order).astype(dt))
        lv = np.full(fam.order, fam.nilpotency_class, dtype=np.int64)
        mods = fam.z_mods()
        for lvl in range(fam.nilpotency_class - 1, 0, -1):
            d1, d2, d3 = mods[lvl - 1]
            mask = (np.asarray(allt[0] % d1 == 0) & np.asarray(allt[1] % d2 == 0)
                    & np.asarray(allt[2] % d3 == 0))
            lv[mask] = lvl
        lv[0] = 0
        counts = np.bincount(lv, minlength=fam.nilpotency_class + 1).tolist()
    cumulative = list(np.cumsum(counts))
    rep.add("central_series_orders", zo, [int(c) for c in cumulative[1:]])

    if m > 1 and fam.order <= 2048:
        agree = all(central_level(x) == central_level_generic(x) for x in fam.elements())
        rep.add("central_level_methods_agree", True, agree)

    # the A<->B swap is an automorphism at the arithmetic level
    swap_name = {"J": "theta", "H": "nu", "K": "mu"}[fam.tag]
    sw = catalog(fam, swap_name)
    ok = total = 0
    for x, y in zip(_random_elements(fam, 500, rng), _random_elements(fam, 500, rng)):
        ok += apply_map(sw, mul(x, y)) == mul(apply_map(sw, x), apply_map(sw, y))
        total += 1
    rep.add("generator_swap_multiplicative", total, ok)

    # oracle cross-check
    oracle_mode = "exhaustive" if fam.order <= 2048 else "sampled"
    sub = cross_check(fam, mode=oracle_mode, samples=samples, seed=seed,
                      max_cosets=max_cosets)
    rep.extend(sub)
    return rep
