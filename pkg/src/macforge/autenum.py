"""Closure of automorphism generating sets, centrality filtrations, and
verification of the automorphism-group order and factor claims.

Automorphisms are keyed by their canonical image pair (imgA, imgB), packed
into a single integer over the element index space.  Closure precomputes,
per generator g, the permutation x -> (x)g of all group elements, after
which the breadth-first frontier loop is pure integer work.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import (
    Element,
    GroupFamily,
    invert,
    mul,
    power,
    product_exponents,
)
from .morphisms import GenMap, catalog, identity_map, inner, is_automorphism
from .report import Report

DEFAULT_CLOSURE_LIMIT = 1 << 25


class ClosureLimitExceeded(RuntimeError):
    def __init__(self, limit, found, frontier):
        super().__init__(
            f"closure exceeded member limit {limit} ({found} found, {frontier} unexplored)"
        )
        self.limit = limit
        self.found = found
        self.frontier = frontier


def _vec_dtype(fam: GroupFamily):
    # int64 headroom: exponent-formula intermediates stay < 2^62 well past m=4
    if fam.params.m <= 4 and abs(fam.params.ell) <= 50:
        return np.int64
    return object


class ElementIndexer:
    """Vectorized element index space of one family."""

    def __init__(self, fam: GroupFamily):
        self.family = fam
        ri, rj, rk = fam.ranges
        self.ranges = (ri, rj, rk)
        self.n = ri * rj * rk
        dtype = _vec_dtype(fam)
        idx = np.arange(self.n, dtype=dtype)
        idx, self.K = np.divmod(idx, rk)
        self.I, self.J = np.divmod(idx, rj)

    def encode(self, i, j, k):
        ri, rj, rk = self.ranges
        return (i * rj + j) * rk + k

    def mulv(self, t1, t2):
        """Elementwise product of triple-arrays (or broadcast constants)."""
        p = self.family.params
        e = product_exponents(p.s, p.u, p.ell, *t1, *t2)
        return self.family.canonicalize(*e)

    def element_powers(self, x: Element, count: int) -> tuple:
        """Arrays (i, j, k) of x^0 .. x^(count-1), built by repeated mul."""
        dtype = _vec_dtype(self.family)
        out = np.zeros((3, count), dtype=dtype)
        cur = self.family.identity()
        for t in range(count):
            out[0][t], out[1][t], out[2][t] = cur.triple
            cur = mul(cur, x)
        return out[0], out[1], out[2]

    def genmap_perm(self, f: GenMap) -> list[int]:
        """The permutation x -> (x)f of the element index space."""
        ri, rj, rk = self.ranges
        pa = self.element_powers(f.imgA, ri)
        pb = self.element_powers(f.imgB, rj)
        pc = self.element_powers(f.imgC, rk)
        t1 = self.mulv(
            (pa[0][self.I], pa[1][self.I], pa[2][self.I]),
            (pb[0][self.J], pb[1][self.J], pb[2][self.J]),
        )
        t2 = self.mulv(t1, (pc[0][self.K], pc[1][self.K], pc[2][self.K]))
        return self.encode(*t2).astype(np.int64).tolist()

    def triples_of(self, idx_array: np.ndarray) -> tuple:
        ri, rj, rk = self.ranges
        rest, k = np.divmod(idx_array, rk)
        i, j = np.divmod(rest, rj)
        return i, j, k


@dataclass
class AutSet:
    """A compose/inverse-closed set of automorphisms with its generators."""

    family: GroupFamily
    generators: list
    keys: list  # packed (imgA, imgB) keys in first-discovery order
    indexer: ElementIndexer = field(repr=False)
    shift: int = field(repr=False, default=0)

    @property
    def order(self) -> int:
        return len(self.keys)

    def key_of(self, f: GenMap) -> int:
        return (f.imgA.index << self.shift) | f.imgB.index

    def genmap_of(self, key: int) -> GenMap:
        fam = self.family
        xa = key >> self.shift
        xb = key & ((1 << self.shift) - 1)
        return GenMap(fam, Element(fam, *fam.decode_index(xa)), Element(fam, *fam.decode_index(xb)))

    def __contains__(self, f: GenMap) -> bool:
        if not hasattr(self, "_keyset"):
            self._keyset = set(self.keys)
        return self.key_of(f) in self._keyset

    def genmaps(self):
        for k in self.keys:
            yield self.genmap_of(k)

    def sorted_keys(self) -> list:
        return sorted(self.keys)

    def image_arrays(self) -> tuple:
        """(imgA indices, imgB indices) of all members as numpy arrays."""
        ks = np.fromiter(self.keys, dtype=np.int64, count=len(self.keys))
        return ks >> self.shift, ks & ((1 << self.shift) - 1)


def closure(generators: list, limit: int = DEFAULT_CLOSURE_LIMIT, check: bool = True) -> AutSet:
    """Subgroup generated by the given automorphisms (deterministic BFS)."""
    if not generators:
        raise ValueError("need at least one generator")
    fam = generators[0].family
    for g in generators:
        if g.family != fam:
            raise ValueError("generators must share a family")
        if check and not is_automorphism(g):
            raise ValueError(f"closure input is not an automorphism: {g}")

    idxr = ElementIndexer(fam)
    shift = (idxr.n - 1).bit_length()
    perms = [idxr.genmap_perm(g) for g in generators]

    start = (fam.A().index << shift) | fam.B().index
    use_bitmap = 2 * shift <= 31
    if use_bitmap:
        seen_bits = bytearray(1 << (2 * shift - 3))
        byte, bit = divmod(start, 8)
        seen_bits[byte] |= 1 << bit
    else:
        seen = {start}
    mask = (1 << shift) - 1
    keys = [start]
    head = 0
    while head < len(keys):
        key = keys[head]
        head += 1
        xa = key >> shift
        xb = key & mask
        for perm in perms:
            nk = (perm[xa] << shift) | perm[xb]
            if use_bitmap:
                byte, bit = divmod(nk, 8)
                probe = seen_bits[byte]
                if probe & (1 << bit):
                    continue
                seen_bits[byte] = probe | (1 << bit)
            else:
                if nk in seen:
                    continue
                seen.add(nk)
            keys.append(nk)
            if len(keys) > limit:
                raise ClosureLimitExceeded(limit, len(keys), len(keys) - head)
    return AutSet(fam, list(generators), keys, idxr, shift)


# ---------------------------------------------------------------------------
# Standard generating sets.
# ---------------------------------------------------------------------------

def _aut_group_bruteforce(fam: GroupFamily) -> list[GenMap]:
    """All automorphisms by exhaustive image search (tiny groups only)."""
    els = list(fam.elements())
    if len(els) > 64:
        raise ValueError("brute-force automorphism search is for tiny groups")
    out = []
    for xa in els:
        for xb in els:
            f = GenMap(fam, xa, xb)
            if is_automorphism(f):
                out.append(f)
    return out


def standard_generators(fam: GroupFamily) -> list[GenMap]:
    """A generating set for the full automorphism group of the family."""
    p = fam.params
    m, s, u = p.m, p.s, p.u
    if fam.tag == "J":
        if m == 1:
            auts = _aut_group_bruteforce(fam)
            gens: list[GenMap] = []
            have = None
            for f in auts:
                if f == identity_map(fam):
                    continue
                if have is not None and f in have:
                    continue
                gens.append(f)
                have = closure(gens, check=False)
                if have.order == len(auts):
                    break
            return gens
        out = [
            catalog(fam, "omega", fam.identity(), power(fam.A(), 2 * u)),
            catalog(fam, "psi_J", fam.identity(), power(fam.C(), s)),
            catalog(fam, "delta1"),
            catalog(fam, "delta2"),
            catalog(fam, "inner", fam.A()),
            catalog(fam, "delta3"),
            catalog(fam, "theta"),
        ]
        if m > 2:
            out.append(catalog(fam, "sigma_J"))
        return out
    if fam.tag == "H":
        if m == 1:
            raise ValueError("standard generators need m >= 2 (except J at m = 1)")
        z2_gens = [power(fam.A(), 2 * s), power(fam.B(), 2 * s), power(fam.C(), s)]
        out = []
        for g in z2_gens:
            out.append(catalog(fam, "pi_H", g, fam.identity()))
            out.append(catalog(fam, "pi_H", fam.identity(), g))
        out += [
            catalog(fam, "inner", fam.A()),
            catalog(fam, "inner", fam.B()),
            catalog(fam, "gamma_H"),
        ]
        if m > 2:
            out.append(catalog(fam, "sigma_H"))
        out.append(catalog(fam, "nu"))
        return out
    # K
    if m == 1:
        raise ValueError("standard generators need m >= 2 (except J at m = 1)")
    z1_gens = [power(fam.A(), 2 * s), power(fam.B(), 2 * s)]
    z2_gens = [power(fam.A(), s), power(fam.B(), s), fam.C()]
    out = []
    for g in z1_gens:
        out.append(catalog(fam, "omega", g, fam.identity()))
        out.append(catalog(fam, "omega", fam.identity(), g))
    for g in z2_gens:
        out.append(catalog(fam, "gamma_K", g, fam.identity()))
        out.append(catalog(fam, "gamma_K", fam.identity(), g))
    out.append(catalog(fam, "f_n", 3))
    out.append(catalog(fam, "f_n", 2 * u - 1))
    out.append(catalog(fam, "mu"))
    out.append(catalog(fam, "phi_K"))
    return out


# ---------------------------------------------------------------------------
# Expected orders of the automorphism groups and their filtration levels.
# ---------------------------------------------------------------------------

def z_orders(fam: GroupFamily) -> list[int]:
    """|Z_1|, ..., |Z_class| (= |T|)."""
    m = fam.params.m
    if m == 1:
        return {"J": [2, 4, 16], "H": [2, 8], "K": [4]}[fam.tag]
    if fam.tag == "J":
        return [2**m, 2 ** (2 * m), 2 ** (4 * m - 2), 2 ** (5 * m - 1), 2 ** (7 * m - 3)]
    if fam.tag == "H":
        return [2**m, 2 ** (3 * m - 2), 2 ** (4 * m - 1), 2 ** (6 * m - 3)]
    return [2 ** (2 * m - 2), 2 ** (3 * m - 1), 2 ** (5 * m - 3)]


def expected_aut_order(fam: GroupFamily) -> int:
    m = fam.params.m
    if fam.tag == "J":
        if m == 1:
            return 32
        return 2**15 if m == 2 else 2 ** (8 * m)
    if fam.tag == "H":
        return 2**13 if m == 2 else 2 ** (8 * m - 2)
    return 3 * 2**11 if m == 2 else 2 ** (7 * m - 1)


def expected_level_orders(fam: GroupFamily) -> list:
    """Expected |Aut_i| for i = 1..class, None where no claim is made."""
    m = fam.params.m
    top = expected_aut_order(fam)
    if fam.tag == "J":
        if m == 1:
            return [None, None, top]
        return [2 ** (2 * m), 2 ** (4 * m), 2 ** (6 * m - 1), 2 ** (8 * m - 2), top]
    if fam.tag == "H":
        if m == 1:
            return [None, top]
        return [None, 2 ** (6 * m - 4), 2 ** (8 * m - 4), top]
    if m == 1:
        return [top]
    return [2 ** (4 * m - 4), 2 ** (6 * m - 2), top]


def expected_inn_product(fam: GroupFamily) -> tuple[int, int] | None:
    """(level i, |Inn Aut_i|) for the distinguished inner product level."""
    m = fam.params.m
    if m == 1:
        return None
    if fam.tag == "J":
        return (3, 2 ** (8 * m - 3))
    if fam.tag == "H":
        return (2, 2 ** (8 * m - 6))
    return (1, 2 ** (6 * m - 6))


def inn_order(fam: GroupFamily) -> int:
    return fam.order // z_orders(fam)[0]


# ---------------------------------------------------------------------------
# Filtration.
# ---------------------------------------------------------------------------

@dataclass
class FiltrationRow:
    level: int
    count: int
    expected: int | None
    passed: bool


@dataclass
class FiltrationReport:
    family: GroupFamily
    set_order: int
    rows: list
    inn_order: int
    inn_intersections: list  # (level, count, expected, passed)
    inn_products: list  # (level, count, expected, passed)

    @property
    def passed(self) -> bool:
        ok = all(r.passed for r in self.rows)
        ok = ok and all(p for *_, p in self.inn_intersections)
        return ok and all(p for *_, p in self.inn_products)


def _displacement_levels(autset: AutSet) -> np.ndarray:
    """Centrality level of every member, vectorized over displacements."""
    fam = autset.family
    idxr = autset.indexer
    xa, xb = autset.image_arrays()
    cls = fam.nilpotency_class
    if fam.params.m == 1:
        from .morphisms import centrality_level

        return np.array([centrality_level(g) for g in autset.genmaps()], dtype=np.int64)
    inv_a = invert(fam.A()).triple
    inv_b = invert(fam.B()).triple
    da = idxr.mulv(idxr.triples_of(xa.astype(_vec_dtype(fam))), inv_a)
    db = idxr.mulv(idxr.triples_of(xb.astype(_vec_dtype(fam))), inv_b)
    mods = fam.z_mods()
    levels = np.full(len(xa), cls, dtype=np.int64)
    for lvl in range(cls - 1, -1, -1):
        if lvl == 0:
            both = (
                (da[0] == 0) & (da[1] == 0) & (da[2] == 0)
                & (db[0] == 0) & (db[1] == 0) & (db[2] == 0)
            )
        else:
            d1, d2, d3 = mods[lvl - 1]
            both = (
                (da[0] % d1 == 0) & (da[1] % d2 == 0) & (da[2] % d3 == 0)
                & (db[0] % d1 == 0) & (db[1] % d2 == 0) & (db[2] % d3 == 0)
            )
        levels[both.astype(bool)] = lvl
    return levels


def _fingerprints(autset: AutSet, level: int) -> np.ndarray:
    """Packed action-on-T/Z_level labels; equal iff same coset mod Aut_level."""
    fam = autset.family
    idxr = autset.indexer
    d1, d2, d3 = fam.z_mods()[level - 1]
    xa, xb = autset.image_arrays()
    dt = _vec_dtype(fam)
    out = None
    for arr in (xa.astype(dt), xb.astype(dt)):
        i, j, k = idxr.triples_of(arr)
        lab = ((i % d1) * d2 + (j % d2)) * d3 + (k % d3)
        out = lab if out is None else out * (d1 * d2 * d3) + lab
    return out.astype(np.int64)


def inner_closure(fam: GroupFamily, limit: int = DEFAULT_CLOSURE_LIMIT) -> AutSet:
    return closure([inner(fam.A()), inner(fam.B())], limit=limit, check=False)


def filtration(autset: AutSet, inn: AutSet | None = None) -> FiltrationReport:
    """Per-level counts |Aut_i ∩ set| and |Inn·Aut_i ∩ set| with expectations."""
    fam = autset.family
    cls = fam.nilpotency_class
    levels = _displacement_levels(autset)
    counts = [int((levels <= lvl).sum()) for lvl in range(cls + 1)]

    expected = expected_level_orders(fam) if autset.order == expected_aut_order(fam) else [None] * cls
    rows = [FiltrationRow(0, counts[0], 1, counts[0] == 1)]
    for lvl in range(1, cls + 1):
        exp = expected[lvl - 1]
        rows.append(FiltrationRow(lvl, counts[lvl], exp, exp is None or counts[lvl] == exp))

    if inn is None:
        inn = inner_closure(fam)
    inn_levels = _displacement_levels(inn)
    zo = z_orders(fam)
    inn_inter = []
    for lvl in range(1, cls):
        cnt = int((inn_levels <= lvl).sum())
        exp = zo[lvl] // zo[0]
        inn_inter.append((lvl, cnt, exp, cnt == exp))

    inn_products = []
    if fam.params.m > 1:
        for lvl in range(1, cls):
            fp_inn = np.unique(_fingerprints(inn, lvl))
            fp_set = _fingerprints(autset, lvl)
            cnt = int(np.isin(fp_set, fp_inn).sum())
            known = expected_inn_product(fam)
            exp = known[1] if (known and known[0] == lvl and autset.order == expected_aut_order(fam)) else None
            inn_products.append((lvl, cnt, exp, exp is None or cnt == exp))
    return FiltrationReport(fam, autset.order, rows, inn.order, inn_inter, inn_products)


# ---------------------------------------------------------------------------
# Structure verification.
# ---------------------------------------------------------------------------

def _quotient_exponent_two(autset: AutSet, member_level: np.ndarray, lvl: int,
                           in_sub_fp: np.ndarray, fp_lvl: int, sample: int | None,
                           seed: int = 0) -> bool:
    """Check f^2 ∈ (subgroup with fingerprint set in_sub_fp) for all/sampled
    members f of level <= lvl; the subgroup must contain Aut_fp_lvl."""
    fam = autset.family
    keys = np.fromiter(autset.keys, dtype=np.int64, count=autset.order)
    keys = keys[member_level <= lvl]
    if sample is not None and len(keys) > sample:
        rng = np.random.default_rng(seed)
        keys = rng.choice(keys, size=sample, replace=False)
    from .morphisms import compose

    sq_keys = []
    for k in keys.tolist():
        f = autset.genmap_of(k)
        ff = compose(f, f)
        sq_keys.append(autset.key_of(ff))
    tmp = AutSet(fam, [], sq_keys, autset.indexer, autset.shift)
    fp = _fingerprints(tmp, fp_lvl)
    return bool(np.isin(fp, in_sub_fp).all())


def verify_structure(fam: GroupFamily, depth: str = "quick",
                     limit: int = DEFAULT_CLOSURE_LIMIT, seed: int = 0) -> Report:
    """Pass/fail table for every computable order/factor claim of the family."""
    m = fam.params.m
    if depth not in ("quick", "full"):
        raise ValueError("depth must be 'quick' or 'full'")
    if depth == "quick" and m != 2:
        raise ValueError("quick structure verification is defined at m = 2")
    if depth == "full" and m not in (2, 3):
        raise ValueError("full structure verification is defined at m in {2, 3}")

    rep = Report(params={"family": fam.tag, "m": m, "ell": fam.params.ell, "depth": depth})
    gens = standard_generators(fam)
    aut = closure(gens, limit=limit, check=False)
    rep.add("aut_order", expected_aut_order(fam), aut.order)

    inn = inner_closure(fam)
    rep.add("inn_order", inn_order(fam), inn.order)

    filt = filtration(aut, inn)
    cls = fam.nilpotency_class
    for row in filt.rows[1:]:
        rep.add(f"aut_{row.level}_order", row.expected, row.count,
                passed=row.passed)
    for lvl, cnt, exp, ok in filt.inn_intersections:
        rep.add(f"inn_cap_aut_{lvl}", exp, cnt, passed=ok)
    for lvl, cnt, exp, ok in filt.inn_products:
        if exp is not None:
            rep.add(f"inn_aut_{lvl}_order", exp, cnt, passed=ok)

    counts = {row.level: row.count for row in filt.rows}
    prod = {lvl: cnt for lvl, cnt, *_ in filt.inn_products}
    levels = _displacement_levels(aut)

    from .morphisms import compose, compose_all

    if fam.tag == "K":
        # Aut/Aut_2: GL_2(F_2) at m=2, ((Z/2^{m-1})^x x (Z/2)^2) x| Z/2 later
        rep.add("aut_over_aut2", 6 if m == 2 else 2 ** (m + 1),
                aut.order // counts[2])
        # Aut_2/(Inn Aut_1) is elementary abelian of order 16
        rep.add("aut2_over_inn_aut1", 16, counts[2] // prod[1])
        # f in Inn·Aut_1 iff f agrees with some inner map on K/Z_1
        inn_aut1_fp = np.unique(_fingerprints(inn, 1))
        sample = None if m == 2 else 4096
        rep.add("aut2_mod_inn_aut1_exponent_2", True,
                _quotient_exponent_two(aut, levels, 2, inn_aut1_fp, 1, sample, seed))
        mu = catalog(fam, "mu")
        f3 = catalog(fam, "f_n", 3)
        conj_rel = compose_all(mu, f3, mu, f3)
        rep.add("mu_inverts_f_n_mod_aut2", True,
                centrality_level_of(conj_rel) <= 2)
        phi_k = catalog(fam, "phi_K")
        rep.add("phi_squared_in_aut2", True, centrality_level_of(compose(phi_k, phi_k)) <= 2)
        if m == 2:
            mf = compose(mu, phi_k)
            rep.add("mu_phi_order_3_mod_aut2", True,
                    centrality_level_of(mf) > 2
                    and centrality_level_of(compose(mf, mf)) > 2
                    and centrality_level_of(compose_all(mf, mf, mf)) <= 2)
            comm = compose_all(mu, mf, aut_inverse_cached(mu), aut_inverse_cached(mf))
            rep.add("aut_over_aut2_nonabelian", True, centrality_level_of(comm) > 2)
        else:
            phi_mu = compose_all(mu, phi_k, mu)
            comm = compose_all(phi_k, phi_mu, aut_inverse_cached(phi_k), aut_inverse_cached(phi_mu))
            rep.add("phi_and_phi_mu_commute_mod_aut2", True, centrality_level_of(comm) <= 2)

    if fam.tag == "H":
        rep.add("aut3_over_inn_aut2_klein", 4, counts[3] // prod[2])
        inn_aut2_fp = np.unique(_fingerprints(inn, 2))
        sample = None if m == 2 else 4096
        rep.add("aut3_mod_inn_aut2_exponent_2", True,
                _quotient_exponent_two(aut, levels, 3, inn_aut2_fp, 2, sample, seed))
        rep.add("aut_over_aut3", 2 if m == 2 else 4, aut.order // counts[3])

    if fam.tag == "J" and m > 1:
        rep.add("aut4_over_inn_aut3", 2, counts[4] // prod[3])
        rep.add("aut_over_aut4", 2 if m == 2 else 4, aut.order // counts[4])
        theta = catalog(fam, "theta")
        rep.add("theta_outside_aut4", True, centrality_level_of(theta) > 4)

    return rep


def centrality_level_of(f: GenMap) -> int:
    from .morphisms import centrality_level

    return centrality_level(f)


_aut_inv_cache: dict = {}


def aut_inverse_cached(f: GenMap) -> GenMap:
    if f not in _aut_inv_cache:
        from .morphisms import aut_inverse

        _aut_inv_cache[f] = aut_inverse(f)
    return _aut_inv_cache[f]
