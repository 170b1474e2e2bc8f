"""Todd-Coxeter coset enumeration over the trivial subgroup.

An HLT-style scan-and-fill loop with union-find coincidence handling
builds the table; completion is then certified by a full vectorized
relator scan (complete table + every relator closing at every coset +
transitivity from coset 1 force the coset count to equal the group
order).  Coset numbering is by first definition, so identical input
produces an identical table.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

import numpy as np

from .params import GroupParams, OddPrimeParams

DEFAULT_MAX_COSETS = 1 << 21
MAX_COSETS_ENV = "MACFORGE_MAX_COSETS"


def max_cosets_default() -> int:
    v = os.environ.get(MAX_COSETS_ENV)
    return int(v) if v else DEFAULT_MAX_COSETS


class CosetLimitExceeded(RuntimeError):
    def __init__(self, limit: int, live: int, defined: int):
        super().__init__(
            f"coset limit {limit} exceeded ({live} live cosets, {defined} ever defined); "
            f"raise {MAX_COSETS_ENV} or pass a larger max_cosets"
        )
        self.limit = limit
        self.live = live
        self.defined = defined


# ---------------------------------------------------------------------------
# Words and presentations.
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"([A-Za-z])\s*(?:\^\s*(-?\d+))?")


def parse_word(text: str, gens: str) -> list[tuple[int, int]]:
    """Parse letters with optional ^exponent; lowercase inverts.

    Returns [(generator index, exponent), ...] segments.
    """
    segs = []
    pos = 0
    for mt in _TOKEN_RE.finditer(text):
        if text[pos:mt.start()].strip():
            raise ValueError(f"cannot parse word {text!r} at {text[pos:mt.start()]!r}")
        pos = mt.end()
        letter, exp = mt.groups()
        e = int(exp) if exp is not None else 1
        up = letter.upper()
        if up not in gens:
            raise ValueError(f"unknown generator {letter!r} (alphabet {gens})")
        if letter.islower():
            e = -e
        if e:
            segs.append((gens.index(up), e))
    if text[pos:].strip():
        raise ValueError(f"cannot parse word {text!r} at {text[pos:]!r}")
    return segs


def word_str(segs, gens: str) -> str:
    return " ".join(f"{gens[g]}^{e}" for g, e in segs)


@dataclass(frozen=True)
class Presentation:
    """Generators plus relator words (as (gen, exponent) segment tuples)."""

    gens: str
    relators: tuple
    name: str = ""

    @classmethod
    def from_text(cls, text: str, gens: str | None = None, name: str = "") -> "Presentation":
        """Parse one relator per line ('#' comments); generators default to
        the letters actually used, in A, B, C order."""
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if gens is None:
            used = {ch.upper() for ln in lines for ch in ln if ch.isalpha()}
            gens = "".join(g for g in "ABCDEFG" if g in used)
            if not gens:
                raise ValueError("presentation text names no generators")
        rels = tuple(tuple(parse_word(ln, gens)) for ln in lines)
        return cls(gens, rels, name)

    def __str__(self):
        rels = "; ".join(word_str(r, self.gens) for r in self.relators)
        return f"<{', '.join(self.gens)} | {rels}>"


def _conj_power_relators(alpha: int, a_order: int, b_order: int, c_order: int = 0) -> list:
    """Shared relator scheme: C = [A,B], A^C = A^alpha, B^(C^-1) = B^alpha,
    generator power relations."""
    A, B, C = 0, 1, 2
    rels = [
        ((C, -1), (A, -1), (B, -1), (A, 1), (B, 1)),      # C^-1 [A,B]
        ((C, -1), (A, 1), (C, 1), (A, -alpha)),           # A^C A^-alpha
        ((C, 1), (B, 1), (C, -1), (B, -alpha)),           # B^(C^-1) B^-alpha
        ((A, a_order),),
        ((B, b_order),),
    ]
    if c_order:
        rels.append(((C, c_order),))
    return rels


def builtin_presentation(name: str) -> Presentation:
    """Named presentations: J[m,ell], H[m,ell], K[m,ell], Jp[p,m,ell], Q16."""
    text = name.replace(" ", "")
    if text == "Q16":
        # <u,v | u^4 = v^2, u^v = u^-1, u^8 = 1>
        rels = (
            ((0, 4), (1, -2)),
            ((1, -1), (0, 1), (1, 1), (0, 1)),
            ((0, 8),),
        )
        return Presentation("UV", rels, "Q16")
    mt = re.match(r"^(J|H|K)\[(-?\d+),(-?\d+)\]$", text)
    if mt:
        tag, m, ell = mt.group(1), int(mt.group(2)), int(mt.group(3))
        p = GroupParams(m, ell)
        if tag == "J":
            rels = _conj_power_relators(p.alpha, 2 ** (3 * m - 1), 2 ** (3 * m - 1))
        elif tag == "H":
            rels = _conj_power_relators(p.alpha, 2 ** (2 * m - 1), 2 ** (2 * m - 1))
        else:
            rels = _conj_power_relators(
                p.alpha, 2 ** (2 * m - 1), 2 ** (2 * m - 1), 2 ** (m - 1)
            )
        return Presentation("ABC", tuple(rels), text)
    mt = re.match(r"^Jp\[(-?\d+),(-?\d+),(-?\d+)\]$", text)
    if mt:
        pp = OddPrimeParams(int(mt.group(1)), int(mt.group(2)), int(mt.group(3)))
        if pp.p == 2:
            raise ValueError("Jp[...] is the odd-prime family; use J[m,ell] for p = 2")
        o = pp.p ** (3 * pp.m)
        rels = _conj_power_relators(pp.alpha, o, o)
        return Presentation("ABC", tuple(rels), text)
    raise ValueError(f"unknown presentation name {name!r}")


def family_presentation(fam) -> Presentation:
    return builtin_presentation(f"{fam.tag}[{fam.params.m},{fam.params.ell}]")


# ---------------------------------------------------------------------------
# Enumeration.
# ---------------------------------------------------------------------------

def _columns_of(segs, ngens) -> list[int]:
    """Flatten segments to a column-index word (2g forward, 2g+1 inverse)."""
    cols = []
    for g, e in segs:
        col = 2 * g if e > 0 else 2 * g + 1
        cols.extend([col] * abs(e))
    return cols


@dataclass
class CosetTable:
    """Completed, compacted coset table: a faithful regular representation."""

    presentation: Presentation
    columns: list  # per column (2g, 2g+1), numpy int64 arrays of size n+1
    n: int
    stats: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return all((c[1:] > 0).all() for c in self.columns)

    def resolve(self, word, start: int = 1) -> int:
        """Image of a coset (default 1) under a word of (gen, exp) segments;
        long powers step along cycles in O(cycle) via modular reduction."""
        if isinstance(word, str):
            word = parse_word(word, self.presentation.gens)
        cur = start
        for g, e in word:
            cyc_id, pos, cycles = self._cycles(g)
            cyc = cycles[cyc_id[cur]]
            cur = int(cyc[(pos[cur] + e) % len(cyc)])
        return cur

    def _cycles(self, gen: int):
        if not hasattr(self, "_cycle_cache"):
            self._cycle_cache = {}
        if gen not in self._cycle_cache:
            col = self.columns[2 * gen]
            n = self.n
            cyc_id = np.zeros(n + 1, dtype=np.int64)
            pos = np.zeros(n + 1, dtype=np.int64)
            cycles = []
            seen = np.zeros(n + 1, dtype=bool)
            for start in range(1, n + 1):
                if seen[start]:
                    continue
                cyc = []
                cur = start
                while not seen[cur]:
                    seen[cur] = True
                    cyc_id[cur] = len(cycles)
                    pos[cur] = len(cyc)
                    cyc.append(cur)
                    cur = int(col[cur])
                cycles.append(np.array(cyc, dtype=np.int64))
            self._cycle_cache[gen] = (cyc_id, pos, cycles)
        return self._cycle_cache[gen]

    def apply_power(self, gen: int, exp, cosets):
        """Vectorized coset^(gen^exp); exp may be a scalar or an array."""
        cyc_id, pos, cycles = self._cycles(gen)
        lens = np.array([len(c) for c in cycles], dtype=np.int64)
        starts = np.zeros(len(cycles) + 1, dtype=np.int64)
        np.cumsum(lens, out=starts[1:])
        flat = np.concatenate(cycles) if len(cycles) else np.array([], dtype=np.int64)
        cid = cyc_id[cosets]
        newpos = (pos[cosets] + exp) % lens[cid]
        return flat[starts[cid] + newpos]

    def element_order_by_table(self, word) -> int:
        if isinstance(word, str):
            word = parse_word(word, self.presentation.gens)
        cur = self.resolve(word, 1)
        n = 1
        while cur != 1:
            cur = self.resolve(word, cur)
            n += 1
        return n

    def verify_relators(self) -> bool:
        """Full relator scan: every relator must close at every coset."""
        idx = np.arange(1, self.n + 1)
        for rel in self.presentation.relators:
            x = idx
            for g, e in rel:
                x = self.apply_power(g, e, x)
            if not (x == idx).all():
                return False
        return True


def _rotation_tables(pres: Presentation):
    """Flattened rotation words of the non-power relators, grouped by
    leading column, plus the power-relator list."""
    ngens = len(pres.gens)
    ncols = 2 * ngens
    power_rels = []
    short_words = []
    for r in pres.relators:
        w = _columns_of(r, ngens)
        if len(r) == 1:
            power_rels.append((w[0], len(w)))
        else:
            short_words.append(w)

    rot_words = []
    bycol = [[] for _ in range(ncols)]
    seen = set()
    for w in short_words:
        n = len(w)
        for p in range(n):
            if w[p] == w[p - 1]:
                continue  # rotations inside a letter run are redundant
            rot = tuple(w[p:] + w[:p])
            if rot in seen:
                continue
            seen.add(rot)
            bycol[rot[0]].append(len(rot_words))
            rot_words.append(rot)

    rot_flat = np.array([c for w in rot_words for c in w] or [0], dtype=np.int64)
    rot_start = np.zeros(len(rot_words) + 1, dtype=np.int64)
    np.cumsum([len(w) for w in rot_words], out=rot_start[1:])
    bycol_flat = np.array([i for lst in bycol for i in lst] or [0], dtype=np.int64)
    bycol_start = np.zeros(ncols + 1, dtype=np.int64)
    np.cumsum([len(lst) for lst in bycol], out=bycol_start[1:])
    sweep = np.array([i for lst in bycol for i in lst] or [0], dtype=np.int64)
    if not rot_words:
        sweep = np.zeros(0, dtype=np.int64)
    pcols = np.array([c for c, _ in power_rels], dtype=np.int64)
    pexps = np.array([e for _, e in power_rels], dtype=np.int64)
    return rot_flat, rot_start, bycol_flat, bycol_start, sweep, pcols, pexps


def todd_coxeter(pres: Presentation, max_cosets: int | None = None) -> CosetTable:
    """Enumerate cosets of the trivial subgroup; returns the verified table.

    The engine fills relator rotations HLT-style and drains every new edge
    through all rotation scans and power-relator cycle walks (two-sided
    scans, single-gap deductions, union-find coincidences).  Completion is
    certified afterwards by a full relator scan, so the coset count equals
    the group order whenever the table closes.
    """
    from ._tcore import CAP_HIT, DEFINED, LIVE, enum_main

    if max_cosets is None:
        max_cosets = max_cosets_default()
    ngens = len(pres.gens)
    ncols = 2 * ngens
    (rot_flat, rot_start, bycol_flat, bycol_start,
     sweep, pcols, pexps) = _rotation_tables(pres)

    if max_cosets >= 2**31 - 2:
        raise ValueError("coset cap must fit 32-bit table indices")
    cap = max_cosets + 2
    cols = np.zeros((ncols, cap), dtype=np.int32)
    parent = np.zeros(cap, dtype=np.int32)
    parent[1] = 1
    marks_val = np.full(cap, -1, dtype=np.int64)
    marks_rel = np.full(cap, -1, dtype=np.int32)
    pending = np.zeros(cap, dtype=np.int32)
    ded_a = np.zeros(1 << 20, dtype=np.int32)
    ded_x = np.zeros(1 << 20, dtype=np.int32)
    ctr = np.array([1, 1, 0, 0, 0, 0], dtype=np.int64)

    status = enum_main(cols, parent, marks_val, marks_rel, pending, ded_a, ded_x,
                       rot_flat, rot_start, bycol_flat, bycol_start, sweep,
                       pcols, pexps, ctr, max_cosets)
    if status != 0 or ctr[CAP_HIT] != 0:
        raise CosetLimitExceeded(max_cosets, int(ctr[LIVE]), int(ctr[DEFINED]))

    defined = int(ctr[DEFINED])
    # resolve union-find pointers to roots, vectorized
    idx = np.arange(defined + 1, dtype=np.int64)
    root = parent[: defined + 1].astype(np.int64)
    while True:
        nxt = root[root]
        if (nxt == root).all():
            break
        root = nxt
    live_mask = root == idx
    live_mask[0] = False
    n = int(live_mask.sum())
    remap = np.zeros(defined + 1, dtype=np.int64)
    remap[live_mask] = np.arange(1, n + 1, dtype=np.int64)

    out_cols = []
    live_ids = idx[live_mask]
    for ci in range(ncols):
        col = cols[ci, : defined + 1].astype(np.int64)
        arr = np.zeros(n + 1, dtype=np.int64)
        arr[1:] = remap[root[col[live_ids]]]
        out_cols.append(arr)
    table = CosetTable(pres, out_cols, n, {"defined": defined, "live": n})
    if not table.complete or not table.verify_relators():
        raise AssertionError("coset table failed final verification")
    return table


def family_table(fam, max_cosets: int | None = None) -> CosetTable:
    """Coset table of a builtin family, with an enumeration budget sized
    from the target order (the intermediate table overshoots the final
    coset count by a large factor on the J presentations)."""
    if max_cosets is None and os.environ.get(MAX_COSETS_ENV) is None:
        max_cosets = max(max_cosets_default(), 48 * fam.order)
    return todd_coxeter(family_presentation(fam), max_cosets)
